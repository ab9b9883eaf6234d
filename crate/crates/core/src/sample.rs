//! Seeded random generators for every object the verification suites draw.
//!
//! The generator is ChaCha8, a counter-based stream cipher RNG: a 64-bit
//! seed plus a 64-bit stream index select an independent substream, so
//! suites can split deterministically and reproducibly across platforms.

use std::marker::PhantomData;

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::field::{parse_field, FieldExpr, FieldSection};
use crate::group::InhomogeneousElement;
use crate::hilbert::{StateTerm, StateVector};
use crate::lorentz::{Axis, LorentzMatrix};
use crate::scalar::Real;
use crate::sl2c::SL2C;
use crate::surface::{transform_framed, Frame, FramedSurface, RectSurface, SurfacePiece};
use crate::vec4::FourVector;

/// Seeded source of random test objects.
pub struct Sampler<T> {
    rng: ChaCha8Rng,
    _marker: PhantomData<T>,
}

impl<T: Real> Sampler<T> {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            _marker: PhantomData,
        }
    }

    /// Independent substream `stream` of the same seed.
    pub fn substream(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Sampler {
            rng,
            _marker: PhantomData,
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> T {
        T::of(self.rng.gen::<f64>() * (hi - lo) + lo)
    }

    pub fn axis(&mut self) -> Axis {
        match self.rng.gen_range(0..3) {
            0 => Axis::X1,
            1 => Axis::X2,
            _ => Axis::X3,
        }
    }

    pub fn four_vector(&mut self, lo: f64, hi: f64) -> FourVector<T> {
        FourVector::new(
            self.uniform(lo, hi),
            self.uniform(lo, hi),
            self.uniform(lo, hi),
            self.uniform(lo, hi),
        )
    }

    /// Complex number uniform on the closed unit disc.
    pub fn unit_disc(&mut self) -> Complex<T> {
        loop {
            let re = self.rng.gen::<f64>() * 2.0 - 1.0;
            let im = self.rng.gen::<f64>() * 2.0 - 1.0;
            if re * re + im * im <= 1.0 {
                return Complex::new(T::of(re), T::of(im));
            }
        }
    }

    /// Random SL(2,C) element: unit-disc entries rescaled to determinant
    /// one. Draws with `|det| < 0.05` before rescaling are rejected to keep
    /// the entries (and the covering-map conditioning) bounded.
    pub fn sl2c(&mut self) -> SL2C<T> {
        loop {
            let a = self.unit_disc();
            let b = self.unit_disc();
            let c = self.unit_disc();
            let d = self.unit_disc();
            let det = a * d - b * c;
            if det.norm() < T::of(0.05) {
                continue;
            }
            let s = det.sqrt().inv();
            if let Ok(m) = SL2C::new(a * s, b * s, c * s, d * s) {
                return m;
            }
        }
    }

    /// Random spatial rotation as a Lorentz matrix.
    pub fn rotation_matrix(&mut self) -> LorentzMatrix<T> {
        let r1 = LorentzMatrix::rotation(self.axis(), self.uniform(-PI_F, PI_F));
        let r2 = LorentzMatrix::rotation(self.axis(), self.uniform(-PI_F, PI_F));
        r1.compose(&r2)
    }

    /// Random restricted Lorentz matrix in polar form
    /// `R1 * boost(axis, zeta) * R2`, `|zeta| <= max_rapidity`. One boost
    /// between two rotations reaches the whole restricted group while
    /// keeping matrix norms (and metric-preservation error) small.
    pub fn restricted_lorentz(&mut self, max_rapidity: f64) -> LorentzMatrix<T> {
        let r1 = LorentzMatrix::rotation(self.axis(), self.uniform(-PI_F, PI_F));
        let b = LorentzMatrix::boost(self.axis(), self.uniform(-max_rapidity, max_rapidity));
        let r2 = LorentzMatrix::rotation(self.axis(), self.uniform(-PI_F, PI_F));
        r1.compose(&b).compose(&r2)
    }

    /// The same polar form at the SL(2,C) level.
    pub fn lorentz_sl2c(&mut self, max_rapidity: f64) -> SL2C<T> {
        let r1 = SL2C::rotation(self.axis(), self.uniform(-PI_F, PI_F));
        let b = SL2C::boost(self.axis(), self.uniform(-max_rapidity, max_rapidity));
        let r2 = SL2C::rotation(self.axis(), self.uniform(-PI_F, PI_F));
        r1.mul(&b).mul(&r2)
    }

    /// Random inhomogeneous element with bounded rapidity and translation.
    pub fn group_element(
        &mut self,
        max_rapidity: f64,
        max_translation: f64,
    ) -> Result<InhomogeneousElement<T>> {
        let a = self.four_vector(-max_translation, max_translation);
        InhomogeneousElement::new(a, self.lorentz_sl2c(max_rapidity))
    }

    /// Random purely spatial rectangle with Euclidean-orthogonal edges;
    /// returns the surface and its width and height.
    pub fn spatial_rectangle(&mut self) -> (RectSurface<T>, T, T) {
        loop {
            let u3 = [
                self.uniform(-1.0, 1.0),
                self.uniform(-1.0, 1.0),
                self.uniform(-1.0, 1.0),
            ];
            let v3 = [
                self.uniform(-1.0, 1.0),
                self.uniform(-1.0, 1.0),
                self.uniform(-1.0, 1.0),
            ];
            let nu = (u3[0] * u3[0] + u3[1] * u3[1] + u3[2] * u3[2]).sqrt();
            if nu < T::of(0.3) {
                continue;
            }
            let e1 = [u3[0] / nu, u3[1] / nu, u3[2] / nu];
            let dot = v3[0] * e1[0] + v3[1] * e1[1] + v3[2] * e1[2];
            let w3 = [v3[0] - dot * e1[0], v3[1] - dot * e1[1], v3[2] - dot * e1[2]];
            let nw = (w3[0] * w3[0] + w3[1] * w3[1] + w3[2] * w3[2]).sqrt();
            if nw < T::of(0.3) {
                continue;
            }
            let e2 = [w3[0] / nw, w3[1] / nw, w3[2] / nw];
            let width = self.uniform(0.5, 2.0);
            let height = self.uniform(0.5, 2.0);
            let origin = FourVector::new(
                T::zero(),
                self.uniform(-3.0, 3.0),
                self.uniform(-3.0, 3.0),
                self.uniform(-3.0, 3.0),
            );
            let span_u = FourVector::new(T::zero(), e1[0] * width, e1[1] * width, e1[2] * width);
            let span_v = FourVector::new(T::zero(), e2[0] * height, e2[1] * height, e2[2] * height);
            if let Ok(rect) = RectSurface::new(origin, span_u, span_v) {
                return (rect, width, height);
            }
        }
    }

    /// Random space-like rectangle: a spatial one pushed through a random
    /// restricted Lorentz map.
    pub fn spacelike_rectangle(&mut self, max_rapidity: f64) -> RectSurface<T> {
        loop {
            let (rect, _, _) = self.spatial_rectangle();
            let m = self.restricted_lorentz(max_rapidity);
            if let Ok(out) = RectSurface::new(
                m.apply(rect.origin),
                m.apply(rect.span_u),
                m.apply(rect.span_v),
            ) {
                return out;
            }
        }
    }

    /// Random framed surface: the standard framed square moved by a random
    /// group element; returns the surface with the element that made it.
    pub fn framed_surface(
        &mut self,
        max_rapidity: f64,
        max_translation: f64,
    ) -> Result<(FramedSurface<T>, InhomogeneousElement<T>)> {
        let g = self.group_element(max_rapidity, max_translation)?;
        let fs = transform_framed(&g, &FramedSurface::standard())?;
        Ok((fs, g))
    }

    /// Random field expression from the generator grammar. Depth-bounded;
    /// at most one transcendental call per root-to-leaf path and non-zero
    /// denominators keep evaluation finite on bounded domains.
    pub fn field_expr(&mut self, depth: usize) -> FieldExpr<T> {
        self.gen_expr(depth, true)
    }

    fn gen_expr(&mut self, depth: usize, allow_func: bool) -> FieldExpr<T> {
        if depth == 0 {
            return self.gen_atom();
        }
        match self.rng.gen_range(0..8) {
            0 => FieldExpr::Add(
                Box::new(self.gen_expr(depth - 1, allow_func)),
                Box::new(self.gen_expr(depth - 1, allow_func)),
            ),
            1 => FieldExpr::Sub(
                Box::new(self.gen_expr(depth - 1, allow_func)),
                Box::new(self.gen_expr(depth - 1, allow_func)),
            ),
            2 | 3 => FieldExpr::Mul(
                Box::new(self.gen_expr(depth - 1, allow_func)),
                Box::new(self.gen_expr(depth - 1, allow_func)),
            ),
            4 => {
                // safe denominator: bounded away from zero on R^4
                let c = self.uniform(0.5, 2.0);
                let k = self.rng.gen_range(0..4);
                let den = FieldExpr::Add(
                    Box::new(FieldExpr::real(c)),
                    Box::new(FieldExpr::Pow(Box::new(FieldExpr::Coord(k)), 2)),
                );
                FieldExpr::Div(Box::new(self.gen_expr(depth - 1, allow_func)), Box::new(den))
            }
            5 => FieldExpr::Pow(
                Box::new(self.gen_atom()),
                self.rng.gen_range(0..4),
            ),
            6 if allow_func => {
                let kind = match self.rng.gen_range(0..5) {
                    0 => crate::field::FuncKind::Sin,
                    1 => crate::field::FuncKind::Cos,
                    2 => crate::field::FuncKind::Exp,
                    3 => crate::field::FuncKind::Sinh,
                    _ => crate::field::FuncKind::Cosh,
                };
                FieldExpr::Func(kind, Box::new(self.gen_expr(depth - 1, false)))
            }
            _ => self.gen_atom(),
        }
    }

    fn gen_atom(&mut self) -> FieldExpr<T> {
        match self.rng.gen_range(0..4) {
            0 => FieldExpr::real(self.uniform(-1.5, 1.5)),
            1 => FieldExpr::constant(T::zero(), T::one()),
            _ => FieldExpr::Coord(self.rng.gen_range(0..4)),
        }
    }

    /// Random section with `n_components` generator-grammar components.
    pub fn section(&mut self, n_components: usize, depth: usize) -> FieldSection<T> {
        FieldSection::new((0..n_components).map(|_| self.field_expr(depth)).collect())
    }

    /// Two states with overlapping supports: per term, both share the same
    /// random group element (hence the same plane and frame) but start from
    /// in-plane shifted base squares and carry independent sections. Their
    /// inner product is generically nonzero.
    pub fn overlapping_state_pair(
        &mut self,
        n_components: usize,
        n_terms: usize,
        max_rapidity: f64,
        max_translation: f64,
    ) -> Result<(StateVector<T>, StateVector<T>)> {
        let mut terms_v = Vec::with_capacity(n_terms);
        let mut terms_w = Vec::with_capacity(n_terms);
        for j in 0..n_terms {
            let g = self.group_element(max_rapidity, max_translation)?;
            let base_v = RectSurface::new(
                FourVector::new(T::zero(), T::zero(), T::of(3.0 * j as f64), T::zero()),
                FourVector::basis(2),
                FourVector::basis(3),
            )?;
            let base_w = RectSurface::new(
                FourVector::new(
                    T::zero(),
                    T::zero(),
                    T::of(3.0 * j as f64) + self.uniform(-0.4, 0.4),
                    self.uniform(-0.4, 0.4),
                ),
                FourVector::basis(2),
                FourVector::basis(3),
            )?;
            let fv = transform_framed(&g, &FramedSurface::new(base_v, Frame::standard())?)?;
            let fw = transform_framed(&g, &FramedSurface::new(base_w, Frame::standard())?)?;
            terms_v.push(StateTerm {
                piece: SurfacePiece::Rect(fv.surface),
                section: self.section(n_components, 2),
                frame: fv.frame,
            });
            terms_w.push(StateTerm {
                piece: SurfacePiece::Rect(fw.surface),
                section: self.section(n_components, 2),
                frame: fw.frame,
            });
        }
        Ok((
            StateVector::new(n_components, terms_v)?,
            StateVector::new(n_components, terms_w)?,
        ))
    }

    /// Random state: `n_terms` framed squares at separated base offsets,
    /// each moved by its own random group element, with random sections.
    pub fn state(
        &mut self,
        n_components: usize,
        n_terms: usize,
        max_rapidity: f64,
        max_translation: f64,
    ) -> Result<StateVector<T>> {
        let mut terms = Vec::with_capacity(n_terms);
        for j in 0..n_terms {
            let g = self.group_element(max_rapidity, max_translation)?;
            let base = RectSurface::new(
                FourVector::new(T::zero(), T::zero(), T::of(2.5 * j as f64), T::zero()),
                FourVector::basis(2),
                FourVector::basis(3),
            )?;
            let fs = transform_framed(&g, &FramedSurface::new(base, Frame::standard())?)?;
            terms.push(StateTerm {
                piece: SurfacePiece::Rect(fs.surface),
                section: self.section(n_components, 2),
                frame: fs.frame,
            });
        }
        StateVector::new(n_components, terms)
    }
}

const PI_F: f64 = std::f64::consts::PI;

/// Convenience wrapper: parse a list of component sources into a section.
pub fn section_from_sources<T: Real>(sources: &[String]) -> Result<FieldSection<T>> {
    let components = sources
        .iter()
        .map(|s| parse_field(s).map_err(crate::error::Error::from))
        .collect::<Result<Vec<_>>>()?;
    Ok(FieldSection::new(components))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn substreams_are_reproducible_and_independent() {
        let mut a = Sampler::<f64>::substream(42, 1);
        let mut b = Sampler::<f64>::substream(42, 1);
        let mut c = Sampler::<f64>::substream(42, 2);
        let (x, y, z) = (a.uniform(0.0, 1.0), b.uniform(0.0, 1.0), c.uniform(0.0, 1.0));
        assert_eq!(x, y);
        assert_ne!(x, z);
    }

    #[test]
    fn sl2c_samples_have_unit_determinant() {
        let mut s = Sampler::<f64>::new(7);
        for _ in 0..50 {
            let m = s.sl2c();
            assert!((m.det() - Complex::new(1.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn restricted_lorentz_samples_validate() {
        let mut s = Sampler::<f64>::new(3);
        for _ in 0..50 {
            let m = s.restricted_lorentz(2.0);
            assert!(m.metric_deviation() <= 1e-12);
            LorentzMatrix::new(*m.matrix()).unwrap();
        }
    }

    #[test]
    fn generated_fields_evaluate_and_roundtrip() {
        let mut s = Sampler::<f64>::new(11);
        for _ in 0..50 {
            let f = s.field_expr(3);
            let x = s.four_vector(-2.0, 2.0);
            let v = f.eval(&x).unwrap();
            assert!(v.re.is_finite() && v.im.is_finite());
            let reparsed = parse_field::<f64>(&f.print()).unwrap();
            let w = reparsed.eval(&x).unwrap();
            assert!((v - w).norm() <= 1e-12 * (1.0 + v.norm()));
        }
    }

    #[test]
    fn random_states_validate() {
        let mut s = Sampler::<f64>::new(19);
        for _ in 0..5 {
            let v = s.state(2, 2, 1.5, 1.5).unwrap();
            assert_eq!(v.terms().len(), 2);
        }
    }
}

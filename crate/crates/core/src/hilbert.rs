//! State vectors — finite lists of (surface piece, field section, frame) —
//! with the vector-space operations and the two candidate inner products:
//! the Lorentz-invariant one (imaginary-time measure) and the Euclidean
//! area one, which boosts break.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::field::{scale_add, FieldSection};
use crate::quad;
use crate::region::{region_difference, region_intersect, ConvexRegion, Intersection, PlaneChart};
use crate::scalar::Real;
use crate::surface::{Frame, FramedPiece, SurfacePiece};

/// Dimension of the coefficient space with its orthonormal basis; the
/// basis Gram matrix is the identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GramConfig {
    pub n_components: usize,
}

impl GramConfig {
    pub fn new(n_components: usize) -> Self {
        assert!(n_components >= 1);
        GramConfig { n_components }
    }

    /// `<E^alpha, E^beta> = delta_{alpha beta}`.
    pub fn basis_inner<T: Real>(&self, alpha: usize, beta: usize) -> T {
        if alpha == beta {
            T::one()
        } else {
            T::zero()
        }
    }
}

/// Quadrature order used for per-triangle field integrals.
const TRIANGLE_ORDER: usize = quad::DEFAULT_TRIANGLE_ORDER;

/// One summand of a state vector.
#[derive(Clone, Debug)]
pub struct StateTerm<T> {
    pub piece: SurfacePiece<T>,
    pub section: FieldSection<T>,
    pub frame: Frame<T>,
}

/// A finite sum of framed field-carrying pieces with pairwise disjoint
/// interiors.
#[derive(Clone, Debug)]
pub struct StateVector<T> {
    terms: Vec<StateTerm<T>>,
    n_components: usize,
}

impl<T: Real> StateVector<T> {
    /// Validates component counts, frame normality and pairwise
    /// disjointness.
    pub fn new(n_components: usize, terms: Vec<StateTerm<T>>) -> Result<Self> {
        for term in &terms {
            if term.section.len() != n_components {
                return Err(Error::ComponentMismatch {
                    left: term.section.len(),
                    right: n_components,
                });
            }
            FramedPiece::new(term.piece.clone(), term.frame)?;
        }
        for i in 0..terms.len() {
            for j in (i + 1)..terms.len() {
                let overlap = region_intersect(
                    &terms[i].piece.to_region(),
                    &terms[j].piece.to_region(),
                    T::TOL_COPLANAR,
                    T::TOL_AREA_FLOOR,
                );
                if !overlap.is_empty() {
                    return Err(Error::NotDisjoint);
                }
            }
        }
        Ok(StateVector {
            terms,
            n_components,
        })
    }

    /// Internal constructor for term lists whose disjointness is
    /// guaranteed by construction.
    fn from_disjoint(n_components: usize, terms: Vec<StateTerm<T>>) -> Self {
        StateVector {
            terms,
            n_components,
        }
    }

    /// The zero vector (empty term list).
    pub fn zero(n_components: usize) -> Self {
        StateVector {
            terms: Vec::new(),
            n_components,
        }
    }

    pub fn terms(&self) -> &[StateTerm<T>] {
        &self.terms
    }

    pub fn n_components(&self) -> usize {
        self.n_components
    }

    pub fn scaled(&self, factor: Complex<T>) -> Self {
        StateVector {
            terms: self
                .terms
                .iter()
                .map(|t| StateTerm {
                    piece: t.piece.clone(),
                    section: t.section.scaled(factor),
                    frame: t.frame,
                })
                .collect(),
            n_components: self.n_components,
        }
    }

    /// Norm from the invariant inner product. The imaginary part of
    /// `<v, v>` must vanish up to noise; negative real parts at noise
    /// level are clamped to zero.
    pub fn norm(&self) -> Result<T> {
        let ip = inner(self, self)?;
        let scale = T::one() + ip.re.abs();
        assert!(
            ip.im.abs() <= T::TOL_IDENTITY * scale,
            "inner(v, v) must be real"
        );
        Ok(ip.re.max(T::zero()).sqrt())
    }
}

#[derive(Clone, Copy)]
enum Measure {
    Invariant,
    EuclideanArea,
}

/// Constant density of a plane chart per unit chart area, under the chosen
/// measure.
fn plane_density<T: Real>(chart: &PlaneChart<T>, measure: Measure) -> Result<T> {
    match measure {
        Measure::EuclideanArea => Ok(chart.euclidean_scale()),
        Measure::Invariant => {
            let gm = chart.minkowski_gram_det();
            if gm <= T::zero() {
                return Err(Error::NegativeDensity {
                    value: gm.to_f64().unwrap_or(f64::NAN),
                });
            }
            Ok(gm.sqrt())
        }
    }
}

/// Integral of `sum_alpha f_alpha conj(g_alpha)` over a region, under the
/// chosen measure. Fan-triangulated, fixed order, deterministic.
fn integrate_pairing<T: Real>(
    region: &ConvexRegion<T>,
    f: &FieldSection<T>,
    g: &FieldSection<T>,
    measure: Measure,
) -> Result<Complex<T>> {
    let density = plane_density(region.chart(), measure)?;
    let chart = *region.chart();
    let mut total = Complex::new(T::zero(), T::zero());
    for tri in region.triangles() {
        let contribution = quad::try_integrate_triangle(TRIANGLE_ORDER, &tri, |p| {
            let x = chart.to_r4(p);
            let fv = f.eval(&x)?;
            let gv = g.eval(&x)?;
            let mut acc = Complex::new(T::zero(), T::zero());
            for (a, b) in fv.iter().zip(gv.iter()) {
                acc = acc + *a * b.conj();
            }
            Ok(acc)
        })?;
        total = total + contribution;
    }
    Ok(total * Complex::new(density, T::zero()))
}

fn inner_with_measure<T: Real>(
    v: &StateVector<T>,
    w: &StateVector<T>,
    measure: Measure,
) -> Result<Complex<T>> {
    if v.n_components != w.n_components {
        return Err(Error::ComponentMismatch {
            left: v.n_components,
            right: w.n_components,
        });
    }
    let mut total = Complex::new(T::zero(), T::zero());
    for p in &v.terms {
        for q in &w.terms {
            // frames must agree; otherwise the pair contributes zero
            if !p.frame.approx_eq(&q.frame, T::TOL_FRAME_EQ) {
                continue;
            }
            let overlap = region_intersect(
                &p.piece.to_region(),
                &q.piece.to_region(),
                T::TOL_COPLANAR,
                T::TOL_AREA_FLOOR,
            );
            if let Intersection::Region(r) = overlap {
                total = total + integrate_pairing(&r, &p.section, &q.section, measure)?;
            }
        }
    }
    Ok(total)
}

/// The inner product used throughout: fields paired against the
/// Lorentz-invariant measure `d|rho'|` over each pairwise intersection.
/// Linear in the first argument, conjugate-linear in the second; pairs
/// with different frames contribute zero.
pub fn inner<T: Real>(v: &StateVector<T>, w: &StateVector<T>) -> Result<Complex<T>> {
    inner_with_measure(v, w, Measure::Invariant)
}

/// The rejected candidate: pairing against the Euclidean area measure
/// `drho`. Kept for the negative control — it is not boost-invariant.
pub fn inner_legacy<T: Real>(v: &StateVector<T>, w: &StateVector<T>) -> Result<Complex<T>> {
    inner_with_measure(v, w, Measure::EuclideanArea)
}

/// `lambda v + mu w` with zero-extension semantics: the union of the
/// supports is subdivided into disjoint pieces; overlap pieces carry
/// `lambda f + mu g`, exclusive pieces keep their single scaled section.
///
/// Overlapping pieces whose frames differ (beyond tolerance) are an error;
/// disjoint pieces with different frames simply stay separate terms.
pub fn add<T: Real>(
    lambda: Complex<T>,
    v: &StateVector<T>,
    mu: Complex<T>,
    w: &StateVector<T>,
) -> Result<StateVector<T>> {
    if v.n_components != w.n_components {
        return Err(Error::ComponentMismatch {
            left: v.n_components,
            right: w.n_components,
        });
    }
    let zero = Complex::new(T::zero(), T::zero());
    if mu == zero {
        return Ok(v.scaled(lambda));
    }
    if lambda == zero {
        return Ok(w.scaled(mu));
    }

    let cop = T::TOL_COPLANAR;
    let floor = T::TOL_AREA_FLOOR;
    let mut out: Vec<StateTerm<T>> = Vec::new();

    // overlaps: frames must match; collect the combined sections
    for p in &v.terms {
        let pr = p.piece.to_region();
        for q in &w.terms {
            let qr = q.piece.to_region();
            if let Intersection::Region(r) = region_intersect(&pr, &qr, cop, floor) {
                if !p.frame.approx_eq(&q.frame, T::TOL_FRAME_EQ) {
                    return Err(Error::OverlapFrameMismatch);
                }
                out.push(StateTerm {
                    piece: SurfacePiece::Region(r),
                    section: scale_add(lambda, &p.section, mu, &q.section)?,
                    frame: p.frame,
                });
            }
        }
    }

    // exclusive parts of v
    for p in &v.terms {
        let mut fragments = vec![p.piece.to_region()];
        let mut touched = false;
        for q in &w.terms {
            let qr = q.piece.to_region();
            let mut next = Vec::new();
            for frag in &fragments {
                if region_intersect(frag, &qr, cop, floor).is_empty() {
                    next.push(frag.clone());
                } else {
                    touched = true;
                    next.extend(region_difference(frag, &qr, cop, floor));
                }
            }
            fragments = next;
        }
        if touched {
            for frag in fragments {
                out.push(StateTerm {
                    piece: SurfacePiece::Region(frag),
                    section: p.section.scaled(lambda),
                    frame: p.frame,
                });
            }
        } else {
            out.push(StateTerm {
                piece: p.piece.clone(),
                section: p.section.scaled(lambda),
                frame: p.frame,
            });
        }
    }

    // exclusive parts of w
    for q in &w.terms {
        let mut fragments = vec![q.piece.to_region()];
        let mut touched = false;
        for p in &v.terms {
            let pr = p.piece.to_region();
            let mut next = Vec::new();
            for frag in &fragments {
                if region_intersect(frag, &pr, cop, floor).is_empty() {
                    next.push(frag.clone());
                } else {
                    touched = true;
                    next.extend(region_difference(frag, &pr, cop, floor));
                }
            }
            fragments = next;
        }
        if touched {
            for frag in fragments {
                out.push(StateTerm {
                    piece: SurfacePiece::Region(frag),
                    section: q.section.scaled(mu),
                    frame: q.frame,
                });
            }
        } else {
            out.push(StateTerm {
                piece: q.piece.clone(),
                section: q.section.scaled(mu),
                frame: q.frame,
            });
        }
    }

    Ok(StateVector::from_disjoint(v.n_components, out))
}

/// Matrix of pairwise inner products; asserts Hermitian symmetry at noise
/// level.
pub fn gram_matrix<T: Real>(states: &[StateVector<T>]) -> Result<Vec<Vec<Complex<T>>>> {
    let n = states.len();
    let mut m = vec![vec![Complex::new(T::zero(), T::zero()); n]; n];
    for i in 0..n {
        for j in 0..n {
            m[i][j] = inner(&states[i], &states[j])?;
        }
    }
    for i in 0..n {
        for j in 0..n {
            let dev = (m[i][j] - m[j][i].conj()).norm();
            assert!(
                dev <= T::TOL_IDENTITY * (T::one() + m[i][j].norm()),
                "gram matrix must be Hermitian (deviation {dev:?})"
            );
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{parse_field, FieldExpr};
    use crate::group::InhomogeneousElement;
    use crate::lorentz::Axis;
    use crate::sl2c::SL2C;
    use crate::surface::{transform_framed, FramedSurface, RectSurface};
    use crate::vec4::FourVector;

    fn cx(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn square_state_at(x2: f64, x3: f64, field: &str) -> StateVector<f64> {
        let rect = RectSurface::new(
            FourVector::new(0.0, 0.0, x2, x3),
            FourVector::basis(2),
            FourVector::basis(3),
        )
        .unwrap();
        StateVector::new(
            1,
            vec![StateTerm {
                piece: SurfacePiece::Rect(rect),
                section: FieldSection::new(vec![parse_field(field).unwrap()]),
                frame: Frame::standard(),
            }],
        )
        .unwrap()
    }

    #[test]
    fn unit_square_with_unit_field_has_unit_inner() {
        let v = square_state_at(0.0, 0.0, "1");
        let ip = inner(&v, &v).unwrap();
        assert!((ip.re - 1.0).abs() < 1e-12 && ip.im.abs() < 1e-14);
        assert!((v.norm().unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn disjoint_translates_are_orthogonal() {
        let v = square_state_at(0.0, 0.0, "1");
        let w = square_state_at(2.0, 0.0, "1");
        assert_eq!(inner(&v, &w).unwrap(), cx(0.0, 0.0));
    }

    #[test]
    fn different_frames_contribute_zero() {
        let v = square_state_at(0.0, 0.0, "1");
        // same surface, frame boosted along x1 (still normal to the plane)
        let boosted = Frame::standard()
            .transformed(&SL2C::boost(Axis::X1, 0.8).covering_matrix().unwrap())
            .unwrap();
        let rect = RectSurface::standard_square();
        let w = StateVector::new(
            1,
            vec![StateTerm {
                piece: SurfacePiece::Rect(rect),
                section: FieldSection::new(vec![FieldExpr::one()]),
                frame: boosted,
            }],
        )
        .unwrap();
        assert_eq!(inner(&v, &w).unwrap(), cx(0.0, 0.0));
    }

    #[test]
    fn legacy_inner_matches_on_spatial_surfaces() {
        let v = square_state_at(0.0, 0.0, "x2 + i*x3");
        let a = inner(&v, &v).unwrap();
        let b = inner_legacy(&v, &v).unwrap();
        assert!((a - b).norm() < 1e-10);
    }

    #[test]
    fn legacy_inner_is_not_boost_invariant() {
        let v = square_state_at(0.0, 0.0, "1");
        let g = InhomogeneousElement::from_lorentz(SL2C::boost(Axis::X2, 1.0)).unwrap();
        let fs = transform_framed(&g, &FramedSurface::standard()).unwrap();
        let w = StateVector::new(
            1,
            vec![StateTerm {
                piece: SurfacePiece::Rect(fs.surface),
                section: FieldSection::new(vec![FieldExpr::one()]),
                frame: fs.frame,
            }],
        )
        .unwrap();
        let before = inner_legacy(&v, &v).unwrap().re;
        let after = inner_legacy(&w, &w).unwrap().re;
        let ratio = after / before;
        assert!((ratio - 2.0f64.cosh().sqrt()).abs() < 1e-10);
        // while the invariant inner product stays put
        let inv_after = inner(&w, &w).unwrap().re;
        assert!((inv_after - before).abs() < 1e-10);
    }

    #[test]
    fn additive_inverse_gives_the_zero_vector() {
        let v = square_state_at(0.0, 0.0, "x2^2 + i*sin(x3)");
        let z = add(cx(1.0, 0.0), &v, cx(-1.0, 0.0), &v).unwrap();
        assert!(z.norm().unwrap() <= 1e-12);
    }

    #[test]
    fn zero_coefficient_returns_the_other_argument_scaled() {
        let v = square_state_at(0.0, 0.0, "x2");
        let w = square_state_at(5.0, 0.0, "x3");
        let r = add(cx(1.0, 0.0), &v, cx(0.0, 0.0), &w).unwrap();
        assert_eq!(r.terms().len(), 1);
        let d = add(cx(1.0, 0.0), &r, cx(-1.0, 0.0), &v).unwrap();
        assert!(d.norm().unwrap() <= 1e-12);
    }

    #[test]
    fn disjoint_supports_concatenate() {
        let v = square_state_at(0.0, 0.0, "1");
        let w = square_state_at(3.0, 0.0, "1");
        let s = add(cx(1.0, 0.0), &v, cx(1.0, 0.0), &w).unwrap();
        assert_eq!(s.terms().len(), 2);
        let ip = inner(&s, &s).unwrap();
        assert!((ip.re - 2.0).abs() < 1e-12);
    }

    #[test]
    fn overlap_combines_sections_with_zero_extension() {
        // two coplanar unit squares overlapping on half their area, both
        // with constant field 1: the overlap carries 2, exclusives carry 1
        let v = square_state_at(0.0, 0.0, "1");
        let w = square_state_at(0.5, 0.0, "1");
        let s = add(cx(1.0, 0.0), &v, cx(1.0, 0.0), &w).unwrap();
        // |s|^2 = 4 * 0.5 (overlap) + 1 * 0.5 + 1 * 0.5 (exclusive strips)
        let ip = inner(&s, &s).unwrap();
        assert!((ip.re - 3.0).abs() < 1e-10, "got {}", ip.re);
        // and the supports tile the union: total area 1.5
        let total: f64 = s.terms().iter().map(|t| t.piece.euclidean_area()).sum();
        assert!((total - 1.5).abs() < 1e-10);
    }

    #[test]
    fn add_rejects_overlap_with_unequal_frames() {
        let v = square_state_at(0.0, 0.0, "1");
        let boosted = Frame::standard()
            .transformed(&SL2C::boost(Axis::X1, 0.5).covering_matrix().unwrap())
            .unwrap();
        let rect = RectSurface::new(
            FourVector::new(0.0, 0.0, 0.5, 0.0),
            FourVector::basis(2),
            FourVector::basis(3),
        )
        .unwrap();
        let w = StateVector::new(
            1,
            vec![StateTerm {
                piece: SurfacePiece::Rect(rect),
                section: FieldSection::new(vec![FieldExpr::one()]),
                frame: boosted,
            }],
        )
        .unwrap();
        assert!(matches!(
            add(cx(1.0, 0.0), &v, cx(1.0, 0.0), &w),
            Err(Error::OverlapFrameMismatch)
        ));
    }

    #[test]
    fn norm_of_constant_field_is_its_modulus() {
        let v = square_state_at(0.0, 0.0, "3+4*i").scaled(cx(0.2, 0.0));
        // |0.2 * (3 + 4i)| = 1
        assert!((v.norm().unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn gram_matrix_of_scaled_vector() {
        let v = square_state_at(0.0, 0.0, "1");
        let two_v = v.scaled(cx(2.0, 0.0));
        let g = gram_matrix(&[v, two_v]).unwrap();
        assert!((g[0][0].re - 1.0).abs() < 1e-12);
        assert!((g[0][1].re - 2.0).abs() < 1e-12);
        assert!((g[1][0].re - 2.0).abs() < 1e-12);
        assert!((g[1][1].re - 4.0).abs() < 1e-12);
    }

    #[test]
    fn inner_rejects_component_mismatch() {
        let v = square_state_at(0.0, 0.0, "1");
        let rect = RectSurface::standard_square();
        let w = StateVector::new(
            2,
            vec![StateTerm {
                piece: SurfacePiece::Rect(rect),
                section: FieldSection::basis(2, 0),
                frame: Frame::standard(),
            }],
        )
        .unwrap();
        assert!(matches!(
            inner(&v, &w),
            Err(Error::ComponentMismatch { .. })
        ));
    }
}

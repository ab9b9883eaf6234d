//! The unitary action of the inhomogeneous SL(2,C) on state vectors, and
//! verification routines for its unitarity and group law.

use num_complex::Complex;
use rand::Rng;

use crate::error::{Error, Result};
use crate::field::FieldSection;
use crate::group::InhomogeneousElement;
use crate::hilbert::{add, gram_matrix, inner, inner_legacy, StateTerm, StateVector};
use crate::scalar::Real;
use crate::surface::{Frame, RectSurface, SurfacePiece};
use crate::vec4::FourVector;

/// The two fixed real parameters of the representation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RepConfig<T> {
    pub h_hat: T,
    pub p_hat: T,
}

impl<T: Real> Default for RepConfig<T> {
    fn default() -> Self {
        RepConfig {
            h_hat: T::one(),
            p_hat: T::of(0.5),
        }
    }
}

/// Applies `U(a, L)` to a state: each piece and frame moves by the group
/// element, each field component is pulled back and multiplied by the
/// unimodular phase `exp(-i a . (H_hat L f0 + P_hat L f1))` (Minkowski
/// product).
pub fn act<T: Real>(
    cfg: &RepConfig<T>,
    g: &InhomogeneousElement<T>,
    v: &StateVector<T>,
) -> Result<StateVector<T>> {
    let m = g.linear();
    let a = g.translation();
    let mut terms = Vec::with_capacity(v.terms().len());
    for t in v.terms() {
        let piece = t.piece.transformed(g)?;
        let frame = t.frame.transformed(m)?;
        let direction = frame.f0.scaled(cfg.h_hat) + frame.f1.scaled(cfg.p_hat);
        let phase_angle = -a.minkowski_dot(direction);
        let phase = Complex::from_polar(T::one(), phase_angle);
        debug_assert!((phase.norm() - T::one()).abs() <= T::TOL_IDENTITY);
        let section = t.section.pullback(g).scaled(phase);
        terms.push(StateTerm {
            piece,
            section,
            frame,
        });
    }
    StateVector::new(v.n_components(), terms)
}

/// Result of a unitarity check for one `(g, v, w)` triple.
#[derive(Clone, Copy, Debug)]
pub struct UnitarityReport<T> {
    pub before: Complex<T>,
    pub after: Complex<T>,
    pub deviation: T,
    pub tolerance: T,
    pub pass: bool,
}

fn unitarity_with<T: Real>(
    cfg: &RepConfig<T>,
    g: &InhomogeneousElement<T>,
    v: &StateVector<T>,
    w: &StateVector<T>,
    tolerance: T,
    ip: impl Fn(&StateVector<T>, &StateVector<T>) -> Result<Complex<T>>,
) -> Result<UnitarityReport<T>> {
    let before = ip(v, w)?;
    let after = ip(&act(cfg, g, v)?, &act(cfg, g, w)?)?;
    let deviation = (after - before).norm();
    Ok(UnitarityReport {
        before,
        after,
        deviation,
        pass: deviation <= tolerance,
        tolerance,
    })
}

/// Checks `<U v, U w> = <v, w>` under the invariant inner product.
pub fn verify_unitarity<T: Real>(
    cfg: &RepConfig<T>,
    g: &InhomogeneousElement<T>,
    v: &StateVector<T>,
    w: &StateVector<T>,
    tolerance: T,
) -> Result<UnitarityReport<T>> {
    unitarity_with(cfg, g, v, w, tolerance, |a, b| inner(a, b))
}

/// The same check against the Euclidean-area inner product; boosts are
/// expected to break it.
pub fn verify_unitarity_legacy<T: Real>(
    cfg: &RepConfig<T>,
    g: &InhomogeneousElement<T>,
    v: &StateVector<T>,
    w: &StateVector<T>,
    tolerance: T,
) -> Result<UnitarityReport<T>> {
    unitarity_with(cfg, g, v, w, tolerance, |a, b| inner_legacy(a, b))
}

/// Result of a group-law comparison `U(g1) U(g2) v` vs `U(g1 g2) v`.
#[derive(Clone, Copy, Debug)]
pub struct GroupLawReport<T> {
    pub max_vertex_deviation: T,
    pub max_frame_deviation: T,
    pub max_field_deviation: T,
    pub norm_deviation: T,
    pub structural_tolerance: T,
    pub norm_tolerance: T,
    pub pass: bool,
}

/// Structural-numeric comparison of the two composition orders: congruent
/// pieces (vertex sets), matching frames, sampled field agreement, plus
/// the norm of the difference vector.
pub fn verify_group_law<T: Real>(
    cfg: &RepConfig<T>,
    g1: &InhomogeneousElement<T>,
    g2: &InhomogeneousElement<T>,
    v: &StateVector<T>,
    rng: &mut impl Rng,
    structural_tolerance: T,
    norm_tolerance: T,
) -> Result<GroupLawReport<T>> {
    let nested = act(cfg, g1, &act(cfg, g2, v)?)?;
    let composed = act(cfg, &g1.compose(g2)?, v)?;

    let mut max_vertex = T::zero();
    let mut max_frame = T::zero();
    let mut max_field = T::zero();

    for (a, b) in nested.terms().iter().zip(composed.terms().iter()) {
        // vertex sets compared as sets: nearest-match distance
        let va = a.piece.vertices_r4();
        let vb = b.piece.vertices_r4();
        for pa in &va {
            let nearest = vb
                .iter()
                .map(|pb| pa.max_abs_diff(*pb))
                .fold(T::infinity(), T::min);
            max_vertex = max_vertex.max(nearest);
        }
        max_frame = max_frame.max(a.frame.max_abs_diff(&b.frame));

        // sampled field agreement at random points of the piece
        let region = a.piece.to_region();
        let verts = region.vertices();
        for _ in 0..20 {
            let mut weights: Vec<T> = (0..verts.len())
                .map(|_| T::of(rng.gen::<f64>()))
                .collect();
            let sum = weights.iter().fold(T::zero(), |acc, w| acc + *w);
            for w in &mut weights {
                *w = *w / sum;
            }
            let mut point = [T::zero(); 2];
            for (w, vert) in weights.iter().zip(verts.iter()) {
                point[0] = point[0] + *w * vert[0];
                point[1] = point[1] + *w * vert[1];
            }
            let x = region.chart().to_r4(point);
            let fa = a.section.eval(&x)?;
            let fb = b.section.eval(&x)?;
            for (ca, cb) in fa.iter().zip(fb.iter()) {
                max_field = max_field.max((*ca - *cb).norm());
            }
        }
    }

    let diff = add(
        Complex::new(T::one(), T::zero()),
        &nested,
        Complex::new(-T::one(), T::zero()),
        &composed,
    )?;
    let norm_deviation = diff.norm()?;

    let pass = nested.terms().len() == composed.terms().len()
        && max_vertex <= structural_tolerance
        && max_frame <= structural_tolerance
        && max_field <= structural_tolerance
        && norm_deviation <= norm_tolerance;

    Ok(GroupLawReport {
        max_vertex_deviation: max_vertex,
        max_frame_deviation: max_frame,
        max_field_deviation: max_field,
        norm_deviation,
        structural_tolerance,
        norm_tolerance,
        pass,
    })
}

/// `count` unit-norm states on translates of the standard unit square,
/// stepping by `step`; the translates must be pairwise disjoint.
pub fn nonseparability_family<T: Real>(
    count: usize,
    step: FourVector<T>,
    n_components: usize,
) -> Result<Vec<StateVector<T>>> {
    let base = RectSurface::standard_square();
    let mut states = Vec::with_capacity(count);
    for j in 0..count {
        let offset = step.scaled(T::of(j as f64));
        let rect = RectSurface::new(base.origin + offset, base.span_u, base.span_v)?;
        states.push(StateVector::new(
            n_components,
            vec![StateTerm {
                piece: SurfacePiece::Rect(rect),
                section: FieldSection::basis(n_components, 0),
                frame: Frame::standard(),
            }],
        )?);
    }
    for i in 0..count {
        for j in (i + 1)..count {
            let overlap = crate::region::region_intersect(
                &states[i].terms()[0].piece.to_region(),
                &states[j].terms()[0].piece.to_region(),
                T::TOL_COPLANAR,
                T::TOL_AREA_FLOOR,
            );
            if !overlap.is_empty() {
                return Err(Error::OverlappingTranslates);
            }
        }
    }
    Ok(states)
}

/// Gram matrix of a translate family; identity when the family is
/// orthonormal.
pub fn family_gram<T: Real>(states: &[StateVector<T>]) -> Result<Vec<Vec<Complex<T>>>> {
    gram_matrix(states)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::parse_field;
    use crate::lorentz::Axis;
    use crate::sl2c::SL2C;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn unit_state(field: &str) -> StateVector<f64> {
        StateVector::new(
            1,
            vec![StateTerm {
                piece: SurfacePiece::Rect(RectSurface::standard_square()),
                section: FieldSection::new(vec![parse_field(field).unwrap()]),
                frame: Frame::standard(),
            }],
        )
        .unwrap()
    }

    #[test]
    fn identity_acts_trivially() {
        let cfg = RepConfig::default();
        let v = unit_state("x2 + i*x3");
        let u = act(&cfg, &InhomogeneousElement::identity(), &v).unwrap();
        let r = verify_unitarity(&cfg, &InhomogeneousElement::identity(), &v, &v, 1e-12).unwrap();
        assert!(r.pass && r.deviation < 1e-14);
        // field values unchanged (phase = 1)
        let x = FourVector::new(0.0, 0.0, 0.3, 0.7);
        assert!(
            (u.terms()[0].section.eval(&x).unwrap()[0] - v.terms()[0].section.eval(&x).unwrap()[0])
                .norm()
                < 1e-15
        );
    }

    #[test]
    fn time_translation_phase() {
        // a = (t, 0, 0, 0), H = 1, P = 0, frame (e0, e1):
        // phase = exp(-i * (a . e0)) = exp(i t)
        let cfg = RepConfig {
            h_hat: 1.0,
            p_hat: 0.0,
        };
        let t = 0.9;
        let g = InhomogeneousElement::from_translation(FourVector::new(t, 0.0, 0.0, 0.0));
        let v = unit_state("1");
        let u = act(&cfg, &g, &v).unwrap();
        let x = u.terms()[0].piece.vertices_r4()[0];
        let got = u.terms()[0].section.eval(&x).unwrap()[0];
        let expect = Complex::from_polar(1.0, t);
        assert!((got - expect).norm() < 1e-12);
    }

    #[test]
    fn field_transport_follows_the_surface() {
        // the field at Y(L) sigma + a equals phase * f(sigma)
        let cfg = RepConfig {
            h_hat: 1.0,
            p_hat: 0.5,
        };
        let g = InhomogeneousElement::new(
            FourVector::new(0.3, -0.2, 0.8, 0.1),
            SL2C::boost(Axis::X2, 0.7),
        )
        .unwrap();
        let v = unit_state("sin(x2)*exp(i*x3)");
        let u = act(&cfg, &g, &v).unwrap();
        let frame = u.terms()[0].frame;
        let dir = frame.f0.scaled(cfg.h_hat) + frame.f1.scaled(cfg.p_hat);
        let phase = Complex::from_polar(1.0, -g.translation().minkowski_dot(dir));
        for st in [[0.0, 0.0], [0.5, 0.25], [1.0, 1.0]] {
            let sigma = FourVector::new(0.0, 0.0, st[0], st[1]);
            let x = g.apply(sigma);
            let got = u.terms()[0].section.eval(&x).unwrap()[0];
            let expect = phase * v.terms()[0].section.eval(&sigma).unwrap()[0];
            assert!((got - expect).norm() < 1e-12);
        }
    }

    #[test]
    fn boost_preserves_the_invariant_inner_product() {
        let cfg = RepConfig::default();
        let g = InhomogeneousElement::new(
            FourVector::new(0.4, 0.1, -0.3, 0.6),
            SL2C::boost(Axis::X2, 1.0).mul(&SL2C::rotation(Axis::X3, 0.8)),
        )
        .unwrap();
        let v = unit_state("x2 + i*x3");
        let w = unit_state("cos(x3)");
        let r = verify_unitarity(&cfg, &g, &v, &w, 1e-9).unwrap();
        assert!(r.pass, "deviation {}", r.deviation);
    }

    #[test]
    fn legacy_inner_product_fails_under_boost() {
        let cfg = RepConfig::default();
        let g = InhomogeneousElement::from_lorentz(SL2C::boost(Axis::X2, 1.0)).unwrap();
        let v = unit_state("1");
        let r = verify_unitarity_legacy(&cfg, &g, &v, &v, 1e-9).unwrap();
        assert!(!r.pass);
        assert!(r.deviation >= 0.1, "deviation {}", r.deviation);
    }

    #[test]
    fn group_law_on_translations_multiplies_phases() {
        let cfg = RepConfig {
            h_hat: 1.0,
            p_hat: 0.5,
        };
        let g1 = InhomogeneousElement::from_translation(FourVector::new(0.2, 0.4, -0.6, 0.8));
        let g2 = InhomogeneousElement::from_translation(FourVector::new(-0.9, 0.3, 0.5, 0.0));
        let v = unit_state("x2^2");
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let r = verify_group_law(&cfg, &g1, &g2, &v, &mut rng, 1e-9, 1e-8).unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn group_law_with_boosts_and_rotations() {
        let cfg = RepConfig::default();
        let g1 = InhomogeneousElement::new(
            FourVector::new(0.3, -0.5, 0.2, 0.9),
            SL2C::boost(Axis::X1, 0.6).mul(&SL2C::rotation(Axis::X2, 1.1)),
        )
        .unwrap();
        let g2 = InhomogeneousElement::new(
            FourVector::new(-0.2, 0.8, 0.4, -0.3),
            SL2C::rotation(Axis::X3, 0.5).mul(&SL2C::boost(Axis::X3, -0.9)),
        )
        .unwrap();
        let v = unit_state("exp(i*x0) + x2");
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let r = verify_group_law(&cfg, &g1, &g2, &v, &mut rng, 1e-9, 1e-8).unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn inverse_restores_the_state() {
        let cfg = RepConfig::default();
        let g = InhomogeneousElement::new(
            FourVector::new(0.7, 0.1, -0.2, 0.5),
            SL2C::boost(Axis::X3, 0.8).mul(&SL2C::rotation(Axis::X1, 0.9)),
        )
        .unwrap();
        let v = unit_state("x3 + i");
        let back = act(&cfg, &g.inverse(), &act(&cfg, &g, &v).unwrap()).unwrap();
        let diff = add(
            Complex::new(1.0, 0.0),
            &back,
            Complex::new(-1.0, 0.0),
            &v,
        )
        .unwrap();
        assert!(diff.norm().unwrap() <= 1e-9);
    }

    #[test]
    fn translate_family_is_orthonormal() {
        let states = nonseparability_family::<f64>(5, FourVector::new(0.0, 0.0, 2.0, 0.0), 1).unwrap();
        let gram = family_gram(&states).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((gram[i][j].re - expect).abs() < 1e-12);
                assert!(gram[i][j].im.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn zero_step_family_is_rejected() {
        assert!(matches!(
            nonseparability_family(2, FourVector::<f64>::zero(), 1),
            Err(Error::OverlappingTranslates)
        ));
        assert!(nonseparability_family(1, FourVector::<f64>::zero(), 1).is_ok());
    }

    #[test]
    fn overlapping_step_family_is_rejected() {
        assert!(matches!(
            nonseparability_family::<f64>(3, FourVector::new(0.0, 0.0, 0.5, 0.0), 1),
            Err(Error::OverlappingTranslates)
        ));
    }
}

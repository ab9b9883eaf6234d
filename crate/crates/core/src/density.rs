//! Surface-measure densities built from 2x2 Jacobian minors.
//!
//! For a chart `sigma` with partials `du`, `dv`, the Euclidean area density
//! is `sum_{a<b} rho^ab |J_ab|` with
//! `rho^ab = |J_ab| / sqrt(det[J_ab^T J_ab + J_cd^T J_cd])`, `(c,d)` the
//! complementary index pair. Replacing the time row of `J_0b` by `i` times
//! itself yields the imaginary-time density, whose integral is invariant
//! under Lorentz maps.

use num_complex::Complex;

use crate::chart::Parametrization;
use crate::error::{Error, Result};
use crate::mat::Mat4;
use crate::quad;
use crate::scalar::Real;
use crate::vec4::FourVector;

/// Index pairs `a < b` in lexicographic order.
pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Position of the complementary pair of `PAIRS[k]` within `PAIRS`.
pub const COMPLEMENT: [usize; 6] = [5, 4, 3, 2, 1, 0];

/// The six per-pair densities `rho^ab` at one chart point.
#[derive(Clone, Copy, Debug)]
pub struct PairDensities<T> {
    pub values: [T; 6],
}

impl<T: Real> PairDensities<T> {
    pub fn get(&self, a: usize, b: usize) -> T {
        let k = PAIRS
            .iter()
            .position(|&(pa, pb)| (pa, pb) == (a.min(b), a.max(b)))
            .expect("indices must be distinct and < 4");
        self.values[k]
    }
}

fn det2<T: Real>(m: [[T; 2]; 2]) -> T {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

/// Jacobian minor for the index pair `(a, b)`: rows `(du_a, dv_a)` and
/// `(du_b, dv_b)`.
pub fn jacobian_pair<T: Real>(du: FourVector<T>, dv: FourVector<T>, a: usize, b: usize) -> [[T; 2]; 2] {
    [[du[a], dv[a]], [du[b], dv[b]]]
}

fn gram_2x2<T: Real>(j: [[T; 2]; 2]) -> [[T; 2]; 2] {
    // J^T J
    [
        [
            j[0][0] * j[0][0] + j[1][0] * j[1][0],
            j[0][0] * j[0][1] + j[1][0] * j[1][1],
        ],
        [
            j[0][0] * j[0][1] + j[1][0] * j[1][1],
            j[0][1] * j[0][1] + j[1][1] * j[1][1],
        ],
    ]
}

fn add_2x2<T: Real>(x: [[T; 2]; 2], y: [[T; 2]; 2]) -> [[T; 2]; 2] {
    [
        [x[0][0] + y[0][0], x[0][1] + y[0][1]],
        [x[1][0] + y[1][0], x[1][1] + y[1][1]],
    ]
}

fn degenerate_floor<T: Real>(du: FourVector<T>, dv: FourVector<T>) -> T {
    let scale = du.euclidean_dot(du) * dv.euclidean_dot(dv);
    scale * T::epsilon() * T::of(64.0)
}

/// The densities `rho^ab` of all six index pairs at `(s, t)`.
pub fn euclidean_pair_densities<T: Real>(
    p: &impl Parametrization<T>,
    s: T,
    t: T,
) -> Result<PairDensities<T>> {
    let du = p.du(s, t);
    let dv = p.dv(s, t);
    let floor = degenerate_floor(du, dv);
    let mut values = [T::zero(); 6];
    for (k, &(a, b)) in PAIRS.iter().enumerate() {
        let (c, d) = PAIRS[COMPLEMENT[k]];
        let jab = jacobian_pair(du, dv, a, b);
        let jcd = jacobian_pair(du, dv, c, d);
        let den_sq = det2(add_2x2(gram_2x2(jab), gram_2x2(jcd)));
        if den_sq <= floor {
            return Err(Error::DegeneratePoint);
        }
        values[k] = det2(jab).abs() / den_sq.sqrt();
    }
    Ok(PairDensities { values })
}

/// The Euclidean area integrand `sum_{a<b} rho^ab |J_ab|` at `(s, t)`.
pub fn euclidean_area_density<T: Real>(p: &impl Parametrization<T>, s: T, t: T) -> Result<T> {
    let du = p.du(s, t);
    let dv = p.dv(s, t);
    let rho = euclidean_pair_densities(p, s, t)?;
    let mut total = T::zero();
    for (k, &(a, b)) in PAIRS.iter().enumerate() {
        total = total + rho.values[k] * det2(jacobian_pair(du, dv, a, b)).abs();
    }
    Ok(total)
}

/// `rho^ab` via the alternate form `1 / sqrt(det[1 + W^T W])` with
/// `W = J_cd J_ab^{-1}`. Only defined where `J_ab` is invertible; used as a
/// cross-check of [`euclidean_pair_densities`].
pub fn pair_density_via_w<T: Real>(
    p: &impl Parametrization<T>,
    s: T,
    t: T,
    a: usize,
    b: usize,
) -> Option<T> {
    let du = p.du(s, t);
    let dv = p.dv(s, t);
    let k = PAIRS.iter().position(|&pr| pr == (a.min(b), a.max(b)))?;
    let (c, d) = PAIRS[COMPLEMENT[k]];
    let jab = jacobian_pair(du, dv, a, b);
    let jcd = jacobian_pair(du, dv, c, d);
    let det_ab = det2(jab);
    if det_ab.abs() <= T::epsilon() * T::of(64.0) {
        return None;
    }
    // J_ab^{-1}
    let inv = [
        [jab[1][1] / det_ab, -jab[0][1] / det_ab],
        [-jab[1][0] / det_ab, jab[0][0] / det_ab],
    ];
    let w = [
        [
            jcd[0][0] * inv[0][0] + jcd[0][1] * inv[1][0],
            jcd[0][0] * inv[0][1] + jcd[0][1] * inv[1][1],
        ],
        [
            jcd[1][0] * inv[0][0] + jcd[1][1] * inv[1][0],
            jcd[1][0] * inv[0][1] + jcd[1][1] * inv[1][1],
        ],
    ];
    let one_plus = add_2x2([[T::one(), T::zero()], [T::zero(), T::one()]], gram_2x2(w));
    Some(T::one() / det2(one_plus).sqrt())
}

fn complex_det2<T: Real>(m: [[Complex<T>; 2]; 2]) -> Complex<T> {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

fn complex_gram_sum<T: Real>(
    x: [[Complex<T>; 2]; 2],
    y: [[Complex<T>; 2]; 2],
) -> [[Complex<T>; 2]; 2] {
    let mut out = [[Complex::new(T::zero(), T::zero()); 2]; 2];
    for r in 0..2 {
        for c in 0..2 {
            out[r][c] = x[0][r] * x[0][c] + x[1][r] * x[1][c] + y[0][r] * y[0][c] + y[1][r] * y[1][c];
        }
    }
    out
}

/// Jacobian minor with the time row multiplied by the imaginary unit.
fn imag_jacobian_pair<T: Real>(
    du: FourVector<T>,
    dv: FourVector<T>,
    a: usize,
    b: usize,
) -> [[Complex<T>; 2]; 2] {
    let lift = |row: usize, val: T| {
        if row == 0 {
            Complex::new(T::zero(), val)
        } else {
            Complex::new(val, T::zero())
        }
    };
    [
        [lift(a, du[a]), lift(a, dv[a])],
        [lift(b, du[b]), lift(b, dv[b])],
    ]
}

/// The imaginary-time density `sum_{a<b} rho'^ab det J'_ab` at `(s, t)`.
///
/// Square roots take the principal branch. For space-like charts the value
/// is real and positive; callers that require this should use
/// [`require_spacelike_density`].
pub fn invariant_area_density<T: Real>(
    p: &impl Parametrization<T>,
    s: T,
    t: T,
) -> Result<Complex<T>> {
    let du = p.du(s, t);
    let dv = p.dv(s, t);
    let floor = degenerate_floor(du, dv);
    let mut total = Complex::new(T::zero(), T::zero());
    for (k, &(a, b)) in PAIRS.iter().enumerate() {
        let (c, d) = PAIRS[COMPLEMENT[k]];
        let jab = imag_jacobian_pair(du, dv, a, b);
        let jcd = imag_jacobian_pair(du, dv, c, d);
        let den_sq = complex_det2(complex_gram_sum(jab, jcd));
        if den_sq.norm() <= floor {
            return Err(Error::DegeneratePoint);
        }
        let det_ab = complex_det2(jab);
        total = total + det_ab * det_ab / den_sq.sqrt();
    }
    Ok(total)
}

/// Variant of [`invariant_area_density`] that asserts the space-like case:
/// the value must be real positive (imaginary part at noise level).
pub fn require_spacelike_density<T: Real>(
    p: &impl Parametrization<T>,
    s: T,
    t: T,
) -> Result<T> {
    let du = p.du(s, t);
    let dv = p.dv(s, t);
    let scale = (du.euclidean_dot(du) * dv.euclidean_dot(dv)).max(T::one());
    let value = invariant_area_density(p, s, t)?;
    if value.re <= T::zero() || value.im.abs() > scale * T::of(1e3) * T::epsilon() {
        return Err(Error::NegativeDensity {
            value: value.re.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(value.re)
}

/// Minkowski Gram determinant of the two partials,
/// `(du.du)(dv.dv) - (du.dv)^2` with Minkowski products.
pub fn minkowski_gram_det<T: Real>(du: FourVector<T>, dv: FourVector<T>) -> T {
    du.minkowski_dot(du) * dv.minkowski_dot(dv) - du.minkowski_dot(dv) * du.minkowski_dot(dv)
}

/// Euclidean Gram determinant of the two partials.
pub fn euclidean_gram_det<T: Real>(du: FourVector<T>, dv: FourVector<T>) -> T {
    du.euclidean_dot(du) * dv.euclidean_dot(dv) - du.euclidean_dot(dv) * du.euclidean_dot(dv)
}

/// Euclidean area `int dρ` of the chart image over `I^2`.
///
/// Affine charts use the closed form (constant density); other charts are
/// integrated at `order` with a doubled-resolution self-check at `check_tol`.
pub fn surface_area<T: Real>(p: &impl Parametrization<T>, order: usize, check_tol: T) -> Result<T> {
    if p.constant_differential() {
        let half = T::of(0.5);
        return euclidean_area_density(p, half, half);
    }
    let v = quad::try_integrate_square_checked(order, check_tol, |s, t| {
        euclidean_area_density(p, s, t).map(|r| Complex::new(r, T::zero()))
    })?;
    Ok(v.re)
}

/// Lorentz-invariant area `int d|ρ'|` of a space-like chart.
pub fn invariant_area<T: Real>(
    p: &impl Parametrization<T>,
    order: usize,
    check_tol: T,
) -> Result<T> {
    if p.constant_differential() {
        let half = T::of(0.5);
        return require_spacelike_density(p, half, half);
    }
    let v = quad::try_integrate_square_checked(order, check_tol, |s, t| {
        invariant_area_density(p, s, t).map(|c| Complex::new(c.norm(), T::zero()))
    })?;
    Ok(v.re)
}

/// Signed invariant measure `int dρ'` (complex-valued in general).
pub fn invariant_area_signed<T: Real>(
    p: &impl Parametrization<T>,
    order: usize,
    check_tol: T,
) -> Result<Complex<T>> {
    if p.constant_differential() {
        let half = T::of(0.5);
        return invariant_area_density(p, half, half);
    }
    quad::try_integrate_square_checked(order, check_tol, |s, t| invariant_area_density(p, s, t))
}

/// The Euclidean area integrand recomputed after an orthogonal change of
/// basis of R^4; by basis independence it must equal the unrotated value.
pub fn basis_changed_density<T: Real>(
    p: &(impl Parametrization<T> + Copy),
    s: T,
    t: T,
    basis: &Mat4<T>,
) -> Result<T> {
    let dev = basis.orthogonality_deviation();
    if dev > T::TOL_COMPOUND {
        return Err(Error::NotOrthogonal {
            deviation: dev.to_f64().unwrap_or(f64::NAN),
        });
    }
    let rotated = crate::chart::MappedChart::linear(*basis, *p);
    euclidean_area_density(&rotated, s, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chart::{AffineChart, PowerWarp};
    use crate::lorentz::{Axis, LorentzMatrix};
    use crate::quad::DEFAULT_SQUARE_ORDER;

    fn unit_square_chart() -> AffineChart<f64> {
        AffineChart::new(
            FourVector::zero(),
            FourVector::new(0.0, 0.0, 1.0, 0.0),
            FourVector::new(0.0, 0.0, 0.0, 1.0),
        )
    }

    #[test]
    fn spatial_square_has_single_active_pair() {
        let rho = euclidean_pair_densities(&unit_square_chart(), 0.3, 0.7).unwrap();
        assert!((rho.get(2, 3) - 1.0).abs() < 1e-15);
        for &(a, b) in PAIRS.iter().filter(|&&p| p != (2, 3)) {
            assert_eq!(rho.get(a, b), 0.0);
        }
    }

    #[test]
    fn denominator_equals_euclidean_gram() {
        // the shared denominator of Eq-style pair densities equals the
        // Euclidean Gram determinant of the partials, for every pair
        let chart = AffineChart::<f64>::new(
            FourVector::new(0.2, 0.1, -0.4, 0.0),
            FourVector::new(0.3, 0.0, 1.1, 0.2),
            FourVector::new(-0.1, 0.8, 0.0, 0.9),
        );
        let (du, dv) = (chart.du(0.0, 0.0), chart.dv(0.0, 0.0));
        let gram = euclidean_gram_det(du, dv);
        for (k, &(a, b)) in PAIRS.iter().enumerate() {
            let (c, d) = PAIRS[COMPLEMENT[k]];
            let jab = jacobian_pair(du, dv, a, b);
            let jcd = jacobian_pair(du, dv, c, d);
            let den = det2(add_2x2(gram_2x2(jab), gram_2x2(jcd)));
            assert!((den - gram).abs() < 1e-12 * gram.abs().max(1.0));
        }
    }

    #[test]
    fn w_form_agrees_with_gram_form() {
        let chart = AffineChart::<f64>::new(
            FourVector::zero(),
            FourVector::new(0.3, 0.4, 1.1, 0.2),
            FourVector::new(-0.1, 0.8, 0.3, 0.9),
        );
        let rho = euclidean_pair_densities(&chart, 0.5, 0.5).unwrap();
        for &(a, b) in &PAIRS {
            if let Some(via_w) = pair_density_via_w(&chart, 0.5, 0.5, a, b) {
                assert!(
                    (via_w - rho.get(a, b)).abs() < 1e-12,
                    "pair ({a},{b}): {via_w} vs {}",
                    rho.get(a, b)
                );
            }
        }
    }

    #[test]
    fn boosted_square_density_is_gram_root() {
        // spans (-sinh 1, 0, cosh 1, 0) and (0, 0, 0, 1)
        let boost = LorentzMatrix::boost(Axis::X2, 1.0);
        let chart = AffineChart::new(
            FourVector::zero(),
            boost.apply(FourVector::new(0.0, 0.0, 1.0, 0.0)),
            boost.apply(FourVector::new(0.0, 0.0, 0.0, 1.0)),
        );
        let density = euclidean_area_density(&chart, 0.5, 0.5).unwrap();
        let expect = 2.0f64.cosh().sqrt();
        assert!((density - expect).abs() < 1e-12, "{density} vs {expect}");
    }

    #[test]
    fn invariant_density_is_one_on_spatial_square() {
        let v = invariant_area_density(&unit_square_chart(), 0.2, 0.9).unwrap();
        assert!((v.re - 1.0).abs() < 1e-15);
        assert!(v.im.abs() < 1e-15);
    }

    #[test]
    fn invariant_density_survives_boost() {
        let boost = LorentzMatrix::boost(Axis::X2, 1.0);
        let chart = crate::chart::MappedChart::linear(*boost.matrix(), unit_square_chart());
        let v = require_spacelike_density(&chart, 0.4, 0.6).unwrap();
        assert!((v - 1.0).abs() < 1e-13);
    }

    #[test]
    fn hyperbolic_chart_density_is_one() {
        // spans (sinh phi, 0, cosh phi, 0) and (0, 0, 0, 1): Minkowski Gram
        // is the identity for any phi
        let phi: f64 = 1.37;
        let chart = AffineChart::new(
            FourVector::zero(),
            FourVector::new(phi.sinh(), 0.0, phi.cosh(), 0.0),
            FourVector::new(0.0, 0.0, 0.0, 1.0),
        );
        let v = require_spacelike_density(&chart, 0.5, 0.5).unwrap();
        assert!((v - 1.0).abs() < 1e-13);
    }

    #[test]
    fn invariant_density_matches_minkowski_gram_identity() {
        let chart = AffineChart::<f64>::new(
            FourVector::new(0.1, 0.0, 0.2, -0.3),
            FourVector::new(0.4, 0.3, 1.2, 0.1),
            FourVector::new(0.1, -0.5, 0.2, 1.4),
        );
        let (du, dv) = (chart.du(0.5, 0.5), chart.dv(0.5, 0.5));
        let gram = minkowski_gram_det(du, dv);
        assert!(gram > 0.0, "chart must be space-like for this check");
        let v = require_spacelike_density(&chart, 0.5, 0.5).unwrap();
        assert!((v - gram.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn areas_closed_form_and_quadrature() {
        // 2 x 3 spatial rectangle: area 6, via affine closed form and via a
        // nonlinearly reparametrized quadrature path
        let chart = AffineChart::<f64>::new(
            FourVector::new(0.0, 0.0, 5.0, -1.0),
            FourVector::new(0.0, 0.0, 2.0, 0.0),
            FourVector::new(0.0, 0.0, 0.0, 3.0),
        );
        let a = surface_area(&chart, DEFAULT_SQUARE_ORDER, 1e-8).unwrap();
        assert!((a - 6.0).abs() < 1e-12);
        let warped = PowerWarp::new(chart, 2, 1);
        let aw = surface_area(&warped, DEFAULT_SQUARE_ORDER, 1e-8).unwrap();
        assert!((aw - 6.0).abs() < 1e-8);
    }

    #[test]
    fn boosted_area_loses_invariance_but_not_the_minkowski_measure() {
        let boost = LorentzMatrix::boost(Axis::X2, 1.0);
        let chart = crate::chart::MappedChart::linear(*boost.matrix(), unit_square_chart());
        let euclid = surface_area(&chart, DEFAULT_SQUARE_ORDER, 1e-8).unwrap();
        assert!((euclid - 2.0f64.cosh().sqrt()).abs() < 1e-12);
        assert!((euclid - 1.0).abs() > 0.5);
        let mink = invariant_area(&chart, DEFAULT_SQUARE_ORDER, 1e-8).unwrap();
        assert!((mink - 1.0).abs() < 1e-12);
        let signed = invariant_area_signed(&chart, DEFAULT_SQUARE_ORDER, 1e-8).unwrap();
        assert!((signed.re - 1.0).abs() < 1e-12 && signed.im.abs() < 1e-13);
    }

    #[test]
    fn reparametrized_invariant_area_agrees() {
        let boost = LorentzMatrix::boost(Axis::X3, -0.8);
        let base = crate::chart::MappedChart::linear(*boost.matrix(), unit_square_chart());
        let a0 = invariant_area(&base, DEFAULT_SQUARE_ORDER, 1e-8).unwrap();
        let a1 = invariant_area(&PowerWarp::new(base, 2, 1), DEFAULT_SQUARE_ORDER, 1e-8).unwrap();
        let a2 = invariant_area(&PowerWarp::new(base, 1, 3), DEFAULT_SQUARE_ORDER, 1e-8).unwrap();
        assert!((a0 - a1).abs() < 1e-8);
        assert!((a0 - a2).abs() < 1e-8);
    }

    #[test]
    fn basis_change_keeps_area_density() {
        let chart = AffineChart::<f64>::new(
            FourVector::zero(),
            FourVector::new(0.2, 0.1, 1.0, 0.0),
            FourVector::new(0.0, -0.3, 0.1, 1.2),
        );
        let id = Mat4::identity();
        let direct = euclidean_area_density(&chart, 0.3, 0.6).unwrap();
        let same = basis_changed_density(&chart, 0.3, 0.6, &id).unwrap();
        assert_eq!(direct, same);
        // a genuine rotation of the 1-2 plane extended to 4x4
        let rot = *LorentzMatrix::rotation(Axis::X3, 0.77).matrix();
        let rotated = basis_changed_density(&chart, 0.3, 0.6, &rot).unwrap();
        assert!((rotated - direct).abs() < 1e-12);
    }

    #[test]
    fn rejects_degenerate_chart_point() {
        let chart = AffineChart::new(
            FourVector::zero(),
            FourVector::new(0.0, 0.0, 1.0, 0.0),
            FourVector::new(0.0, 0.0, 2.0, 0.0),
        );
        assert!(matches!(
            euclidean_area_density(&chart, 0.5, 0.5),
            Err(Error::DegeneratePoint)
        ));
        assert!(matches!(
            invariant_area_density(&chart, 0.5, 0.5),
            Err(Error::DegeneratePoint)
        ));
    }

    #[test]
    fn rejects_non_orthogonal_basis() {
        let chart = unit_square_chart();
        let mut m = Mat4::<f64>::identity();
        m[(1, 2)] = 0.4;
        assert!(matches!(
            basis_changed_density(&chart, 0.5, 0.5, &m),
            Err(Error::NotOrthogonal { .. })
        ));
    }
}

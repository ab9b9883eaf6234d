//! Gauss-Legendre quadrature on the unit interval, square and triangle.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Default tensor order for surface integrals over the unit square.
pub const DEFAULT_SQUARE_ORDER: usize = 32;

/// Default order for per-triangle quadrature in polygonal integrals.
pub const DEFAULT_TRIANGLE_ORDER: usize = 12;

/// Nodes and weights of the `n`-point Gauss-Legendre rule on `[0, 1]`.
///
/// Computed by Newton iteration on the Legendre polynomial; the standard
/// `[-1, 1]` rule is then mapped affinely.
pub fn gauss_legendre_unit<T: Real>(n: usize) -> (Vec<T>, Vec<T>) {
    assert!(n >= 1, "quadrature order must be positive");
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    let nf = T::of(n as f64);
    for k in 0..n {
        // Chebyshev-like initial guess
        let mut x = (T::PI() * (T::of(k as f64) + T::of(0.75)) / (nf + T::of(0.5))).cos();
        let mut dp = T::one();
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let step = p / d;
            x = x - step;
            if step.abs() <= T::epsilon() * T::of(4.0) {
                break;
            }
        }
        let w = T::of(2.0) / ((T::one() - x * x) * dp * dp);
        // map [-1, 1] -> [0, 1]
        nodes.push((x + T::one()) / T::of(2.0));
        weights.push(w / T::of(2.0));
    }
    nodes.reverse();
    weights.reverse();
    (nodes, weights)
}

/// Legendre polynomial `P_n(x)` and its derivative via the three-term
/// recurrence.
fn legendre_with_derivative<T: Real>(n: usize, x: T) -> (T, T) {
    let mut p0 = T::one();
    let mut p1 = x;
    if n == 0 {
        return (p0, T::zero());
    }
    for k in 2..=n {
        let kf = T::of(k as f64);
        let p2 = ((T::of(2.0) * kf - T::one()) * x * p1 - (kf - T::one()) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = T::of(n as f64) * (x * p1 - p0) / (x * x - T::one());
    (p1, d)
}

/// Tensor-product integral of `f` over the unit square `I^2`.
///
/// The summation order is fixed (row by row), so results are deterministic.
pub fn integrate_square<T: Real>(
    n: usize,
    mut f: impl FnMut(T, T) -> Complex<T>,
) -> Complex<T> {
    let (nodes, weights) = gauss_legendre_unit::<T>(n);
    let mut total = Complex::new(T::zero(), T::zero());
    for (s, ws) in nodes.iter().zip(weights.iter()) {
        let mut row = Complex::new(T::zero(), T::zero());
        for (t, wt) in nodes.iter().zip(weights.iter()) {
            row = row + f(*s, *t) * *wt;
        }
        total = total + row * *ws;
    }
    total
}

/// Fallible variant for integrands that can reject a chart point.
pub fn try_integrate_square<T: Real>(
    n: usize,
    mut f: impl FnMut(T, T) -> Result<Complex<T>>,
) -> Result<Complex<T>> {
    let (nodes, weights) = gauss_legendre_unit::<T>(n);
    let mut total = Complex::new(T::zero(), T::zero());
    for (s, ws) in nodes.iter().zip(weights.iter()) {
        let mut row = Complex::new(T::zero(), T::zero());
        for (t, wt) in nodes.iter().zip(weights.iter()) {
            row = row + f(*s, *t)? * *wt;
        }
        total = total + row * *ws;
    }
    Ok(total)
}

/// Integrates at order `n` and `2n` and rejects if the two disagree beyond
/// `tol` (absolute). Returns the doubled-resolution value.
pub fn try_integrate_square_checked<T: Real>(
    n: usize,
    tol: T,
    mut f: impl FnMut(T, T) -> Result<Complex<T>>,
) -> Result<Complex<T>> {
    let coarse = try_integrate_square(n, &mut f)?;
    let fine = try_integrate_square(2 * n, &mut f)?;
    let delta = (fine - coarse).norm();
    if delta > tol {
        return Err(Error::QuadratureCheck {
            delta: delta.to_f64().unwrap_or(f64::NAN),
            tolerance: tol.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(fine)
}

/// Integral of `f` over a 2D triangle, `f` taking barycentric-free planar
/// coordinates. Uses the Duffy-style map of the unit square onto the
/// triangle; exact area weighting is included.
pub fn integrate_triangle<T: Real>(
    n: usize,
    tri: &[[T; 2]; 3],
    mut f: impl FnMut([T; 2]) -> Complex<T>,
) -> Complex<T> {
    let (nodes, weights) = gauss_legendre_unit::<T>(n);
    let [a, b, c] = *tri;
    let cross = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
    let mut total = Complex::new(T::zero(), T::zero());
    for (u, wu) in nodes.iter().zip(weights.iter()) {
        let mut row = Complex::new(T::zero(), T::zero());
        for (v, wv) in nodes.iter().zip(weights.iter()) {
            // p = a + u (b - a) + u v (c - b); Jacobian = u * cross
            let px = a[0] + (b[0] - a[0]) * *u + (c[0] - b[0]) * *u * *v;
            let py = a[1] + (b[1] - a[1]) * *u + (c[1] - b[1]) * *u * *v;
            row = row + f([px, py]) * (*wv * *u);
        }
        total = total + row * *wu;
    }
    total * Complex::new(cross.abs(), T::zero())
}

/// Fallible variant of [`integrate_triangle`].
pub fn try_integrate_triangle<T: Real>(
    n: usize,
    tri: &[[T; 2]; 3],
    mut f: impl FnMut([T; 2]) -> Result<Complex<T>>,
) -> Result<Complex<T>> {
    let (nodes, weights) = gauss_legendre_unit::<T>(n);
    let [a, b, c] = *tri;
    let cross = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
    let mut total = Complex::new(T::zero(), T::zero());
    for (u, wu) in nodes.iter().zip(weights.iter()) {
        let mut row = Complex::new(T::zero(), T::zero());
        for (v, wv) in nodes.iter().zip(weights.iter()) {
            let px = a[0] + (b[0] - a[0]) * *u + (c[0] - b[0]) * *u * *v;
            let py = a[1] + (b[1] - a[1]) * *u + (c[1] - b[1]) * *u * *v;
            row = row + f([px, py])? * (*wv * *u);
        }
        total = total + row * *wu;
    }
    Ok(total * Complex::new(cross.abs(), T::zero()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn re(v: f64) -> Complex<f64> {
        Complex::new(v, 0.0)
    }

    #[test]
    fn five_point_rule_matches_reference() {
        // published abscissae/weights of the 5-point rule on [-1, 1]
        let (nodes, weights) = gauss_legendre_unit::<f64>(5);
        let expect_x = [-0.906179845938664, -0.538469310105683, 0.0];
        let expect_w = [0.236926885056189, 0.478628670499366, 0.568888888888889];
        for k in 0..3 {
            let x = 2.0 * nodes[k] - 1.0;
            assert!((x - expect_x[k]).abs() < 1e-13, "node {k}");
            assert!((2.0 * weights[k] - expect_w[k]).abs() < 1e-13, "weight {k}");
        }
    }

    #[test]
    fn exact_for_polynomials() {
        // n-point rule is exact through degree 2n-1
        let val = integrate_square(4, |s: f64, t: f64| re(s.powi(5) * t.powi(3)));
        assert!((val.re - (1.0 / 6.0) * (1.0 / 4.0)).abs() < 1e-15);
    }

    #[test]
    fn smooth_integrand_converges() {
        let exact = (1.0f64.exp() - 1.0) * 1.0f64.sin();
        let val = integrate_square(16, |s: f64, t: f64| re(s.exp() * t.cos()));
        assert!((val.re - exact).abs() < 1e-14);
    }

    #[test]
    fn triangle_area_and_linear_moment() {
        let tri = [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]];
        let area = integrate_triangle(8, &tri, |_| re(1.0));
        assert!((area.re - 0.5).abs() < 1e-14);
        // integral of x over the reference triangle is 1/6
        let mx = integrate_triangle(8, &tri, |p| re(p[0]));
        assert!((mx.re - 1.0 / 6.0).abs() < 1e-14);
    }

    #[test]
    fn self_check_flags_disagreement() {
        // integrand with a kink: low-order rules disagree
        let res = try_integrate_square_checked(2, 1e-14, |s: f64, t: f64| {
            Ok(re((s - 0.31).abs() * (t - 0.77).abs()))
        });
        assert!(matches!(res, Err(Error::QuadratureCheck { .. })));
    }
}

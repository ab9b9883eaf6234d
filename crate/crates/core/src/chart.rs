//! Parametrizations of planar surfaces: maps `I^2 -> R^4` with
//! analytically supplied partial derivatives.

use crate::mat::Mat4;
use crate::scalar::Real;
use crate::vec4::FourVector;

/// A smooth map from the unit square into R^4 together with its partials.
pub trait Parametrization<T: Real> {
    fn point(&self, s: T, t: T) -> FourVector<T>;
    /// Partial derivative with respect to the first parameter.
    fn du(&self, s: T, t: T) -> FourVector<T>;
    /// Partial derivative with respect to the second parameter.
    fn dv(&self, s: T, t: T) -> FourVector<T>;

    /// True when both partials are constant over `I^2`, enabling
    /// closed-form integration.
    fn constant_differential(&self) -> bool {
        false
    }
}

/// Affine chart `sigma(s, t) = origin + s * span_u + t * span_v`.
#[derive(Clone, Copy, Debug)]
pub struct AffineChart<T> {
    pub origin: FourVector<T>,
    pub span_u: FourVector<T>,
    pub span_v: FourVector<T>,
}

impl<T: Real> AffineChart<T> {
    pub fn new(origin: FourVector<T>, span_u: FourVector<T>, span_v: FourVector<T>) -> Self {
        AffineChart {
            origin,
            span_u,
            span_v,
        }
    }
}

impl<T: Real> Parametrization<T> for AffineChart<T> {
    fn point(&self, s: T, t: T) -> FourVector<T> {
        self.origin + self.span_u.scaled(s) + self.span_v.scaled(t)
    }

    fn du(&self, _s: T, _t: T) -> FourVector<T> {
        self.span_u
    }

    fn dv(&self, _s: T, _t: T) -> FourVector<T> {
        self.span_v
    }

    fn constant_differential(&self) -> bool {
        true
    }
}

/// Monomial reparametrization `sigma(s^p, t^q)` of an inner chart; `p` and
/// `q` are positive integers so the chain-rule partials stay analytic.
#[derive(Clone, Copy, Debug)]
pub struct PowerWarp<P> {
    pub inner: P,
    pub pow_s: u32,
    pub pow_t: u32,
}

impl<P> PowerWarp<P> {
    pub fn new(inner: P, pow_s: u32, pow_t: u32) -> Self {
        assert!(pow_s >= 1 && pow_t >= 1, "warp exponents must be positive");
        PowerWarp {
            inner,
            pow_s,
            pow_t,
        }
    }
}

impl<T: Real, P: Parametrization<T>> Parametrization<T> for PowerWarp<P> {
    fn point(&self, s: T, t: T) -> FourVector<T> {
        self.inner
            .point(s.powi(self.pow_s as i32), t.powi(self.pow_t as i32))
    }

    fn du(&self, s: T, t: T) -> FourVector<T> {
        let ws = s.powi(self.pow_s as i32);
        let wt = t.powi(self.pow_t as i32);
        self.inner
            .du(ws, wt)
            .scaled(T::of(self.pow_s as f64) * s.powi(self.pow_s as i32 - 1))
    }

    fn dv(&self, s: T, t: T) -> FourVector<T> {
        let ws = s.powi(self.pow_s as i32);
        let wt = t.powi(self.pow_t as i32);
        self.inner
            .dv(ws, wt)
            .scaled(T::of(self.pow_t as f64) * t.powi(self.pow_t as i32 - 1))
    }
}

/// Image of an inner chart under a linear map plus shift,
/// `sigma(s, t) = M sigma_0(s, t) + shift`. Used for Lorentz images and
/// orthogonal changes of basis.
#[derive(Clone, Copy, Debug)]
pub struct MappedChart<T, P> {
    pub matrix: Mat4<T>,
    pub shift: FourVector<T>,
    pub inner: P,
}

impl<T: Real, P> MappedChart<T, P> {
    pub fn new(matrix: Mat4<T>, shift: FourVector<T>, inner: P) -> Self {
        MappedChart {
            matrix,
            shift,
            inner,
        }
    }

    pub fn linear(matrix: Mat4<T>, inner: P) -> Self {
        Self::new(matrix, FourVector::zero(), inner)
    }
}

impl<T: Real, P: Parametrization<T>> Parametrization<T> for MappedChart<T, P> {
    fn point(&self, s: T, t: T) -> FourVector<T> {
        self.matrix.apply(self.inner.point(s, t)) + self.shift
    }

    fn du(&self, s: T, t: T) -> FourVector<T> {
        self.matrix.apply(self.inner.du(s, t))
    }

    fn dv(&self, s: T, t: T) -> FourVector<T> {
        self.matrix.apply(self.inner.dv(s, t))
    }

    fn constant_differential(&self) -> bool {
        self.inner.constant_differential()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn warp_partials_match_finite_differences() {
        let chart = AffineChart::new(
            FourVector::new(0.1, -0.2, 0.3, 0.4),
            FourVector::new(0.0, 0.0, 1.0, 0.5),
            FourVector::new(0.0, 0.2, 0.0, 1.0),
        );
        let warped = PowerWarp::new(chart, 2, 3);
        let (s, t) = (0.63, 0.41);
        let h = 1e-6;
        let fd_u = (warped.point(s + h, t) - warped.point(s - h, t)).scaled(0.5 / h);
        let fd_v = (warped.point(s, t + h) - warped.point(s, t - h)).scaled(0.5 / h);
        assert!(warped.du(s, t).max_abs_diff(fd_u) < 1e-8);
        assert!(warped.dv(s, t).max_abs_diff(fd_v) < 1e-8);
    }
}

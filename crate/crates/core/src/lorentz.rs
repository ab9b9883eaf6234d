//! Restricted Lorentz matrices: metric-preserving 4x4 maps with
//! `det = +1` and `m00 >= 1`, plus the standard boosts and rotations.

use crate::error::{Error, Result};
use crate::mat::Mat4;
use crate::scalar::Real;
use crate::vec4::FourVector;

/// One of the three spatial axes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    X1,
    X2,
    X3,
}

impl Axis {
    /// Coordinate index of the axis (1, 2 or 3).
    pub fn index(self) -> usize {
        match self {
            Axis::X1 => 1,
            Axis::X2 => 2,
            Axis::X3 => 3,
        }
    }

    /// The other two spatial axes, in cyclic order.
    pub fn complement(self) -> (usize, usize) {
        match self {
            Axis::X1 => (2, 3),
            Axis::X2 => (3, 1),
            Axis::X3 => (1, 2),
        }
    }

    pub fn from_index(i: usize) -> Option<Axis> {
        match i {
            1 => Some(Axis::X1),
            2 => Some(Axis::X2),
            3 => Some(Axis::X3),
            _ => None,
        }
    }
}

/// A restricted Lorentz transformation.
///
/// Validated on construction from a raw matrix: `m^T eta m = eta`,
/// `det m = +1` and `m00 >= 1` within [`Real::TOL_IDENTITY`]. The named
/// constructors ([`boost`](Self::boost), [`rotation`](Self::rotation),
/// products, inverses) build matrices that satisfy the invariants by
/// construction and skip the runtime check.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LorentzMatrix<T> {
    m: Mat4<T>,
}

impl<T: Real> LorentzMatrix<T> {
    /// Validates and wraps a raw matrix.
    pub fn new(m: Mat4<T>) -> Result<Self> {
        Self::with_tolerance(m, T::TOL_IDENTITY)
    }

    /// Validates with an explicit tolerance.
    pub fn with_tolerance(m: Mat4<T>, tol: T) -> Result<Self> {
        let eta = Mat4::minkowski_metric();
        let dev = (m.transpose() * eta * m).max_abs_diff(&eta);
        if dev > tol {
            return Err(Error::NotLorentz {
                deviation: dev.to_f64().unwrap_or(f64::NAN),
            });
        }
        let det_dev = (m.det() - T::one()).abs();
        if det_dev > tol {
            return Err(Error::BadDeterminant {
                deviation: det_dev.to_f64().unwrap_or(f64::NAN),
            });
        }
        if m[(0, 0)] < T::one() - tol {
            return Err(Error::NotRestricted {
                m00: m[(0, 0)].to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(LorentzMatrix { m })
    }

    pub fn identity() -> Self {
        LorentzMatrix {
            m: Mat4::identity(),
        }
    }

    /// Boost of rapidity `zeta` along a spatial axis: `cosh zeta` on the
    /// diagonal time/axis block and `-sinh zeta` off-diagonal.
    pub fn boost(axis: Axis, zeta: T) -> Self {
        let k = axis.index();
        let mut m = Mat4::identity();
        m[(0, 0)] = zeta.cosh();
        m[(k, k)] = zeta.cosh();
        m[(0, k)] = -zeta.sinh();
        m[(k, 0)] = -zeta.sinh();
        LorentzMatrix { m }
    }

    /// Spatial rotation by `theta` about a spatial axis; the time row and
    /// column are untouched. The rotated pair follows the cyclic order, so
    /// rotation about `x3` sends `x1` toward `x2`.
    pub fn rotation(axis: Axis, theta: T) -> Self {
        let (a, b) = axis.complement();
        let mut m = Mat4::identity();
        m[(a, a)] = theta.cos();
        m[(b, b)] = theta.cos();
        m[(a, b)] = -theta.sin();
        m[(b, a)] = theta.sin();
        LorentzMatrix { m }
    }

    pub fn matrix(&self) -> &Mat4<T> {
        &self.m
    }

    pub fn apply(&self, v: FourVector<T>) -> FourVector<T> {
        self.m.apply(v)
    }

    /// Matrix product; both factors preserve the metric, so the product does.
    pub fn compose(&self, other: &Self) -> Self {
        LorentzMatrix { m: self.m * other.m }
    }

    /// Inverse via the metric: `m^{-1} = eta m^T eta` (exact, no solving).
    pub fn inverse(&self) -> Self {
        let eta = Mat4::minkowski_metric();
        LorentzMatrix {
            m: eta * self.m.transpose() * eta,
        }
    }

    /// `max |m^T eta m - eta|`, the metric-preservation defect.
    pub fn metric_deviation(&self) -> T {
        let eta = Mat4::minkowski_metric();
        (self.m.transpose() * eta * self.m).max_abs_diff(&eta)
    }
}

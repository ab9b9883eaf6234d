//! Dense 4x4 real matrices, just enough linear algebra for this crate.

use std::ops::{Index, IndexMut, Mul};

use crate::scalar::Real;
use crate::vec4::FourVector;

/// Row-major 4x4 matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat4<T>(pub [[T; 4]; 4]);

impl<T: Real> Mat4<T> {
    pub fn zero() -> Self {
        Mat4([[T::zero(); 4]; 4])
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for a in 0..4 {
            m[(a, a)] = T::one();
        }
        m
    }

    /// The Minkowski metric `eta = diag(-1, 1, 1, 1)`.
    pub fn minkowski_metric() -> Self {
        let mut m = Self::identity();
        m[(0, 0)] = -T::one();
        m
    }

    pub fn from_fn(f: impl Fn(usize, usize) -> T) -> Self {
        let mut m = Self::zero();
        for r in 0..4 {
            for c in 0..4 {
                m[(r, c)] = f(r, c);
            }
        }
        m
    }

    /// Builds the matrix whose columns are the given vectors.
    pub fn from_columns(cols: [FourVector<T>; 4]) -> Self {
        Self::from_fn(|r, c| cols[c][r])
    }

    pub fn column(&self, c: usize) -> FourVector<T> {
        FourVector::new(self[(0, c)], self[(1, c)], self[(2, c)], self[(3, c)])
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|r, c| self[(c, r)])
    }

    pub fn apply(&self, v: FourVector<T>) -> FourVector<T> {
        let mut out = FourVector::zero();
        for r in 0..4 {
            let mut acc = T::zero();
            for c in 0..4 {
                acc = acc + self[(r, c)] * v[c];
            }
            out[r] = acc;
        }
        out
    }

    /// Determinant by expansion in 2x2 minors of the first two rows.
    pub fn det(&self) -> T {
        let m = &self.0;
        let minor2 = |c0: usize, c1: usize| m[0][c0] * m[1][c1] - m[0][c1] * m[1][c0];
        let lower2 = |c0: usize, c1: usize| m[2][c0] * m[3][c1] - m[2][c1] * m[3][c0];
        minor2(0, 1) * lower2(2, 3) - minor2(0, 2) * lower2(1, 3) + minor2(0, 3) * lower2(1, 2)
            + minor2(1, 2) * lower2(0, 3)
            - minor2(1, 3) * lower2(0, 2)
            + minor2(2, 3) * lower2(0, 1)
    }

    /// Largest absolute entry.
    pub fn inf_norm(&self) -> T {
        self.0
            .iter()
            .flatten()
            .map(|e| e.abs())
            .fold(T::zero(), T::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        let mut worst = T::zero();
        for r in 0..4 {
            for c in 0..4 {
                worst = worst.max((self[(r, c)] - other[(r, c)]).abs());
            }
        }
        worst
    }

    /// Deviation from orthogonality, `max |A^T A - 1|`.
    pub fn orthogonality_deviation(&self) -> T {
        (self.transpose() * *self).max_abs_diff(&Self::identity())
    }
}

impl<T: Real> Index<(usize, usize)> for Mat4<T> {
    type Output = T;
    fn index(&self, (r, c): (usize, usize)) -> &T {
        &self.0[r][c]
    }
}

impl<T: Real> IndexMut<(usize, usize)> for Mat4<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        &mut self.0[r][c]
    }
}

impl<T: Real> Mul for Mat4<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self::from_fn(|r, c| {
            let mut acc = T::zero();
            for k in 0..4 {
                acc = acc + self[(r, k)] * o[(k, c)];
            }
            acc
        })
    }
}

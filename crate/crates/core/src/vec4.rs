//! Four-vectors in R^4 with both the Minkowski and the Euclidean product.
//!
//! The Minkowski metric follows the sign convention
//! `x . y = -x0 y0 + x1 y1 + x2 y2 + x3 y3` (time component negative).

use std::ops::{Add, Index, Mul, Neg, Sub};

use crate::scalar::Real;

/// A point or direction in R^4, component 0 being the time coordinate (c = 1).
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct FourVector<T> {
    pub x0: T,
    pub x1: T,
    pub x2: T,
    pub x3: T,
}

impl<T: Real> FourVector<T> {
    pub fn new(x0: T, x1: T, x2: T, x3: T) -> Self {
        FourVector { x0, x1, x2, x3 }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero(), T::zero())
    }

    /// Standard basis vector `e_a`, `a` in `0..4`.
    pub fn basis(a: usize) -> Self {
        let mut v = Self::zero();
        v[a] = T::one();
        v
    }

    pub fn from_array(c: [T; 4]) -> Self {
        Self::new(c[0], c[1], c[2], c[3])
    }

    pub fn to_array(self) -> [T; 4] {
        [self.x0, self.x1, self.x2, self.x3]
    }

    /// Minkowski product `-x0 y0 + sum_i xi yi`.
    pub fn minkowski_dot(self, other: Self) -> T {
        -self.x0 * other.x0 + self.x1 * other.x1 + self.x2 * other.x2 + self.x3 * other.x3
    }

    /// Euclidean product `sum_a xa ya`.
    pub fn euclidean_dot(self, other: Self) -> T {
        self.x0 * other.x0 + self.x1 * other.x1 + self.x2 * other.x2 + self.x3 * other.x3
    }

    pub fn euclidean_norm(self) -> T {
        self.euclidean_dot(self).sqrt()
    }

    pub fn scaled(self, s: T) -> Self {
        Self::new(self.x0 * s, self.x1 * s, self.x2 * s, self.x3 * s)
    }

    pub fn is_finite(self) -> bool {
        self.to_array().iter().all(|c| c.is_finite())
    }

    /// Largest absolute component difference.
    pub fn max_abs_diff(self, other: Self) -> T {
        let d = self - other;
        d.to_array()
            .iter()
            .map(|c| c.abs())
            .fold(T::zero(), T::max)
    }
}

impl<T: Real> Index<usize> for FourVector<T> {
    type Output = T;
    fn index(&self, a: usize) -> &T {
        match a {
            0 => &self.x0,
            1 => &self.x1,
            2 => &self.x2,
            3 => &self.x3,
            _ => panic!("four-vector index {a} out of range"),
        }
    }
}

impl<T: Real> std::ops::IndexMut<usize> for FourVector<T> {
    fn index_mut(&mut self, a: usize) -> &mut T {
        match a {
            0 => &mut self.x0,
            1 => &mut self.x1,
            2 => &mut self.x2,
            3 => &mut self.x3,
            _ => panic!("four-vector index {a} out of range"),
        }
    }
}

impl<T: Real> Add for FourVector<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(
            self.x0 + o.x0,
            self.x1 + o.x1,
            self.x2 + o.x2,
            self.x3 + o.x3,
        )
    }
}

impl<T: Real> Sub for FourVector<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(
            self.x0 - o.x0,
            self.x1 - o.x1,
            self.x2 - o.x2,
            self.x3 - o.x3,
        )
    }
}

impl<T: Real> Neg for FourVector<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x0, -self.x1, -self.x2, -self.x3)
    }
}

impl<T: Real> Mul<T> for FourVector<T> {
    type Output = Self;
    fn mul(self, s: T) -> Self {
        self.scaled(s)
    }
}

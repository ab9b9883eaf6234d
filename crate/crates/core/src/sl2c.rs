//! SL(2,C) and its double cover of the restricted Lorentz group.
//!
//! The covering map sends `x` to the Hermitian matrix
//! `X(x) = x0*1 + x1*s1 + x2*s2 + x3*s3` (Pauli matrices `s_i`), conjugates
//! it by `A`, and reads the image vector back off `A X A^dagger`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::lorentz::{Axis, LorentzMatrix};
use crate::mat::Mat4;
use crate::scalar::Real;
use crate::vec4::FourVector;

/// A 2x2 complex matrix of determinant one.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SL2C<T> {
    pub a: Complex<T>,
    pub b: Complex<T>,
    pub c: Complex<T>,
    pub d: Complex<T>,
}

impl<T: Real> SL2C<T> {
    /// Validates `ad - bc = 1` within [`Real::TOL_IDENTITY`].
    pub fn new(a: Complex<T>, b: Complex<T>, c: Complex<T>, d: Complex<T>) -> Result<Self> {
        let m = SL2C { a, b, c, d };
        let dev = (m.det() - Complex::new(T::one(), T::zero())).norm();
        if dev > T::TOL_IDENTITY {
            return Err(Error::BadDeterminant {
                deviation: dev.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(m)
    }

    pub fn identity() -> Self {
        let one = Complex::new(T::one(), T::zero());
        let zero = Complex::new(T::zero(), T::zero());
        SL2C {
            a: one,
            b: zero,
            c: zero,
            d: one,
        }
    }

    pub fn det(&self) -> Complex<T> {
        self.a * self.d - self.b * self.c
    }

    /// Exact inverse `[[d, -b], [-c, a]]` (determinant one).
    pub fn inverse(&self) -> Self {
        SL2C {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    pub fn neg(&self) -> Self {
        SL2C {
            a: -self.a,
            b: -self.b,
            c: -self.c,
            d: -self.d,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        SL2C {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    /// SL(2,C) element covering `LorentzMatrix::boost(axis, zeta)`:
    /// `cosh(zeta/2) 1 - sinh(zeta/2) sigma_axis`.
    pub fn boost(axis: Axis, zeta: T) -> Self {
        let half = zeta / T::of(2.0);
        let ch = Complex::new(half.cosh(), T::zero());
        let sh = half.sinh();
        let mut m = SL2C::identity();
        m.scale_mut(ch);
        m.sub_sigma(axis, Complex::new(sh, T::zero()));
        m
    }

    /// SL(2,C) element covering `LorentzMatrix::rotation(axis, theta)`:
    /// `cos(theta/2) 1 - i sin(theta/2) sigma_axis`.
    pub fn rotation(axis: Axis, theta: T) -> Self {
        let half = theta / T::of(2.0);
        let mut m = SL2C::identity();
        m.scale_mut(Complex::new(half.cos(), T::zero()));
        m.sub_sigma(axis, Complex::new(T::zero(), half.sin()));
        m
    }

    fn scale_mut(&mut self, s: Complex<T>) {
        self.a = self.a * s;
        self.b = self.b * s;
        self.c = self.c * s;
        self.d = self.d * s;
    }

    /// Subtracts `s * sigma_axis` in place.
    fn sub_sigma(&mut self, axis: Axis, s: Complex<T>) {
        let i = Complex::new(T::zero(), T::one());
        match axis {
            Axis::X1 => {
                self.b = self.b - s;
                self.c = self.c - s;
            }
            Axis::X2 => {
                // sigma_2 = [[0, -i], [i, 0]]
                self.b = self.b + i * s;
                self.c = self.c - i * s;
            }
            Axis::X3 => {
                self.a = self.a - s;
                self.d = self.d + s;
            }
        }
    }

    /// Image of `x` under the conjugation `A X(x) A^dagger`.
    fn conjugate_vector(&self, x: FourVector<T>) -> FourVector<T> {
        // X(x) = [[x0 + x3, x1 - i x2], [x1 + i x2, x0 - x3]]
        let x00 = Complex::new(x.x0 + x.x3, T::zero());
        let x01 = Complex::new(x.x1, -x.x2);
        let x10 = Complex::new(x.x1, x.x2);
        let x11 = Complex::new(x.x0 - x.x3, T::zero());

        // B = A X A^dagger
        let (a, b, c, d) = (self.a, self.b, self.c, self.d);
        let y00 = a * x00 + b * x10;
        let y01 = a * x01 + b * x11;
        let y10 = c * x00 + d * x10;
        let y11 = c * x01 + d * x11;
        let b00 = y00 * a.conj() + y01 * b.conj();
        let b10 = y10 * a.conj() + y11 * b.conj();
        let b11 = y10 * c.conj() + y11 * d.conj();

        let half = T::of(0.5);
        FourVector::new(
            (b00.re + b11.re) * half,
            b10.re,
            b10.im,
            (b00.re - b11.re) * half,
        )
    }

    /// The covering map `Y`: the restricted Lorentz matrix whose columns are
    /// the conjugation images of the basis vectors.
    ///
    /// Rejects elements whose determinant strays beyond [`Real::TOL_DET`],
    /// and validates the resulting matrix.
    pub fn covering_matrix(&self) -> Result<LorentzMatrix<T>> {
        let det_dev = (self.det() - Complex::new(T::one(), T::zero())).norm();
        if det_dev > T::TOL_DET {
            return Err(Error::BadDeterminant {
                deviation: det_dev.to_f64().unwrap_or(f64::NAN),
            });
        }
        let cols = [
            self.conjugate_vector(FourVector::basis(0)),
            self.conjugate_vector(FourVector::basis(1)),
            self.conjugate_vector(FourVector::basis(2)),
            self.conjugate_vector(FourVector::basis(3)),
        ];
        LorentzMatrix::with_tolerance(Mat4::from_columns(cols), T::TOL_COMPOUND)
    }
}

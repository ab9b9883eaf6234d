//! Framed space-like surfaces in R^4 and the unitary action of the
//! inhomogeneous SL(2,C) on them.
//!
//! The crate builds, bottom up:
//!
//! * four-vector algebra with both the Minkowski and Euclidean products,
//!   restricted Lorentz matrices, SL(2,C) and its covering map
//!   ([`vec4`], [`mat`], [`lorentz`], [`sl2c`], [`group`]);
//! * planar rectangular space-like surfaces, frames normal to them, and
//!   coplanar intersection geometry ([`surface`], [`region`]);
//! * Euclidean and Lorentz-invariant surface measures with closed-form and
//!   quadrature evaluation ([`chart`], [`density`], [`quad`]);
//! * a small expression language for complex-valued fields on R^4
//!   ([`field`]);
//! * state vectors (surface, field section, frame) with the two candidate
//!   inner products ([`hilbert`]) and the unitary representation acting on
//!   them ([`rep`]);
//! * seeded random generators for all of the above ([`sample`]).
//!
//! Everything is generic over the scalar type through [`Real`]; the
//! `*64` aliases at the crate root fix `f64`, which is the precision all
//! documented tolerances refer to.

pub mod chart;
pub mod density;
pub mod error;
pub mod field;
pub mod group;
pub mod hilbert;
pub mod lorentz;
pub mod mat;
pub mod quad;
pub mod region;
pub mod rep;
pub mod sample;
pub mod scalar;
pub mod sl2c;
pub mod surface;
pub mod vec4;

pub use error::{Error, ParseError, Result};
pub use scalar::Real;

pub use num_complex::Complex;

/// `f64` concrete aliases for the main public types.
pub type FourVector64 = vec4::FourVector<f64>;
pub type Mat464 = mat::Mat4<f64>;
pub type LorentzMatrix64 = lorentz::LorentzMatrix<f64>;
pub type SL2C64 = sl2c::SL2C<f64>;
pub type InhomogeneousElement64 = group::InhomogeneousElement<f64>;
pub type RectSurface64 = surface::RectSurface<f64>;
pub type Frame64 = surface::Frame<f64>;
pub type FramedSurface64 = surface::FramedSurface<f64>;
pub type SurfaceCollection64 = surface::SurfaceCollection<f64>;
pub type ConvexRegion64 = region::ConvexRegion<f64>;
pub type FieldExpr64 = field::FieldExpr<f64>;
pub type FieldSection64 = field::FieldSection<f64>;
pub type StateVector64 = hilbert::StateVector<f64>;
pub type RepConfig64 = rep::RepConfig<f64>;
pub type Complex64 = num_complex::Complex<f64>;

/// `f32` aliases for the algebraic layer.
pub type FourVector32 = vec4::FourVector<f32>;
pub type LorentzMatrix32 = lorentz::LorentzMatrix<f32>;
pub type SL2C32 = sl2c::SL2C<f32>;
pub type InhomogeneousElement32 = group::InhomogeneousElement<f32>;

//! Scalar abstraction: the whole crate is generic over the floating-point
//! type through [`Real`], with `f32` and `f64` implementations.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating-point scalar used throughout the crate.
///
/// Besides the numeric traits this carries the default tolerances for the
/// various validation and comparison steps. The `f64` values are the
/// reference tolerances; the `f32` ones are scaled up so that the same
/// algorithms stay usable at single precision.
pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Closed-form identities (metric preservation, determinants).
    const TOL_IDENTITY: Self;
    /// Identities compounded through the covering map or matrix products.
    const TOL_COMPOUND: Self;
    /// Determinant check when accepting an SL(2,C) element.
    const TOL_DET: Self;
    /// Frame orthonormality / surface-normality validation.
    const TOL_FRAME: Self;
    /// Componentwise frame equality in inner products and addition.
    const TOL_FRAME_EQ: Self;
    /// Residual bound for coplanarity of affine spans.
    const TOL_COPLANAR: Self;
    /// Two-dimensional pieces with (Euclidean) area at or below this are
    /// treated as empty.
    const TOL_AREA_FLOOR: Self;
    /// Agreement required between a quadrature and its doubled-resolution
    /// self-check.
    const TOL_QUAD_CHECK: Self;

    /// Shorthand for converting an `f64` constant.
    fn of(v: f64) -> Self {
        <Self as FromPrimitive>::from_f64(v).expect("f64 constant must convert")
    }
}

impl Real for f64 {
    const TOL_IDENTITY: Self = 1e-12;
    const TOL_COMPOUND: Self = 1e-10;
    const TOL_DET: Self = 1e-9;
    const TOL_FRAME: Self = 1e-10;
    const TOL_FRAME_EQ: Self = 1e-9;
    const TOL_COPLANAR: Self = 1e-9;
    const TOL_AREA_FLOOR: Self = 1e-12;
    const TOL_QUAD_CHECK: Self = 1e-8;
}

impl Real for f32 {
    const TOL_IDENTITY: Self = 1e-4;
    const TOL_COMPOUND: Self = 1e-3;
    const TOL_DET: Self = 1e-3;
    const TOL_FRAME: Self = 1e-3;
    const TOL_FRAME_EQ: Self = 1e-3;
    const TOL_COPLANAR: Self = 1e-3;
    const TOL_AREA_FLOOR: Self = 1e-6;
    const TOL_QUAD_CHECK: Self = 1e-3;
}

//! Error types shared across the crate.

use thiserror::Error;

/// Errors produced by constructors and numerical operations.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("component is not finite")]
    NonFinite,
    #[error("matrix does not preserve the Minkowski metric (deviation {deviation:.3e})")]
    NotLorentz { deviation: f64 },
    #[error("matrix is not in the restricted component (m00 = {m00:.6})")]
    NotRestricted { m00: f64 },
    #[error("determinant must be one (|det - 1| = {deviation:.3e})")]
    BadDeterminant { deviation: f64 },
    #[error("spanning vectors are linearly dependent")]
    DependentSpans,
    #[error("surface is not space-like ({class})")]
    NotSpaceLike { class: &'static str },
    #[error("frame is not Minkowski-orthonormal (deviation {deviation:.3e})")]
    InvalidFrame { deviation: f64 },
    #[error("frame is not normal to the surface (deviation {deviation:.3e})")]
    FrameNotNormal { deviation: f64 },
    #[error("surface does not lie in a translate of the x2-x3 plane")]
    NotSpatialPlane,
    #[error("matrix is not orthogonal (deviation {deviation:.3e})")]
    NotOrthogonal { deviation: f64 },
    #[error("degenerate chart point (rank-deficient differential)")]
    DegeneratePoint,
    #[error("negative value under a square root for a space-like chart ({value:.3e})")]
    NegativeDensity { value: f64 },
    #[error("quadrature self-check failed (delta {delta:.3e} exceeds {tolerance:.3e})")]
    QuadratureCheck { delta: f64, tolerance: f64 },
    #[error("pieces overlap but their planes differ")]
    OverlapNotCoplanar,
    #[error("overlapping pieces carry different frames")]
    OverlapFrameMismatch,
    #[error("pieces of a collection must have disjoint interiors")]
    NotDisjoint,
    #[error("component counts differ ({left} vs {right})")]
    ComponentMismatch { left: usize, right: usize },
    #[error("division by zero while evaluating a field")]
    DivisionByZero,
    #[error("translation step produces overlapping translates")]
    OverlappingTranslates,
    #[error("{0}")]
    Parse(#[from] ParseError),
}

/// Position-bearing syntax error for the field expression grammar.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
#[error("parse error at position {position}: {message}")]
pub struct ParseError {
    /// Byte offset into the source text.
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(position: usize, message: impl Into<String>) -> Self {
        ParseError {
            position,
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

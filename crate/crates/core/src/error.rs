//! Library error type.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("invalid filling: {0}")]
    InvalidFilling(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("space mismatch: {0}")]
    SpaceMismatch(String),
    #[error("position out of range: {0}")]
    PositionOutOfRange(String),
    #[error("degenerate decomposition: {0}")]
    DegenerateDecomposition(String),
    #[error("cotangent label {0} lies in two index ranges")]
    AmbiguousLabel(String),
    #[error("restriction undefined for mixed-sign monomial: {0}")]
    MixedRestriction(String),
    #[error("not expressible in the Hermite basis: {0}")]
    NotInDeltaBasis(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("model mismatch: {0}")]
    ModelMismatch(String),
    #[error("search budget exceeded: {0}")]
    SearchBudget(String),
    #[error("radius too small: {0}")]
    RadiusTooSmall(String),
    #[error("config error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors shared across the whole library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("coordinate out of range: {0}")]
    InvalidCoordinate(String),

    #[error("operation requires a finite region")]
    InfiniteRegion,

    #[error("invalid construction: {0}")]
    InvalidConstruction(String),

    #[error("invalid element: {0}")]
    InvalidElement(String),

    /// Malformed input document or point list; carries a field path or
    /// position diagnostic.
    #[error("format error: {0}")]
    Format(String),

    #[error("operation only supported at dimension 3, got {0}")]
    UnsupportedDimension(usize),

    #[error("element is not axis-normalized")]
    NotNormalized,

    #[error("precondition failed: {0}")]
    Precondition(String),

    /// The operation is backed by a theorem guaranteeing success; reaching
    /// this variant means the library itself is wrong.
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;

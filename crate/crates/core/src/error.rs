use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("reference vector is zero")]
    DegenerateReference,

    #[error("zero vector where a nonzero vector is required")]
    ZeroVector,

    #[error("vector outside the operation's domain: {0}")]
    Domain(String),

    /// The osculating Gram matrix failed to factor. Signals a broken invariant
    /// (‖X₀‖ < 1 guarantees positive definiteness), never bad user input.
    #[error("osculating Gram matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("flag is degenerate: transverse vector is parallel to the flag pole")]
    DegenerateFlag,

    #[error("no {missing} curvature found after {samples} samples")]
    SearchExhausted { missing: &'static str, samples: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

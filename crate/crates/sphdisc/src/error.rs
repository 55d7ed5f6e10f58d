//! Crate-wide error type.

/// Errors produced by factorizations, solvers, generators and I/O.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A pivot fell below the scale-invariant singularity threshold.
    #[error("singular matrix: pivot {pivot:.3e} below threshold {threshold:.3e} at elimination step {step}")]
    SingularMatrix {
        step: usize,
        pivot: f64,
        threshold: f64,
    },

    #[error("dimension mismatch: expected length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("domain error: {0}")]
    Domain(String),

    /// The exact oracle enumerates 2^(n-1) cube vertices and is capped.
    #[error("dimension {n} exceeds the exact-method budget of {max}")]
    DimensionTooLarge { n: usize, max: usize },

    #[error("invalid dimension: {0}")]
    InvalidDimension(String),

    /// The requested generator cannot synthesize a matrix (provenance-only tag).
    #[error("generator `{0}` cannot synthesize an instance")]
    UnsupportedGenerator(&'static str),

    #[error("invalid matrix file: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

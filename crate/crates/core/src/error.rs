use thiserror::Error;

/// Errors raised by the model's operations.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("cannot normalize the zero vector")]
    ZeroNorm,

    #[error("state is not normalized (squared norm {norm_sq})")]
    NotNormalized { norm_sq: f64 },

    #[error("operator is not Hermitian (max |A - A^H| = {defect})")]
    NotHermitian { defect: f64 },

    #[error("numeric consistency failure: {0}")]
    NumericConsistency(String),

    #[error("norm drift {drift:e} exceeds limit {limit:e}")]
    NormDrift { drift: f64, limit: f64 },

    #[error("invalid step size: {0}")]
    InvalidStepSize(String),

    #[error("eigensolver failed to converge after {0} iterations")]
    NoConvergence(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

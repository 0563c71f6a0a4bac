use thiserror::Error;

/// Errors surfaced by grid construction, assembly, and the eigensolver.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("assembly accounting failure: {0}")]
    Accounting(String),

    #[error("boundary block is singular or ill-conditioned: {0}")]
    SingularBoundaryBlock(String),

    #[error("eigendecomposition failed: {0}")]
    Eigen(String),

    #[error("preset assertion failed: {0}")]
    PresetAssertion(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("input matrix is not Hermitian")]
    NonHermitianInput,
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("state is not entangled")]
    NotEntangled,
    #[error("optimizer failed to converge: {0}")]
    OptimizerFailure(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("ambiguous input: exactly one of \"bell_diagonal\", \"matrix\", \"pure_alpha\" must be given")]
    AmbiguousInput,
    #[error("bound computation requires a Bell-diagonal state")]
    NotBellDiagonal,
    #[error("unknown suite: {0}")]
    UnknownSuite(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

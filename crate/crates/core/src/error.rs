use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GlaError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("dimension {0} is outside the supported range 1..=16")]
    UnsupportedDimension(usize),
    #[error("index {index} out of range for dimension {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("invalid Gram matrix: {0}")]
    InvalidGram(String),
    #[error("arity error: {0}")]
    Arity(String),
    #[error("degree error: {0}")]
    Degree(String),
    #[error("arithmetic error: {0}")]
    Arithmetic(String),
    #[error("structure check failed: {0}")]
    Structure(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("size limit exceeded: {0}")]
    Limit(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, GlaError>;

pub(crate) fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(GlaError::DimensionMismatch { expected, got })
    }
}

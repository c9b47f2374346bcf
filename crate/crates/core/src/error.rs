use thiserror::Error;

/// Errors reported by the polar coding library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid code parameters: {0}")]
    InvalidCode(String),
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("bit index {got} decoded out of order (expected {expected})")]
    OutOfOrder { expected: usize, got: usize },
    #[error("list size must be at least 1")]
    InvalidListSize,
    #[error("sorter precondition violated: {0}")]
    SorterPrecondition(String),
    #[error("unsupported decoder configuration: {0}")]
    Unsupported(String),
    #[error("frozen-set file: {0}")]
    FrozenFile(String),
    #[error("latency query: {0}")]
    Latency(String),
    #[error("invalid value: {0}")]
    InvalidValue(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors produced by diagram construction and engine operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinrewError {
    #[error("boundary mismatch: expected {expected}, found {found}")]
    BoundaryMismatch { expected: String, found: String },
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("unknown generator: {0}")]
    UnknownGenerator(String),
    #[error("bubble expansion depth exceeded (max {0})")]
    DepthExceeded(usize),
    #[error("invalid word character: {0}")]
    InvalidWord(char),
    #[error("{0}")]
    Other(String),
}

pub type Result<T> = std::result::Result<T, LinrewError>;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field orders differ: {0} vs {1}")]
    OrderMismatch(u32, u32),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parity mismatch: {0}")]
    Parity(String),
    #[error("degenerate specialization: {0}")]
    Degenerate(String),
    #[error("singular input: {0}")]
    Singular(String),
    #[error("resource bound exceeded: {0}")]
    Bound(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("ambiguous constraint system: {0}")]
    Ambiguous(String),
    #[error("precision not supported: {0}")]
    Precision(String),
}

pub type Result<T> = std::result::Result<T, Error>;

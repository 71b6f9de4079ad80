use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("malformed data: {0}")]
    Format(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// A structural identity that should hold failed on a concrete instance.
    #[error("check failed: {0}")]
    Violation(String),
    /// A randomized procedure ran out of budget without a verdict.
    #[error("inconclusive: {0}")]
    Unknown(String),
    #[error("out of scope: {0}")]
    Unsupported(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

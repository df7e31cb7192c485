use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid pattern: {0}")]
    InvalidPattern(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("operation rejected: {0}")]
    Rejected(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

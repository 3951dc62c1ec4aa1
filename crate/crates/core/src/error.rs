use thiserror::Error;

/// Errors raised by the toolkit. Precondition violations and rationality
/// limits are reported rather than silently worked around.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    Domain(String),
    #[error("curve is singular: {0}")]
    Singular(String),
    #[error("not rational over F_p: {0}")]
    NonRational(String),
    #[error("unsupported model: {0}")]
    Unsupported(String),
    #[error("enumeration budget exceeded: {0}")]
    Budget(String),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

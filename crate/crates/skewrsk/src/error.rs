use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("iteration cap of {0} steps exceeded")]
    CapExceeded(usize),
    #[error("instance too large: {size} > cap {cap}")]
    TooLarge { size: usize, cap: usize },
    #[error("operator {token} undefined at position {position}")]
    Undefined { token: String, position: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Invalid(msg.into()))
}

use thiserror::Error;

use crate::design::Witness;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("precision error: {0}")]
    Precision(String),

    #[error("index error: {0}")]
    Index(String),

    #[error("parameter error: {0}")]
    Param(String),

    #[error("format error at line {line}: {message}")]
    Format { line: usize, message: String },

    /// An input that was required to verify did not.
    #[error("verification failed: {0}")]
    Unverified(Box<Witness>),

    #[error("internal consistency error: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Param(msg.into())
    }

    pub(crate) fn format(line: usize, msg: impl Into<String>) -> Self {
        Error::Format {
            line,
            message: msg.into(),
        }
    }
}

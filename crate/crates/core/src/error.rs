use thiserror::Error;

use crate::linalg::RingSpec;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ring mismatch: expected {expected}, found {found}")]
    RingMismatch { expected: RingSpec, found: RingSpec },

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("invalid injection: {0}")]
    InvalidInjection(String),

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("bad coefficient {text:?}: {reason}")]
    Coefficient { text: String, reason: String },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

use thiserror::Error;

/// Errors raised by the core algorithms and file readers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("element {index} out of range for ground set of size {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("{what} exceeds cap {cap}")]
    CapExceeded { what: String, cap: u128 },

    #[error("not a basis: {0:?}")]
    NotABasis(Vec<usize>),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    pub(crate) fn cap(what: impl Into<String>, cap: u128) -> Self {
        Error::CapExceeded {
            what: what.into(),
            cap,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

//! Error type shared across the crate.
//!
//! The variants map one-to-one onto the CLI exit codes and the C API status
//! codes: parse errors carry a byte offset into the offending input, data
//! errors name what is missing or malformed.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Bad argument to an operation (wrong range, unsupported value).
    #[error("argument error: {0}")]
    Argument(String),

    /// Syntax error in a representation expression, with the byte offset
    /// where parsing failed.
    #[error("parse error at byte {offset}: {msg}")]
    Parse { offset: usize, msg: String },

    /// Missing or invalid input data (eigenvalue tables, data files).
    #[error("data error [{code}]: {msg}")]
    Data { code: &'static str, msg: String },

    /// Operation outside the supported range (e.g. symmetric powers whose
    /// analytic status is unknown).
    #[error("capability error: {0}")]
    Capability(String),

    /// Violated internal invariant; indicates a bug, not bad input.
    #[error("internal error: {0}")]
    Internal(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn argument(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub fn data(code: &'static str, msg: impl Into<String>) -> Self {
        Error::Data {
            code,
            msg: msg.into(),
        }
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    /// Process exit code for the CLI: 2 parse, 3 data, 1 everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } => 2,
            Error::Data { .. } | Error::Io(_) => 3,
            Error::Argument(_) => 2,
            Error::Capability(_) => 2,
            Error::Internal(_) => 1,
        }
    }

    /// Short machine-parsable code written to stderr by the CLI.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Argument(_) => "E_ARG",
            Error::Parse { .. } => "E_PARSE",
            Error::Data { code, .. } => code,
            Error::Capability(_) => "E_CAP",
            Error::Internal(_) => "E_INTERNAL",
            Error::Io(_) => "E_IO",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

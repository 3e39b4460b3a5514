use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right} variables")]
    DimensionMismatch { left: usize, right: usize },

    #[error("invalid trit {found:?} at position {position}")]
    InvalidTrit { found: char, position: usize },

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("on-set and don't-care set overlap in cube {0}")]
    OverlappingSpec(String),

    #[error("{n} variables exceeds the enumeration limit of {limit}; use sampling mode")]
    Capacity { n: usize, limit: usize },

    #[error("no convergence after {0} outer iterations")]
    Progress(usize),

    #[error("minimizer backend `{path}` failed: {message}")]
    Backend { path: PathBuf, message: String },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }
}

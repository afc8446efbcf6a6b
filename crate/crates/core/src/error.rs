use std::io;
use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("parse error at {path}:{line}: {msg}")]
    Parse { path: PathBuf, line: usize, msg: String },

    #[error("empty input: {0}")]
    Empty(String),

    #[error("zero vector")]
    ZeroVector,

    #[error("row {row} out of range (vocabulary size {len})")]
    InvalidRow { row: usize, len: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("method requires {relation} constraints but none were loaded")]
    MissingRelation { relation: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("non-finite gradient at row {row} (relation {relation}, epoch {epoch}, batch {batch})")]
    NonFiniteGradient {
        row: usize,
        relation: String,
        epoch: usize,
        batch: usize,
    },

    #[error("word not covered by the vocabulary: {0}")]
    Uncovered(String),

    #[error("evaluation undefined: {0}")]
    Undefined(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(path: impl Into<PathBuf>, line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            line,
            msg: msg.into(),
        }
    }
}

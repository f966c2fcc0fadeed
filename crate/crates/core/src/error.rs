use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("duplicate id {0}")]
    DuplicateId(u32),

    #[error("empty collection")]
    EmptyCollection,

    #[error("invalid logarithm base {0}: base must be positive and different from 1")]
    InvalidBase(f64),

    #[error("logarithm argument {0} is outside the domain (must be > 0)")]
    Domain(f64),

    #[error("term `{0}` does not occur in the collection")]
    TermNotInCollection(String),

    #[error("unknown document id {0}")]
    UnknownDocument(u32),

    #[error("query {0} has no relevant documents")]
    EmptyRelevantSet(u32),

    #[error("no queries to evaluate")]
    NoQueries,

    #[error("relevance judgments reference queries missing from the query set: {0:?}")]
    QrelsMismatch(Vec<u32>),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("base 10 is not part of the sweep result")]
    MissingStandardBase,

    #[error("index snapshot: {0}")]
    Snapshot(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse { line, message: message.into() }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }

    /// True for failures caused by the environment (files, usage) rather than the data.
    pub fn is_io(&self) -> bool {
        matches!(self, Error::Io { .. })
    }
}

use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: parse error at line {line}, column {column}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{path}: schema violation at {location}: {message}")]
    Schema {
        path: PathBuf,
        location: String,
        message: String,
    },

    #[error("duplicate {kind} id `{id}`")]
    DuplicateId { kind: &'static str, id: String },

    #[error("{file}: unsupported construct `{construct}`")]
    Unsupported { construct: String, file: PathBuf },

    #[error("{file}: malformed XML: {message}")]
    Xml { file: PathBuf, message: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("write failed: {0}")]
    Write(#[from] std::io::Error),

    #[error("empty network")]
    EmptyNetwork,

    #[error("network has no links")]
    NoLinks,

    #[error("input graph is disconnected")]
    Disconnected,

    #[error("degenerate {what}: {reason}")]
    Degenerate { what: &'static str, reason: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{metric}: {source}")]
    Metric {
        metric: &'static str,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn in_metric(self, metric: &'static str) -> Self {
        Error::Metric {
            metric,
            source: Box::new(self),
        }
    }

    /// True for errors that come from analysing a network that is too small
    /// or too regular for a metric, as opposed to bad input files.
    pub fn is_degenerate(&self) -> bool {
        match self {
            Error::EmptyNetwork
            | Error::NoLinks
            | Error::Disconnected
            | Error::Degenerate { .. } => true,
            Error::Metric { source, .. } => source.is_degenerate(),
            _ => false,
        }
    }
}

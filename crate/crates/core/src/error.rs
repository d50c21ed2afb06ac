use std::path::PathBuf;

use thiserror::Error;

/// Errors produced while loading inputs, preparing splits, or scoring.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("document `{id}`: {message}")]
    Validation { id: String, message: String },

    #[error("record `{record}`: {message}")]
    Record { record: String, message: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cannot build a test split: {0}")]
    DedupUnsatisfiable(String),

    #[error("no informative examples to balance against")]
    NoInformativeExamples,

    #[error("invalid lexicon: {0}")]
    Lexicon(String),

    #[error("missing predictions for {} gold id(s): {}", .0.len(), .0.join(", "))]
    MissingPredictions(Vec<String>),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(path: impl Into<PathBuf>, line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            line,
            message: message.into(),
        }
    }

    pub(crate) fn validation(id: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Validation {
            id: id.into(),
            message: message.into(),
        }
    }
}

use std::io;

use thiserror::Error;

/// Errors produced by graph loading and the centrality routines.
#[derive(Debug, Error)]
pub enum BcError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unsupported format: {0}")]
    Format(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("node {node} out of range for graph with {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },

    #[error(
        "full-info tables need {required} entries, above the cap of {cap}; \
         use the memory-efficient one-round algorithm instead"
    )]
    MemoryCap { required: usize, cap: usize },

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = BcError> = std::result::Result<T, E>;

impl BcError {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        BcError::Parse {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn arg(message: impl Into<String>) -> Self {
        BcError::InvalidArgument(message.into())
    }
}

//! Error type shared by all modules of the toolkit.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },

    #[error("invalid post {post_id}: {}", violations.join("; "))]
    InvalidPost {
        post_id: String,
        violations: Vec<String>,
    },

    #[error("duplicate post id {id} at line {line}")]
    DuplicatePostId { id: String, line: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("training failed: {message}")]
    Train { message: String },

    #[error("non-finite value while scoring sequence {seq_index}")]
    NonFinite { seq_index: usize },

    #[error("decode error: {0}")]
    Decode(String),

    #[error("model format error: {0}")]
    ModelFormat(String),

    #[error("mismatch: {0}")]
    Mismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub fn parse(path: impl Into<String>, line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            line,
            message: message.into(),
        }
    }
}

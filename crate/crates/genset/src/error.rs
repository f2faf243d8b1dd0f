use thiserror::Error;

/// Crate-wide error type. Variants map onto the CLI exit codes
/// (usage 2, parse 3, capacity 4).
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("family is empty")]
    EmptyFamily,

    #[error("family has no {0}-clique in its disjointness graph")]
    EmptyDomain(usize),

    #[error("no good clique exists (measured alpha = {alpha})")]
    NoGoodClique { alpha: String },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub fn capacity(msg: impl Into<String>) -> Self {
        Error::Capacity(msg.into())
    }
}

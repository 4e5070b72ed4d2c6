use thiserror::Error;

/// Errors produced anywhere in the engine.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A malformed text document. `line` is 1-based; 0 means "end of input".
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// A well-formed input that violates the precondition of an operation.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A structural inconsistency between derived data structures.
    #[error("structural error: {0}")]
    Structure(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

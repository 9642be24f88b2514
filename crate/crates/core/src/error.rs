use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("instance has {got} vertices, exact oracles accept at most {limit}")]
    OracleScale { got: usize, limit: usize },
    #[error("no acceptable graph after {0} attempts")]
    GenerationExhausted(usize),
    #[error("structural violation: {0}")]
    StructuralViolation(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("assignment is missing variable {0}")]
    MissingVariable(String),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

use thiserror::Error;

/// Errors raised by the engine. Validation failures that are reported as
/// data (violation lists) are not errors; see the `validate_*` functions.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed map: {0}")]
    Structure(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("map is not connected")]
    Disconnected,
    #[error("invalid divide: {0}")]
    InvalidDivide(String),
    #[error("invalid discal graph: {0}")]
    InvalidDiscal(String),
    #[error("operation not allowed: {0}")]
    NotAllowed(String),
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("code carries a star vertex; build the matrix from the divide instead")]
    StarCode,
    #[error("invalid family parameters: {0}")]
    Family(String),
    #[error("resource ceiling exceeded: {0}")]
    Ceiling(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn structure(msg: impl Into<String>) -> Error {
    Error::Structure(msg.into())
}

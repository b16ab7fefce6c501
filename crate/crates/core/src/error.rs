use thiserror::Error;

/// Errors raised by the library.
///
/// Negative decisions (a node is not a king, a string is not a formula) are
/// ordinary values, never errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("length mismatch: expected {expected} bits, got {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("{what} exceeds the configured cap ({value} > {limit})")]
    CapExceeded {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("formula is not in the catalog")]
    NotInCatalog,

    #[error("circuit format: {0}")]
    CircuitFormat(String),

    #[error("graph format: {0}")]
    GraphFormat(String),

    #[error("unknown verification suite `{0}`")]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub fn is_cap_exceeded(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}

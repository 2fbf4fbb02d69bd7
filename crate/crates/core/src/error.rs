use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed permutation text. `column` is 1-based.
    #[error("{message} (column {column})")]
    Parse { message: String, column: usize },

    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("{what} = {value} is out of range {range}")]
    OutOfRange {
        what: &'static str,
        value: usize,
        range: String,
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A configured resource cap would be exceeded.
    #[error("{what} exceeds the cap of {cap}")]
    ResourceCap { what: String, cap: u128 },

    /// An internal consistency check failed.
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn parse(message: impl Into<String>, column: usize) -> Self {
        Error::Parse {
            message: message.into(),
            column,
        }
    }

    pub fn is_resource(&self) -> bool {
        matches!(self, Error::ResourceCap { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

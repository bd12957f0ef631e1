use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the library.
///
/// Variants split into two families: input problems (bad files, bad
/// parameters, violated preconditions) and [`ScatterError::Contract`], which
/// signals that an internal guarantee did not hold. Front ends map the latter
/// to a distinct exit status.
#[derive(Debug, Error)]
pub enum ScatterError {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("index {index} out of range for {len} points")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("malformed tour: {0}")]
    MalformedTour(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("instance too large: {what} is {actual}, limit {limit}")]
    TooLarge {
        what: &'static str,
        actual: usize,
        limit: usize,
    },

    #[error("parse error in {path}: {message}")]
    Parse { path: PathBuf, message: String },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("internal contract violated: {0}")]
    Contract(String),
}

impl ScatterError {
    /// True for errors that indicate a bug rather than bad input.
    pub fn is_contract_violation(&self) -> bool {
        matches!(self, ScatterError::Contract(_))
    }
}

pub type Result<T, E = ScatterError> = std::result::Result<T, E>;

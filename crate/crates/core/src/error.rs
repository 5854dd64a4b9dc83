use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("component index {index} out of range for dimension {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("validation error [{code}] at {path}: {message}")]
    Validation {
        code: &'static str,
        path: String,
        message: String,
    },

    #[error("capacity exceeded in {operation}: {message}")]
    Capacity { operation: &'static str, message: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn validation(code: &'static str, path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Validation {
            code,
            path: path.into(),
            message: message.into(),
        }
    }

    /// Diagnostic code of a validation error, if this is one.
    pub fn code(&self) -> Option<&'static str> {
        match self {
            Error::Validation { code, .. } => Some(code),
            _ => None,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

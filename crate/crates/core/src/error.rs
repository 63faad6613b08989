//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WittError {
    /// Malformed input text or JSON.
    #[error("parse error: {0}")]
    Parse(String),
    /// Input violates the operation's precondition.
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// The requested computation is outside the supported scope.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// A self-check failed; indicates a bug.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, WittError>;

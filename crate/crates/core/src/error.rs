use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("cannot parse {what} from {input:?}: {reason}")]
    Parse { what: &'static str, input: String, reason: String },

    #[error("invalid modulus e = {0}: must be at least 2")]
    InvalidModulus(i64),

    #[error("a finite modulus is required here")]
    InfiniteModulus,

    #[error("component index {index} out of range for level {level}")]
    ComponentOutOfRange { index: usize, level: usize },

    #[error("row index must be positive")]
    ZeroRowIndex,

    #[error("level mismatch: multipartition has {lambda} components, charge has {charge}")]
    LevelMismatch { lambda: usize, charge: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

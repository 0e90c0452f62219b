use thiserror::Error;

/// Errors raised by the engine.
///
/// The variants fall into three classes that the CLI maps onto distinct exit
/// codes: malformed input, violated mathematical preconditions, and exceeded
/// resource caps.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid Cartan type {family}{rank}: {reason}")]
    InvalidType {
        family: char,
        rank: usize,
        reason: String,
    },

    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },

    #[error("weight {0} is not dominant")]
    NotDominant(String),

    #[error("{0}")]
    Domain(String),

    #[error("index {index} out of range 0..={max}")]
    OutOfRange { index: usize, max: usize },

    #[error("Weyl group has order {order}, which exceeds the enumeration cap {cap}")]
    WeylCapExceeded { order: u64, cap: u64 },

    #[error("{what} needs {needed} steps, which exceeds the cap {cap}")]
    CapExceeded {
        what: &'static str,
        needed: String,
        cap: u64,
    },

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) => 2,
            Error::WeylCapExceeded { .. } | Error::CapExceeded { .. } => 4,
            Error::Internal(_) => 1,
            _ => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use std::io;

use thiserror::Error;

/// Errors produced by the samplers, oracles and applications in this crate.
#[derive(Debug, Error)]
pub enum SampleError {
    /// Caller supplied arguments that violate an operation's precondition
    /// (for example `k > n`).
    #[error("invalid arguments: {0}")]
    InvalidArguments(String),
    /// A size guard was exceeded: materialization cap, enumeration guard, or
    /// a code space too small for the population.
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    /// The random source could not produce a value.
    #[error("random source: {0}")]
    Rng(String),
    /// The input file changed between the counting pass and the extraction pass.
    #[error("file changed between passes: counted {counted} lines, then saw {seen}")]
    Race { counted: u64, seen: u64 },
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl SampleError {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        SampleError::InvalidArguments(msg.into())
    }

    pub(crate) fn capacity(msg: impl Into<String>) -> Self {
        SampleError::Capacity(msg.into())
    }

    /// Rejects `k > n` with the shared message used across modules.
    pub(crate) fn check_k(n: u64, k: u64) -> Result<(), Self> {
        if k > n {
            Err(Self::invalid(format!("sample size k={k} exceeds population n={n}")))
        } else {
            Ok(())
        }
    }
}

pub type Result<T, E = SampleError> = std::result::Result<T, E>;

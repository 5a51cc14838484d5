//! Command-level error type and the exit-code contract.
//!
//! The tool's exit codes are stable across commands: 0 for success, 1 for
//! usage problems (bad flags, unreadable or unparseable input files), 2 for
//! violated domain preconditions (non-normalized states, near-identical
//! designated pairs, corrupt machine files), and 3 — returned by the verify
//! command without going through this type — for verification failures.

use thiserror::Error;

/// A command failure with its exit-code class.
#[derive(Debug, Error)]
pub enum CliError {
    /// Exit code 1: the invocation itself is unusable — a file path that
    /// cannot be read or content that does not parse.
    #[error("{0}")]
    Usage(String),
    /// Exit code 2: the inputs parsed but violate a precondition of the
    /// requested operation.
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    /// The process exit code for this failure class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(_) => 1,
            Self::Domain(_) => 2,
        }
    }
}

impl From<probclone_core::Error> for CliError {
    fn from(err: probclone_core::Error) -> Self {
        Self::Domain(err.to_string())
    }
}

//! Command-line front end for `hurwitz-core`: expansions, modular periods,
//! zero decisions and exact values, sweeps, verification suites and the
//! brute-force oracle.

pub mod commands;
pub mod family;
pub mod row;
pub mod sweep;
pub mod verify;

use hurwitz_core::Error;

pub use commands::{run, Cli, Command, Rendered};
pub use family::Family;
pub use row::{decide, DecideOptions, DecisionTag, SweepRow};

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const FAILURE: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const BUDGET: i32 = 3;
    pub const VERIFICATION: i32 = 4;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => exit::USAGE,
            CliError::Io(_) => exit::FAILURE,
            CliError::Core(e) => match e {
                Error::BudgetExceeded { .. } => exit::BUDGET,
                Error::InvalidDescriptor(_)
                | Error::InvalidParameter(_)
                | Error::TrivialTarget { .. }
                | Error::NoProgression
                | Error::NonCoprimeModuli(..)
                | Error::Precondition(_) => exit::USAGE,
                Error::PrecisionExhausted { .. } | Error::Inconsistent(_) => exit::FAILURE,
            },
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

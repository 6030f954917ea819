use thiserror::Error;

/// Errors raised by the descriptor, modular, decision and oracle layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid descriptor: {0}")]
    InvalidDescriptor(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The target reduces to denominator 1, i.e. phi lies in Z*theta + Z.
    #[error("target ({r}*theta + {m})/{n} reduces to denominator 1; the constant is undefined")]
    TrivialTarget { r: i64, m: i64, n: i64 },

    #[error("period detection exceeded its budget of {budget} states ({what})")]
    BudgetExceeded { what: &'static str, budget: u64 },

    #[error("descriptor has no unbounded (progression) entry in its cycle")]
    NoProgression,

    #[error("moduli {0} and {1} are not coprime")]
    NonCoprimeModuli(u64, u64),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("could not certify the value within {bits} bits of precision")]
    PrecisionExhausted { bits: u32 },

    /// A guaranteed convergent match was not found; always a bug.
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;

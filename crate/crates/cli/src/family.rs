//! Command-line names for the built-in numbers.

use std::fmt;

use hurwitz_core::approx::exp_descriptor;
use hurwitz_core::cf_engine::{builtin_descriptor, BuiltinKind, HurwitzianDescriptor};
use hurwitz_core::{Error, Result};

/// A built-in `theta`, plus `exp s` for `e^(1/s)` with `s = 1` allowed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Exp(u64),
    Builtin(BuiltinKind),
}

impl Family {
    pub fn parse(name: &str, param: Option<u64>) -> Result<Self> {
        match name.to_ascii_lowercase().as_str() {
            "exp" => {
                let s = param.ok_or_else(|| Error::InvalidParameter("kind exp requires a parameter".into()))?;
                if s == 0 {
                    return Err(Error::InvalidParameter("exp requires s >= 1".into()));
                }
                Ok(Family::Exp(s))
            }
            _ => Ok(Family::Builtin(BuiltinKind::parse(name, param)?)),
        }
    }

    pub fn descriptor(&self) -> Result<HurwitzianDescriptor> {
        match *self {
            Family::Exp(s) => exp_descriptor(s),
            Family::Builtin(kind) => builtin_descriptor(kind),
        }
    }

    /// `s` when `theta = e^(1/s)`, so the leaper fast path applies.
    pub fn exp_param(&self) -> Option<u64> {
        match self {
            Family::Exp(s) => Some(*s),
            Family::Builtin(kind) => kind.exp_inv_param(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::Exp(_) => "exp",
            Family::Builtin(BuiltinKind::E) => "e",
            Family::Builtin(BuiltinKind::ExpInv(_)) => "exp_inv",
            Family::Builtin(BuiltinKind::Exp2Over(_)) => "exp_2_over",
            Family::Builtin(BuiltinKind::TanhInv(_)) => "tanh_inv",
            Family::Builtin(BuiltinKind::AllOnes) => "all_ones",
        }
    }

    pub fn param(&self) -> Option<u64> {
        match *self {
            Family::Exp(s) => Some(s),
            Family::Builtin(BuiltinKind::ExpInv(s) | BuiltinKind::TanhInv(s)) => Some(s),
            Family::Builtin(BuiltinKind::Exp2Over(k)) => Some(k),
            Family::Builtin(BuiltinKind::E | BuiltinKind::AllOnes) => None,
        }
    }

    pub fn takes_param(name: &str) -> bool {
        !matches!(
            name.to_ascii_lowercase().replace('-', "_").as_str(),
            "e" | "all_ones" | "allones" | "golden"
        )
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.param() {
            Some(p) => write!(f, "{} {p}", self.name()),
            None => write!(f, "{}", self.name()),
        }
    }
}

//! One decision per `(theta, phi)`, the unit of `decide` and `sweep` output.

use std::cmp::Ordering;
use std::fmt;

use hurwitz_core::approx::{fast_is_zero_exp, ApproxResult, ConvergentAnalysis, ReducedTarget, ZeroWitness};
use hurwitz_core::rational::ratio_to_string;
use hurwitz_core::{Error, Result};
use serde::{Deserialize, Serialize};

use crate::family::Family;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecisionTag {
    Zero,
    Value,
    Bound,
    Unknown,
}

impl fmt::Display for DecisionTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DecisionTag::Zero => "zero",
            DecisionTag::Value => "value",
            DecisionTag::Bound => "bound",
            DecisionTag::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub param: Option<u64>,
    pub n: u64,
    pub r: u64,
    pub m: u64,
    pub decision: DecisionTag,
    /// Exact `n^2 L` as `p/q`; present iff the decision is `value`.
    #[serde(rename = "n2L", default, skip_serializing_if = "Option::is_none")]
    pub n2l: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub upper: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<ZeroWitness>,
    /// Leaper steps taken by the fast path.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multiplications: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_consistent: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

pub type RowKey = (String, Option<u64>, u64, u64, u64);

impl SweepRow {
    pub fn key(&self) -> RowKey {
        (self.family.clone(), self.param, self.n, self.r, self.m)
    }

    pub fn target(&self) -> ReducedTarget {
        ReducedTarget {
            r: self.r,
            m: self.m,
            n: self.n,
        }
    }

    fn blank(family: &Family, t: &ReducedTarget, decision: DecisionTag) -> Self {
        SweepRow {
            family: family.name().to_string(),
            param: family.param(),
            n: t.n,
            r: t.r,
            m: t.m,
            decision,
            n2l: None,
            upper: None,
            witness: None,
            multiplications: None,
            oracle_consistent: None,
            reason: None,
        }
    }

    pub fn from_result(family: &Family, t: &ReducedTarget, res: &ApproxResult) -> Self {
        match res {
            ApproxResult::Zero { witness } => SweepRow {
                witness: Some(*witness),
                ..Self::blank(family, t, DecisionTag::Zero)
            },
            ApproxResult::ExactValue { n2l, .. } => SweepRow {
                n2l: Some(ratio_to_string(n2l)),
                ..Self::blank(family, t, DecisionTag::Value)
            },
            ApproxResult::BoundOnly { upper, .. } => SweepRow {
                upper: upper.as_ref().map(ratio_to_string),
                ..Self::blank(family, t, DecisionTag::Bound)
            },
            ApproxResult::Unknown { reason } => SweepRow {
                reason: Some(reason.clone()),
                ..Self::blank(family, t, DecisionTag::Unknown)
            },
        }
    }

    /// Decision tag and value only, the part every path must agree on.
    pub fn same_decision(&self, other: &SweepRow) -> bool {
        self.decision == other.decision && self.n2l == other.n2l
    }
}

impl PartialOrd for SweepRow {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SweepRow {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Display for SweepRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.param {
            Some(p) => write!(f, "{} {p}", self.family)?,
            None => write!(f, "{}", self.family)?,
        }
        write!(f, "  phi = ({}*theta + {})/{}  {}", self.r, self.m, self.n, self.decision)?;
        if let Some(v) = &self.n2l {
            write!(f, "  n^2 L = {v}")?;
        }
        if let Some(u) = &self.upper {
            write!(f, "  n^2 L <= {u}")?;
        }
        if let Some(w) = &self.witness {
            write!(f, "  witness P_{} g = {}", w.index, w.g)?;
        }
        if let Some(k) = self.multiplications {
            write!(f, "  multiplications = {k}")?;
        }
        if let Some(c) = self.oracle_consistent {
            write!(f, "  oracle {}", if c { "consistent" } else { "INCONSISTENT" })?;
        }
        if let Some(reason) = &self.reason {
            write!(f, "  ({reason})")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct DecideOptions {
    pub fast: bool,
    pub budget: Option<u64>,
}

/// Decides one target with a prepared analysis of `family` modulo `t.n`.
pub fn decide_with(
    family: &Family,
    analysis: Option<&ConvergentAnalysis>,
    t: &ReducedTarget,
    opts: DecideOptions,
) -> Result<SweepRow> {
    let mut multiplications = None;
    if opts.fast {
        let s = family.exp_param().ok_or_else(|| {
            Error::InvalidParameter(format!("--fast applies only to e^(1/s), not {family}"))
        })?;
        let fast = fast_is_zero_exp(s, t)?;
        if let hurwitz_core::approx::ZeroDecision::Zero { witness } = fast.decision {
            return Ok(SweepRow {
                witness: Some(witness),
                multiplications: Some(fast.multiplications),
                ..SweepRow::blank(family, t, DecisionTag::Zero)
            });
        }
        multiplications = Some(fast.multiplications);
    }
    let res = match analysis {
        Some(a) => a.value(t),
        None => ConvergentAnalysis::with_budget(&family.descriptor()?, t.n, opts.budget)
            .and_then(|a| a.value(t)),
    };
    let res = match res {
        Ok(res) => res,
        Err(Error::NoProgression) => ApproxResult::Unknown {
            reason: "no unbounded partial quotients".into(),
        },
        Err(e) => return Err(e),
    };
    let mut row = SweepRow::from_result(family, t, &res);
    if opts.fast && row.decision == DecisionTag::Zero {
        return Err(Error::Inconsistent(format!(
            "fast path found no zero for {family} at {t} but the convergent scan did"
        )));
    }
    row.multiplications = multiplications;
    Ok(row)
}

pub fn decide(family: &Family, t: &ReducedTarget, opts: DecideOptions) -> Result<SweepRow> {
    decide_with(family, None, t, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use hurwitz_core::approx::reduce;

    #[test]
    fn json_round_trip() {
        let f = Family::parse("exp_inv", Some(3)).unwrap();
        for (r, m, n) in [(0, 1, 2), (1, 1, 2), (0, 1, 7)] {
            let row = decide(&f, &reduce(r, m, n).unwrap(), DecideOptions::default()).unwrap();
            let text = serde_json::to_string(&row).unwrap();
            assert_eq!(serde_json::from_str::<SweepRow>(&text).unwrap(), row);
            assert_eq!(row.n2l.is_some(), row.decision == DecisionTag::Value);
        }
    }

    #[test]
    fn fast_agrees_with_scan() {
        let f = Family::Exp(12);
        let t = reduce(0, 1, 23).unwrap();
        let fast = decide(&f, &t, DecideOptions { fast: true, budget: None }).unwrap();
        let slow = decide(&f, &t, DecideOptions::default()).unwrap();
        assert!(fast.same_decision(&slow));
        assert_eq!(fast.decision, DecisionTag::Zero);
        assert!(fast.multiplications.unwrap() < 12);
    }

    #[test]
    fn fast_needs_exp() {
        let f = Family::parse("tanh_inv", Some(2)).unwrap();
        let t = reduce(0, 1, 3).unwrap();
        assert!(decide(&f, &t, DecideOptions { fast: true, budget: None }).is_err());
    }

    #[test]
    fn quadratic_is_unknown() {
        let f = Family::parse("all_ones", None).unwrap();
        let row = decide(&f, &reduce(0, 1, 2).unwrap(), DecideOptions::default()).unwrap();
        assert_eq!(row.decision, DecisionTag::Unknown);
    }
}

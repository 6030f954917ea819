//! Exhaustive checks of the published zero/value statements.

use std::fmt;

use hurwitz_core::approx::{
    exp_descriptor, fast_is_zero_exp, reduce, special_zero_families, ConvergentAnalysis, ReducedTarget,
};
use hurwitz_core::cf_engine::{builtin_descriptor, BuiltinKind};
use hurwitz_core::mod_arith::{
    crt_combine, gcd, leaper_mod, leaper_period, leaper_reflect, leaper_sequence, leaper_symmetry, LeaperWitness,
};
use hurwitz_core::rational::{ratio, ratio_to_string};
use hurwitz_core::Result;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Table,
    Conjecture,
    Ecor,
    Specialzeros,
    Crt,
    LeaperPeriod,
}

impl Suite {
    pub fn name(&self) -> &'static str {
        match self {
            Suite::Table => "table",
            Suite::Conjecture => "conjecture",
            Suite::Ecor => "ecor",
            Suite::Specialzeros => "specialzeros",
            Suite::Crt => "crt",
            Suite::LeaperPeriod => "leaper-period",
        }
    }

    pub fn default_max(&self) -> u64 {
        match self {
            Suite::Table => 49,
            Suite::Conjecture | Suite::Ecor => 24,
            Suite::Specialzeros => 99,
            Suite::Crt => 500,
            Suite::LeaperPeriod => 50,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suite: String,
    pub max: u64,
    pub checked: u64,
    pub passed: bool,
    /// The first few counterexamples, most informative first.
    pub failures: Vec<String>,
    pub failure_count: u64,
}

const KEEP_FAILURES: usize = 10;

impl VerifyReport {
    fn new(suite: Suite, max: u64, checked: u64, mut failures: Vec<String>) -> Self {
        let failure_count = failures.len() as u64;
        failures.truncate(KEEP_FAILURES);
        VerifyReport {
            suite: suite.name().to_string(),
            max,
            checked,
            passed: failure_count == 0,
            failures,
            failure_count,
        }
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "pass" } else { "FAIL" };
        write!(f, "{} (max {}): {status}, {} checks", self.suite, self.max, self.checked)?;
        if !self.passed {
            write!(f, ", {} failures", self.failure_count)?;
            for c in &self.failures {
                write!(f, "\n  {c}")?;
            }
        }
        Ok(())
    }
}

pub fn run(suite: Suite, max: Option<u64>) -> Result<VerifyReport> {
    let max = max.unwrap_or_else(|| suite.default_max());
    match suite {
        Suite::Table => table(max),
        Suite::Conjecture => dichotomy(max, false),
        Suite::Ecor => dichotomy(max, true),
        Suite::Specialzeros => special_zeros(max),
        Suite::Crt => crt(max),
        Suite::LeaperPeriod => leaper_periods(max, false),
    }
}

/// `(n, [s mod n])` with `L(e^(1/s), 1/n) = 0`, the additions for `n <= 49`.
pub const TABLE: &[(u64, &[u64])] = &[
    (23, &[12]),
    (25, &[13, 23]),
    (29, &[15]),
    (43, &[25]),
    (47, &[11, 17, 33, 43]),
    (49, &[1, 22, 46]),
];

/// Both the convergent scan and the leaper fast path must report zero, the
/// latter in fewer than `n/2` steps.
pub fn table(max: u64) -> Result<VerifyReport> {
    let mut failures = Vec::new();
    let mut checked = 0;
    for &(n, ss) in TABLE.iter().filter(|(n, _)| *n <= max) {
        let t = reduce(0, 1, n as i64)?;
        for &s in ss {
            checked += 1;
            let scan = ConvergentAnalysis::new(&exp_descriptor(s)?, n)?.is_zero(&t)?;
            let fast = fast_is_zero_exp(s, &t)?;
            if !scan.is_zero() || !fast.decision.is_zero() {
                failures.push(format!("n={n} s={s}: scan {scan:?}, fast {:?}", fast.decision));
            } else if 2 * fast.multiplications >= n {
                failures.push(format!("n={n} s={s}: {} multiplications", fast.multiplications));
            }
        }
    }
    Ok(VerifyReport::new(Suite::Table, max, checked, failures))
}

/// For `2 <= k, n <= max`, `n^2 L(e^(2/k), phi)` for `phi = 1/n, -theta/n` is 0
/// or 1/2; with `shared_only`, pairs with `gcd(n, k) != 1` must give 1/2.
pub fn dichotomy(max: u64, shared_only: bool) -> Result<VerifyReport> {
    let pairs: Vec<(u64, u64)> = (2..=max)
        .flat_map(|k| (2..=max).map(move |n| (k, n)))
        .filter(|&(k, n)| !shared_only || gcd(n, k) != 1)
        .collect();
    let results: Vec<Vec<String>> = pairs
        .par_iter()
        .map(|&(k, n)| -> Result<Vec<String>> {
            let a = ConvergentAnalysis::new(&builtin_descriptor(BuiltinKind::Exp2Over(k))?, n)?;
            let mut bad = Vec::new();
            for (label, t) in [("1/n", reduce(0, 1, n as i64)?), ("-theta/n", reduce(-1, 0, n as i64)?)] {
                let v = a.value(&t)?;
                let ok = match v.exact_n2l() {
                    Some(x) if shared_only => x == ratio(1, 2),
                    Some(x) => x.is_zero() || x == ratio(1, 2),
                    None => false,
                };
                if !ok {
                    let shown = v.exact_n2l().map(|x| ratio_to_string(&x)).unwrap_or_else(|| v.kind().into());
                    bad.push(format!("k={k} n={n} phi={label}: n^2 L = {shown}"));
                }
            }
            Ok(bad)
        })
        .collect::<Result<_>>()?;
    let suite = if shared_only { Suite::Ecor } else { Suite::Conjecture };
    Ok(VerifyReport::new(suite, max, 2 * pairs.len() as u64, results.concat()))
}

/// `L(e^(2/(n+1)), m/n) = 0` and `L(e^(2/(n-1)), -m theta/n) = 0` for odd
/// `3 <= n <= max` and every `m` not divisible by `n`.
pub fn special_zeros(max: u64) -> Result<VerifyReport> {
    let ns: Vec<u64> = (3..=max).step_by(2).collect();
    let results: Vec<(u64, Vec<String>)> = ns
        .par_iter()
        .map(|&n| -> Result<(u64, Vec<String>)> {
            let mut bad = Vec::new();
            let mut checked = 0;
            let [(k1, _), (k2, _)] = special_zero_families(n, 1)?;
            let mut analyses = Vec::new();
            for kind in [k1, k2] {
                analyses.push(ConvergentAnalysis::new(&builtin_descriptor(kind)?, n)?);
            }
            for m in 1..n {
                let fams = special_zero_families(n, m)?;
                for ((kind, t), a) in fams.iter().zip(&analyses) {
                    checked += 1;
                    let t: &ReducedTarget = t;
                    let ta = if t.n == n { a.is_zero(t)? } else {
                        ConvergentAnalysis::new(&builtin_descriptor(*kind)?, t.n)?.is_zero(t)?
                    };
                    if !ta.is_zero() {
                        bad.push(format!("n={n} m={m}: {kind} at {t} is not zero"));
                    }
                }
            }
            Ok((checked, bad))
        })
        .collect::<Result<_>>()?;
    let checked = results.iter().map(|(c, _)| c).sum();
    let failures = results.into_iter().flat_map(|(_, b)| b).collect();
    Ok(VerifyReport::new(Suite::Specialzeros, max, checked, failures))
}

/// Even `j` in `[0, 2n)` with `L_j = (unit, 0) mod n`, i.e. `Q_j = 0`.
pub fn even_unit_witness(s: u64, n: u64) -> Option<LeaperWitness> {
    leaper_sequence(s, n, 2 * n as usize)
        .iter()
        .enumerate()
        .step_by(2)
        .find(|(_, l)| l.b == 0 && gcd(l.a, n) == 1)
        .map(|(j, _)| LeaperWitness { index: j as u64, modulus: n })
}

/// Zero of `L(e^(1/s), 1/n_1)` and `L(e^(1/s), 1/n_2)` for coprime moduli
/// gives a zero at `1/(n_1 n_2)`, with the combined even leaper index
/// satisfying `Q = 0 mod n_1 n_2`. Checks `s <= 30` and all `n_1 n_2 <= max`.
pub fn crt(max: u64) -> Result<VerifyReport> {
    let triples = crt_candidates(30, max)?;
    let results: Vec<Option<String>> = triples
        .par_iter()
        .map(|&(s, n1, n2)| crt_check(s, n1, n2))
        .collect::<Result<_>>()?;
    let failures = results.into_iter().flatten().collect();
    Ok(VerifyReport::new(Suite::Crt, max, triples.len() as u64, failures))
}

/// `(s, n_1, n_2)` with `n_1 < n_2` coprime, `n_1 n_2 <= max`, and both factor
/// targets `1/n_i` zero for `e^(1/s)`.
pub fn crt_candidates(s_max: u64, max: u64) -> Result<Vec<(u64, u64, u64)>> {
    let mut out = Vec::new();
    for s in 1..=s_max {
        let zero = |n: u64| -> Result<bool> { Ok(fast_is_zero_exp(s, &reduce(0, 1, n as i64)?)?.decision.is_zero()) };
        let zeros: Vec<u64> = (2..=max / 2).filter_map(|n| zero(n).map(|z| z.then_some(n)).transpose()).collect::<Result<_>>()?;
        for (i, &n1) in zeros.iter().enumerate() {
            for &n2 in &zeros[i + 1..] {
                if n1 * n2 <= max && gcd(n1, n2) == 1 {
                    out.push((s, n1, n2));
                }
            }
        }
    }
    Ok(out)
}

/// `None` when the combined decision and witness check out.
pub fn crt_check(s: u64, n1: u64, n2: u64) -> Result<Option<String>> {
    let n = n1 * n2;
    let t = reduce(0, 1, n as i64)?;
    let scan = ConvergentAnalysis::new(&exp_descriptor(s)?, n)?.is_zero(&t)?;
    if !scan.is_zero() {
        return Ok(Some(format!("s={s} n1={n1} n2={n2}: combined target 1/{n} is not zero")));
    }
    let (Some(w1), Some(w2)) = (even_unit_witness(s, n1), even_unit_witness(s, n2)) else {
        return Ok(Some(format!("s={s} n1={n1} n2={n2}: no even leaper witness for a factor")));
    };
    let w = crt_combine(w1, w2)?;
    let l = leaper_mod(s, n, w.index as i64)?;
    if l.b != 0 {
        return Ok(Some(format!("s={s} n1={n1} n2={n2}: combined index {} has Q = {} mod {n}", w.index, l.b)));
    }
    Ok(None)
}

/// The two reflection relations over a full period, period length `2n`
/// when `gcd(n, 2s) = 1` (and a divisor of `2n` always), and the `n - s`
/// reflection, for `1 <= s <= max` and `2 <= n <= max`. `odd_only` skips even `n`.
pub fn leaper_periods(max: u64, odd_only: bool) -> Result<VerifyReport> {
    let pairs: Vec<(u64, u64)> = (1..=max)
        .flat_map(|s| (2..=max).map(move |n| (s, n)))
        .filter(|&(_, n)| !odd_only || n % 2 == 1)
        .collect();
    let results: Vec<Vec<String>> = pairs
        .par_iter()
        .map(|&(s, n)| leaper_pair_failures(s, n))
        .collect::<Result<_>>()?;
    Ok(VerifyReport::new(Suite::LeaperPeriod, max, pairs.len() as u64, results.concat()))
}

/// Counterexamples for one `(s, n)`; empty when every relation holds.
pub fn leaper_pair_failures(s: u64, n: u64) -> Result<Vec<String>> {
    let mut bad = Vec::new();
    let sym = leaper_symmetry(s, n)?;
    if let Some(j) = sym.centre_mismatch {
        bad.push(format!("s={s} n={n}: L_(K+{j}) != L_(K-{j})"));
    }
    if let Some(j) = sym.star_mismatch {
        bad.push(format!("s={s} n={n}: L_(n+{j}) != L*_{j}"));
    }
    let t = leaper_period(s, n)?.period_len as u64;
    if (2 * n) % t != 0 {
        bad.push(format!("s={s} n={n}: period {t} does not divide 2n"));
    }
    if gcd(n, 2 * s) == 1 && t != 2 * n {
        bad.push(format!("s={s} n={n}: minimal period {t}, expected {}", 2 * n));
    }
    if s < n {
        for j in 0..2 * n as i64 {
            if leaper_reflect(s, n, j)? != leaper_mod(n - s, n, j)? {
                bad.push(format!("s={s} n={n}: reflection fails at j={j}"));
                break;
            }
        }
    }
    Ok(bad)
}

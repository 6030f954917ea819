//! Batch decisions written as sorted JSON Lines, resumable from a previous
//! (possibly partial) output file.

use std::collections::BTreeMap;
use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use hurwitz_core::approx::{reduce, reduced_targets, ConvergentAnalysis, ReducedTarget};
use hurwitz_core::mod_arith::gcd;
use hurwitz_core::oracle::liminf_scan;
use hurwitz_core::rational::parse_ratio;
use hurwitz_core::{Error, Result};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::family::Family;
use crate::row::{decide_with, DecideOptions, DecisionTag, RowKey, SweepRow};

/// An inclusive range of integers, written `a`, `a..b` (exclusive) or `a..=b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub lo: u64,
    pub hi: u64,
}

impl Span {
    pub fn iter(&self) -> impl Iterator<Item = u64> {
        self.lo..=self.hi
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }
}

pub fn parse_span(s: &str) -> std::result::Result<Span, String> {
    let num = |x: &str| x.trim().parse::<u64>().map_err(|_| format!("bad integer {x:?} in range {s:?}"));
    if let Some((a, b)) = s.split_once("..=") {
        Ok(Span { lo: num(a)?, hi: num(b)? })
    } else if let Some((a, b)) = s.split_once("..") {
        let (lo, hi) = (num(a)?, num(b)?);
        // `a..a` is empty
        Ok(if hi == 0 { Span { lo: 1, hi: 0 } } else { Span { lo, hi: hi - 1 } })
    } else {
        let v = num(s)?;
        Ok(Span { lo: v, hi: v })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum GcdFilter {
    /// Every `n`.
    #[default]
    Any,
    /// `gcd(n, param) = 1`.
    Coprime,
    /// `gcd(n, param) != 1`.
    Shared,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum TargetSet {
    /// `phi = 1/n` only.
    #[default]
    Unit,
    /// `phi = -theta/n` only.
    NegTheta,
    /// Both `1/n` and `-theta/n`.
    Both,
    /// Every reduced `(r, m)` with denominator `n`.
    All,
}

#[derive(Clone, Debug)]
pub struct SweepSpec {
    pub kind: String,
    pub params: Option<Span>,
    pub ns: Span,
    pub odd_only: bool,
    pub gcd: GcdFilter,
    pub targets: TargetSet,
    pub decide: DecideOptions,
    /// Scan bound for the optional oracle check.
    pub oracle_qmax: Option<u64>,
    pub oracle_tol: f64,
}

/// The family/target pairs a sweep covers, grouped by `(family, n)`.
pub fn plan(spec: &SweepSpec) -> Result<Vec<(Family, u64, Vec<ReducedTarget>)>> {
    let families: Vec<Family> = match (Family::takes_param(&spec.kind), spec.params) {
        (true, Some(span)) => span.iter().map(|p| Family::parse(&spec.kind, Some(p))).collect::<Result<_>>()?,
        (true, None) => return Err(Error::InvalidParameter(format!("kind {} needs --param", spec.kind))),
        (false, None) => vec![Family::parse(&spec.kind, None)?],
        (false, Some(_)) => return Err(Error::InvalidParameter(format!("kind {} takes no --param", spec.kind))),
    };
    let mut out = Vec::new();
    for f in families {
        for n in spec.ns.iter() {
            if n < 2 || (spec.odd_only && n % 2 == 0) {
                continue;
            }
            let p = f.param().unwrap_or(1);
            let keep = match spec.gcd {
                GcdFilter::Any => true,
                GcdFilter::Coprime => gcd(n, p) == 1,
                GcdFilter::Shared => gcd(n, p) != 1,
            };
            if !keep {
                continue;
            }
            let unit = || reduce(0, 1, n as i64).expect("n >= 2");
            let neg = || reduce(n as i64 - 1, 0, n as i64).expect("n >= 2");
            let targets = match spec.targets {
                TargetSet::Unit => vec![unit()],
                TargetSet::NegTheta => vec![neg()],
                TargetSet::Both => vec![unit(), neg()],
                TargetSet::All => reduced_targets(n).collect(),
            };
            out.push((f, n, targets));
        }
    }
    Ok(out)
}

/// Compares the tail of a certified scan with an exact value: the minimum
/// of `|q| ||q theta - phi||` over the upper half of the dyadic windows,
/// times `n^2`, must lie within 5% of `n^2 L`. Matching convergents can be
/// several windows apart, so a shorter tail may contain none. Rows other
/// than `value` are left unflagged.
fn oracle_check(f: &Family, row: &SweepRow, q_max: u64, tol: f64) -> Result<Option<bool>> {
    if row.decision != DecisionTag::Value {
        return Ok(None);
    }
    let exact: BigRational = row
        .n2l
        .as_deref()
        .and_then(parse_ratio)
        .ok_or_else(|| Error::Inconsistent("value row without n2L".into()))?;
    let rec = liminf_scan(&f.descriptor()?, &row.target(), q_max, tol)?;
    let from = rec.envelope.len() / 2;
    let Some(tail) = rec.envelope.get(from) else {
        return Ok(None);
    };
    let n2 = BigRational::from_integer((row.n * row.n).into());
    let (lo, hi) = ((tail.lo() * &n2).to_f64(), (tail.hi() * &n2).to_f64());
    let v = exact.to_f64();
    Ok(match (lo, hi, v) {
        (Some(lo), Some(hi), Some(v)) => Some(hi >= v * 0.95 && lo <= v * 1.05),
        _ => None,
    })
}

fn run_group(spec: &SweepSpec, f: &Family, n: u64, targets: &[ReducedTarget]) -> Result<Vec<SweepRow>> {
    let analysis = match ConvergentAnalysis::with_budget(&f.descriptor()?, n, spec.decide.budget) {
        Ok(a) => Some(a),
        Err(Error::NoProgression) => None,
        Err(e) => return Err(e),
    };
    targets
        .iter()
        .map(|t| {
            let mut row = decide_with(f, analysis.as_ref(), t, spec.decide)?;
            if let Some(q) = spec.oracle_qmax {
                row.oracle_consistent = oracle_check(f, &row, q, spec.oracle_tol)?;
            }
            Ok(row)
        })
        .collect()
}

/// Rows already present in `path`; lines that do not parse are dropped.
pub fn load_rows(path: &Path) -> Result<BTreeMap<RowKey, SweepRow>> {
    let mut rows = BTreeMap::new();
    let Ok(file) = fs::File::open(path) else {
        return Ok(rows);
    };
    for line in BufReader::new(file).lines() {
        let line = line.map_err(|e| Error::InvalidParameter(format!("reading {}: {e}", path.display())))?;
        if let Ok(row) = serde_json::from_str::<SweepRow>(&line) {
            rows.insert(row.key(), row);
        }
    }
    Ok(rows)
}

pub fn render_rows<'a>(rows: impl Iterator<Item = &'a SweepRow>) -> String {
    let mut out = String::new();
    for row in rows {
        out.push_str(&serde_json::to_string(row).expect("rows serialize"));
        out.push('\n');
    }
    out
}

/// Writes `contents` to a sibling temporary file, then renames it over `path`.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let io = |e: std::io::Error| Error::InvalidParameter(format!("writing {}: {e}", path.display()));
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(contents.as_bytes()).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

#[derive(Clone, Debug, Default)]
pub struct SweepOutcome {
    pub rows: Vec<SweepRow>,
    pub computed: usize,
    pub reused: usize,
}

/// Groups finished between checkpoints of the output file.
const CHECKPOINT_GROUPS: usize = 64;

/// Runs the sweep on the current rayon pool. With `out`, rows already in the
/// file are reused and the file is rewritten atomically after every batch.
pub fn run(spec: &SweepSpec, out: Option<&Path>) -> Result<SweepOutcome> {
    let mut rows = match out {
        Some(p) => load_rows(p)?,
        None => BTreeMap::new(),
    };
    let mut reused = 0;
    let mut todo = Vec::new();
    for (f, n, targets) in plan(spec)? {
        let total = targets.len();
        let missing: Vec<ReducedTarget> = targets
            .into_iter()
            .filter(|t| !rows.contains_key(&(f.name().to_string(), f.param(), t.n, t.r, t.m)))
            .collect();
        reused += total - missing.len();
        if !missing.is_empty() {
            todo.push((f, n, missing));
        }
    }
    let mut computed = 0;
    if let Some(p) = out {
        if todo.is_empty() {
            write_atomic(p, &render_rows(rows.values()))?;
        }
    }
    for batch in todo.chunks(CHECKPOINT_GROUPS) {
        let done: Vec<Vec<SweepRow>> = batch
            .par_iter()
            .map(|(f, n, ts)| run_group(spec, f, *n, ts))
            .collect::<Result<_>>()?;
        for row in done.into_iter().flatten() {
            computed += 1;
            rows.insert(row.key(), row);
        }
        if let Some(p) = out {
            write_atomic(p, &render_rows(rows.values()))?;
        }
    }
    Ok(SweepOutcome {
        rows: rows.into_values().collect(),
        computed,
        reused,
    })
}

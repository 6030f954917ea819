//! Argument definitions and the subcommand implementations.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use hurwitz_core::approx::{reduce, ApproxResult, ConvergentAnalysis, ReducedTarget};
use hurwitz_core::cf_engine::{eval_interval, mu};
use hurwitz_core::mod_arith::{convergent_mod_period_with_budget, leaper_period_with_budget, leaper_symmetry, quotient_mod_period_with_budget};
use hurwitz_core::oracle::{liminf_scan, ScanRecord};
use hurwitz_core::rational::{ratio_to_string, to_decimal};
use serde::Serialize;
use serde_json::{json, Value};

use crate::family::Family;
use crate::row::{decide, DecideOptions};
use crate::sweep::{self, parse_span, GcdFilter, Span, SweepSpec, TargetSet};
use crate::verify::{self, Suite};
use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "hurwitz", version, about = "Inhomogeneous approximation constants of Hurwitzian continued fractions")]
pub struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

/// `theta` as a kind name and optional parameter, e.g. `exp_inv 3` or `e`.
#[derive(Debug, Clone, Args)]
pub struct ThetaArgs {
    /// e, exp (e^(1/s), s >= 1), exp_inv, exp_2_over, tanh_inv or all_ones.
    pub kind: String,
    /// s for exp/exp_inv/tanh_inv, k for exp_2_over.
    pub param: Option<u64>,
}

impl ThetaArgs {
    pub fn family(&self) -> Result<Family, CliError> {
        Ok(Family::parse(&self.kind, self.param)?)
    }
}

/// `r/m/n` for `phi = (r*theta + m)/n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Phi {
    pub r: i64,
    pub m: i64,
    pub n: i64,
}

impl Phi {
    pub fn reduced(&self) -> Result<ReducedTarget, CliError> {
        Ok(reduce(self.r, self.m, self.n)?)
    }
}

pub fn parse_phi(s: &str) -> Result<Phi, String> {
    let parts: Vec<&str> = s.split('/').collect();
    let [r, m, n] = parts.as_slice() else {
        return Err(format!("expected r/m/n, got {s:?}"));
    };
    let num = |x: &str| x.trim().parse::<i64>().map_err(|_| format!("bad integer {x:?} in {s:?}"));
    Ok(Phi { r: num(r)?, m: num(m)?, n: num(n)? })
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Partial quotients b_0, b_1, ... and the matching convergents.
    Expand {
        #[command(flatten)]
        theta: ThetaArgs,
        #[arg(long, default_value_t = 10)]
        count: usize,
        /// Also print an enclosure of theta accurate to this many bits.
        #[arg(long)]
        precision_bits: Option<u32>,
    },
    /// Exact convergents P_i = (p_i, q_i) with an enclosure of mu_i.
    Convergent {
        #[command(flatten)]
        theta: ThetaArgs,
        /// First index (>= -2).
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        index: i64,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 64)]
        precision_bits: u32,
    },
    /// Period of the convergents (or, with --quotients, the partial quotients) modulo n.
    ModPeriod {
        #[command(flatten)]
        theta: ThetaArgs,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        quotients: bool,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Leapers of e^(1/s) modulo n: period and reflection relations.
    LeaperPeriod {
        s: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Is L(theta, phi) zero? Prints one sweep row.
    Decide {
        #[command(flatten)]
        theta: ThetaArgs,
        #[arg(long, value_parser = parse_phi)]
        phi: Phi,
        /// Decide zero from the leaper recurrence (e^(1/s) only).
        #[arg(long)]
        fast: bool,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Exact n^2 L(theta, phi), or bounds when no exact value applies.
    Value {
        #[command(flatten)]
        theta: ThetaArgs,
        #[arg(long, value_parser = parse_phi)]
        phi: Phi,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Decide many (theta, phi) pairs; JSON Lines sorted by key.
    Sweep(SweepArgs),
    /// Run a verification suite; exits with 4 on any counterexample.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Suite size bound (moduli, parameters or n1*n2).
        #[arg(long)]
        max: Option<u64>,
        /// leaper-period only: skip even moduli.
        #[arg(long)]
        odd_only: bool,
    },
    /// Certified brute-force scan of |q| * ||q theta - phi|| by dyadic window.
    Oracle {
        #[command(flatten)]
        theta: ThetaArgs,
        #[arg(long, value_parser = parse_phi)]
        phi: Phi,
        #[arg(long, default_value_t = 1 << 20)]
        qmax: u64,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        /// CSV of window minima.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    pub kind: String,
    /// Parameter range: a, a..b or a..=b.
    #[arg(long, value_parser = parse_span)]
    pub param: Option<Span>,
    /// Denominator range.
    #[arg(long = "n", value_parser = parse_span)]
    pub ns: Span,
    #[arg(long)]
    pub odd: bool,
    #[arg(long, value_enum, default_value_t = GcdFilter::Any)]
    pub gcd: GcdFilter,
    #[arg(long, value_enum, default_value_t = TargetSet::Unit)]
    pub targets: TargetSet,
    #[arg(long)]
    pub fast: bool,
    #[arg(long)]
    pub budget: Option<u64>,
    /// Output file; existing rows are reused.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub workers: Option<usize>,
    /// Cross-check value rows against a scan up to this |q|.
    #[arg(long)]
    pub qmax: Option<u64>,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
}

/// Command output in both renderings, plus whether it counts as success.
#[derive(Debug, Clone)]
pub struct Rendered {
    pub text: String,
    pub json: Value,
    pub ok: bool,
}

impl Rendered {
    fn new(text: String, json: Value) -> Self {
        Rendered { text, json, ok: true }
    }

    fn of<T: Serialize>(text: String, value: &T) -> Self {
        Self::new(text, serde_json::to_value(value).expect("serializable"))
    }

    /// JSON for `--json`, plain text otherwise.
    pub fn output(&self, json: bool) -> String {
        if json {
            serde_json::to_string_pretty(&self.json).expect("serializable")
        } else {
            self.text.clone()
        }
    }
}

pub fn run(cli: &Cli) -> Result<Rendered, CliError> {
    match &cli.command {
        Command::Expand { theta, count, precision_bits } => expand(theta, *count, *precision_bits),
        Command::Convergent { theta, index, count, precision_bits } => convergents(theta, *index, *count, *precision_bits),
        Command::ModPeriod { theta, n, quotients, budget } => mod_period(theta, *n, *quotients, *budget),
        Command::LeaperPeriod { s, n, budget } => leaper(*s, *n, *budget),
        Command::Decide { theta, phi, fast, budget } => {
            let row = decide(&theta.family()?, &phi.reduced()?, DecideOptions { fast: *fast, budget: *budget })?;
            Ok(Rendered::of(row.to_string(), &row))
        }
        Command::Value { theta, phi, budget } => value(theta, phi, *budget),
        Command::Sweep(args) => run_sweep(args),
        Command::Verify { suite, max, odd_only } => {
            let rep = match suite {
                Suite::LeaperPeriod => verify::leaper_periods(max.unwrap_or(suite.default_max()), *odd_only)?,
                s => verify::run(*s, *max)?,
            };
            let mut out = Rendered::of(rep.to_string(), &rep);
            out.ok = rep.passed;
            Ok(out)
        }
        Command::Oracle { theta, phi, qmax, tol, out } => oracle(theta, phi, *qmax, *tol, out.as_deref()),
    }
}

fn expand(theta: &ThetaArgs, count: usize, bits: Option<u32>) -> Result<Rendered, CliError> {
    let d = theta.family()?.descriptor()?;
    let quotients: Vec<String> = d.quotients().take(count).map(|b| b.to_string()).collect();
    let convs: Vec<(i64, String, String)> = d
        .convergents()
        .take(count)
        .map(|c| (c.index, c.p.to_string(), c.q.to_string()))
        .collect();
    let mut text = quotients.join(" ");
    for (i, p, q) in &convs {
        write!(text, "\nP_{i} = ({p}, {q})").unwrap();
    }
    let mut json = json!({
        "descriptor": d.to_string(),
        "quotients": quotients,
        "convergents": convs.iter().map(|(i, p, q)| json!({"index": i, "p": p, "q": q})).collect::<Vec<_>>(),
    });
    if let Some(bits) = bits {
        let iv = eval_interval(&d, bits);
        let digits = (bits as usize * 3) / 10 + 1;
        write!(text, "\ntheta in [{}, {}]", to_decimal(iv.lo(), digits), to_decimal(iv.hi(), digits)).unwrap();
        json["theta"] = serde_json::to_value(&iv).expect("serializable");
    }
    Ok(Rendered::new(text, json))
}

fn convergents(theta: &ThetaArgs, index: i64, count: usize, bits: u32) -> Result<Rendered, CliError> {
    let d = theta.family()?.descriptor()?;
    if index < -2 {
        return Err(CliError::Usage(format!("index {index} < -2")));
    }
    let mut rows = Vec::new();
    let mut text = String::new();
    for i in index..index + count as i64 {
        let c = hurwitz_core::cf_engine::convergent(&d, i)?;
        let m = (i >= 0).then(|| mu(&d, i as usize, bits));
        write!(text, "{i} {} {}", c.p, c.q).unwrap();
        if let Some(m) = &m {
            write!(text, "  mu in {m}").unwrap();
        }
        text.push('\n');
        rows.push(json!({"index": i, "p": c.p.to_string(), "q": c.q.to_string(), "mu": m}));
    }
    text.pop();
    Ok(Rendered::new(text, Value::Array(rows)))
}

fn mod_period(theta: &ThetaArgs, n: u64, quotients: bool, budget: Option<u64>) -> Result<Rendered, CliError> {
    let d = theta.family()?.descriptor()?;
    if n < 2 {
        return Err(CliError::Usage("n must be >= 2".into()));
    }
    if quotients {
        let info = quotient_mod_period_with_budget(&d, n, budget)?;
        let text = format!(
            "quotients mod {n} from b_{}: preperiod {}, period {}\nprefix {:?}\nperiod {:?}",
            info.start_index, info.preperiod_len, info.period_len, info.prefix, info.entries
        );
        Ok(Rendered::of(text, &info))
    } else {
        let info = convergent_mod_period_with_budget(&d, n, budget)?;
        let list = |v: &[hurwitz_core::mod_arith::ModPair]| v.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ");
        let text = format!(
            "convergents mod {n} from P_{}: preperiod {}, period {}{}\nprefix {}\nperiod {}",
            info.start_index,
            info.preperiod_len,
            info.period_len,
            if info.completely_periodic { " (completely periodic)" } else { "" },
            list(&info.prefix),
            list(&info.entries)
        );
        Ok(Rendered::of(text, &info))
    }
}

fn leaper(s: u64, n: u64, budget: Option<u64>) -> Result<Rendered, CliError> {
    if s == 0 || n < 2 {
        return Err(CliError::Usage("need s >= 1 and n >= 2".into()));
    }
    let info = leaper_period_with_budget(s, n, budget)?;
    let sym = leaper_symmetry(s, n)?;
    let entries: Vec<String> = info.entries.iter().map(|p| p.to_string()).collect();
    let text = format!(
        "leapers of e^(1/{s}) mod {n}: period {}\n{}\nmirror about K: {}\nL_(n+j) = L*_j: {}",
        info.period_len,
        entries.join(" "),
        sym.centre_mismatch.map_or("holds".to_string(), |j| format!("fails at j={j}")),
        sym.star_mismatch.map_or("holds".to_string(), |j| format!("fails at j={j}")),
    );
    Ok(Rendered::new(text, json!({"period": info, "symmetry": sym})))
}

fn value(theta: &ThetaArgs, phi: &Phi, budget: Option<u64>) -> Result<Rendered, CliError> {
    let d = theta.family()?.descriptor()?;
    let t = phi.reduced()?;
    let a = ConvergentAnalysis::with_budget(&d, t.n, budget)?;
    let res = a.value(&t)?;
    let bound = a.coarse_upper_bound(&t)?;
    let mut text = format!("theta = {d}\nphi = {t}\n");
    match &res {
        ApproxResult::Zero { witness } => write!(text, "n^2 L = 0 (g * P_{} with g = {})", witness.index, witness.g),
        ApproxResult::ExactValue { n2l, m, class_offsets } => write!(
            text,
            "n^2 L = {} (M = {m}, classes at offsets {class_offsets:?})\nL = {}",
            ratio_to_string(n2l),
            ratio_to_string(&(n2l / num_rational::BigRational::from_integer((t.n * t.n).into())))
        ),
        ApproxResult::BoundOnly { upper, lower } => write!(
            text,
            "bounds only: {} <= n^2 L <= {}",
            lower.as_ref().map_or("?".into(), ratio_to_string),
            upper.as_ref().map_or("?".into(), ratio_to_string)
        ),
        ApproxResult::Unknown { reason } => write!(text, "unknown: {reason}"),
    }
    .unwrap();
    if let Some(b) = &bound {
        write!(text, "\ncoarse bound: n^2 L <= {}", ratio_to_string(b)).unwrap();
    }
    let mut json = serde_json::to_value(&res).expect("serializable");
    json["target"] = serde_json::to_value(t).expect("serializable");
    json["coarse_upper_bound"] = json!(bound.as_ref().map(ratio_to_string));
    Ok(Rendered::new(text, json))
}

fn run_sweep(args: &SweepArgs) -> Result<Rendered, CliError> {
    let spec = SweepSpec {
        kind: args.kind.clone(),
        params: args.param,
        ns: args.ns,
        odd_only: args.odd,
        gcd: args.gcd,
        targets: args.targets,
        decide: DecideOptions { fast: args.fast, budget: args.budget },
        oracle_qmax: args.qmax,
        oracle_tol: args.tol,
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = args.workers {
        if w == 0 {
            return Err(CliError::Usage("--workers must be >= 1".into()));
        }
        builder = builder.num_threads(w);
    }
    let pool = builder.build().map_err(|e| CliError::Io(e.to_string()))?;
    let outcome = pool.install(|| sweep::run(&spec, args.out.as_deref()))?;
    let summary = json!({
        "rows": outcome.rows.len(),
        "computed": outcome.computed,
        "reused": outcome.reused,
        "out": args.out.as_ref().map(|p| p.display().to_string()),
    });
    let text = match &args.out {
        Some(p) => format!(
            "{} rows ({} computed, {} reused) written to {}",
            outcome.rows.len(),
            outcome.computed,
            outcome.reused,
            p.display()
        ),
        None => sweep::render_rows(outcome.rows.iter()).trim_end().to_string(),
    };
    Ok(Rendered::new(text, summary))
}

#[derive(Serialize)]
struct CsvRow {
    window_exponent: u32,
    min_value_lo: String,
    min_value_hi: String,
    argmin_q: i64,
}

pub fn write_window_csv(rec: &ScanRecord, path: &std::path::Path) -> Result<(), CliError> {
    let mut w = csv::Writer::from_path(path).map_err(|e| CliError::Io(e.to_string()))?;
    for win in &rec.windows {
        w.serialize(CsvRow {
            window_exponent: win.exponent,
            min_value_lo: to_decimal(win.min.lo(), 15),
            min_value_hi: to_decimal(win.min.hi(), 15),
            argmin_q: win.argmin_q,
        })
        .map_err(|e| CliError::Io(e.to_string()))?;
    }
    w.flush()?;
    Ok(())
}

fn oracle(theta: &ThetaArgs, phi: &Phi, qmax: u64, tol: f64, out: Option<&std::path::Path>) -> Result<Rendered, CliError> {
    let d = theta.family()?.descriptor()?;
    let t = phi.reduced()?;
    if qmax < 16 {
        return Err(CliError::Usage(format!("--qmax must be >= 16 (got {qmax})")));
    }
    if !(tol > 0.0 && tol < 1.0) {
        return Err(CliError::Usage(format!("--tol must lie in (0, 1) (got {tol})")));
    }
    let rec = liminf_scan(&d, &t, qmax, tol)?;
    if let Some(p) = out {
        write_window_csv(&rec, p)?;
    }
    let json = serde_json::to_value(&rec).expect("serializable");
    // the record is the output in both modes
    let text = serde_json::to_string_pretty(&json).expect("serializable");
    Ok(Rendered::new(text, json))
}

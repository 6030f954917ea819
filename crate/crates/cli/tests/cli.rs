//! End-to-end runs of the `hurwitz` binary.

use std::path::Path;
use std::process::{Command, Output};

use hurwitz_cli::{DecisionTag, SweepRow};

fn hurwitz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hurwitz"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn read_rows(path: &Path) -> Vec<SweepRow> {
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

#[test]
fn expand_e() {
    let o = hurwitz(&["expand", "e", "--count", "6"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().next(), Some("2 1 2 1 1 4"));
    assert!(stdout(&o).contains("P_5 = (87, 32)"));
}

#[test]
fn expand_exp_two_over_first_block() {
    let o = hurwitz(&["expand", "exp_2_over", "3", "--count", "6"]);
    assert_eq!(stdout(&o).lines().next(), Some("1 1 18 7 1 1"));
}

#[test]
fn expand_rejects_exp_inv_one() {
    assert_eq!(code(&hurwitz(&["expand", "exp_inv", "1"])), 2);
    assert_eq!(code(&hurwitz(&["expand", "nonsense", "1"])), 2);
}

#[test]
fn decide_table_entry_fast() {
    let o = hurwitz(&["decide", "exp_inv", "12", "--phi", "0/1/23", "--fast", "--json"]);
    assert_eq!(code(&o), 0);
    let row: SweepRow = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(row.decision, DecisionTag::Zero);
    assert!(row.multiplications.unwrap() < 12);
}

#[test]
fn decide_half() {
    let o = hurwitz(&["decide", "exp_inv", "3", "--phi", "0/1/2", "--json"]);
    let row: SweepRow = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(row.decision, DecisionTag::Value);
    assert_eq!(row.n2l.as_deref(), Some("1/2"));
    assert_eq!(serde_json::from_str::<SweepRow>(&serde_json::to_string(&row).unwrap()).unwrap(), row);
}

#[test]
fn decide_rejects_trivial_target() {
    let o = hurwitz(&["decide", "exp_inv", "2", "--phi", "0/2/2"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("denominator 1"));
}

#[test]
fn usage_errors() {
    assert_eq!(code(&hurwitz(&["decide", "e", "--phi", "1/2"])), 2);
    assert_eq!(code(&hurwitz(&["frobnicate"])), 2);
    assert_eq!(code(&hurwitz(&["decide", "tanh_inv", "2", "--phi", "0/1/3", "--fast"])), 2);
}

#[test]
fn budget_exceeded() {
    let o = hurwitz(&["mod-period", "exp_inv", "7", "--n", "40", "--budget", "10"]);
    assert_eq!(code(&o), 3);
    let o = hurwitz(&["decide", "exp_inv", "7", "--phi", "0/1/40", "--budget", "10"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn value_reports_zero_for_half_theta_plus_half() {
    let o = hurwitz(&["value", "exp_2_over", "3", "--phi", "1/1/2", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["kind"], "zero");
}

#[test]
fn mod_period_listing() {
    let o = hurwitz(&["mod-period", "exp_inv", "3", "--n", "2", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["completely_periodic"], true);
    assert_eq!(6 % v["period_len"].as_u64().unwrap(), 0);
}

#[test]
fn leaper_period_text() {
    let o = hurwitz(&["leaper-period", "2", "--n", "7"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("period 14"));
}

#[test]
fn verify_suites() {
    for (suite, max) in [("table", None), ("conjecture", Some("24")), ("ecor", Some("12")), ("specialzeros", Some("21")), ("crt", Some("200"))] {
        let mut args = vec!["verify", suite];
        if let Some(m) = max {
            args.extend(["--max", m]);
        }
        let o = hurwitz(&args);
        assert_eq!(code(&o), 0, "{suite}: {}", stdout(&o));
        assert!(stdout(&o).contains("pass"));
    }
    assert_eq!(code(&hurwitz(&["verify", "leaper-period", "--max", "50", "--odd-only"])), 0);
}

#[test]
fn verify_reports_counterexample() {
    let o = hurwitz(&["verify", "leaper-period", "--max", "6"]);
    assert_eq!(code(&o), 4);
    assert!(stdout(&o).contains("FAIL"));
    assert!(stdout(&o).contains("n=4"));
}

#[test]
fn oracle_json_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("w.csv");
    let o = hurwitz(&["oracle", "e", "--phi", "0/1/2", "--qmax", "65536", "--out", csv.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["q_max"], 65536);
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("window_exponent,min_value_lo,min_value_hi,argmin_q"));
    assert_eq!(lines.count(), v["windows"].as_array().unwrap().len());
}

#[test]
fn oracle_rejects_small_qmax() {
    assert_eq!(code(&hurwitz(&["oracle", "e", "--phi", "0/1/2", "--qmax", "8"])), 2);
}

#[test]
fn sweep_table_rows() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.jsonl");
    let o = hurwitz(&["sweep", "exp", "--param", "1..=49", "--n", "23..=49", "--odd", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let rows = read_rows(&out);
    let zero = |n: u64, s: u64| {
        rows.iter()
            .any(|r| r.n == n && r.param == Some(s) && r.decision == DecisionTag::Zero)
    };
    for (n, ss) in hurwitz_cli::verify::TABLE {
        for &s in *ss {
            assert!(zero(*n, s), "n={n} s={s}");
        }
    }
    let mut sorted = rows.clone();
    sorted.sort();
    assert_eq!(rows, sorted);
}

#[test]
fn sweep_shared_gcd_is_half() {
    let o = hurwitz(&["sweep", "exp_2_over", "--param", "2..=12", "--n", "2..=12", "--gcd", "shared", "--targets", "both"]);
    let rows: Vec<SweepRow> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r.n2l.as_deref() == Some("1/2")));
}

#[test]
fn sweep_empty_range() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("e.jsonl");
    let o = hurwitz(&["sweep", "exp", "--param", "5..5", "--n", "2..=9", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(std::fs::read_to_string(&out).unwrap(), "");
}

#[test]
fn sweep_resume_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let fresh = dir.path().join("fresh.jsonl");
    let resumed = dir.path().join("resumed.jsonl");
    let base = ["sweep", "exp", "--targets", "all", "--n", "2..=15"];
    let run = |param: &str, out: &Path, workers: &str| {
        let mut a: Vec<&str> = base.to_vec();
        a.extend(["--param", param, "--workers", workers, "--out", out.to_str().unwrap()]);
        assert_eq!(code(&hurwitz(&a)), 0);
    };
    run("1..=6", &fresh, "4");
    run("2..=3", &resumed, "1");
    // a torn trailing line is dropped and recomputed
    let mut partial = std::fs::read_to_string(&resumed).unwrap();
    partial.push_str("{\"family\":\"exp\",\"par");
    std::fs::write(&resumed, partial).unwrap();
    run("1..=6", &resumed, "3");
    assert_eq!(std::fs::read(&fresh).unwrap(), std::fs::read(&resumed).unwrap());
}

#[test]
fn sweep_fast_matches_default() {
    let base = ["sweep", "exp", "--param", "1..=12", "--n", "2..=30", "--targets", "all"];
    let slow = hurwitz(&base);
    let mut args = base.to_vec();
    args.push("--fast");
    let fast = hurwitz(&args);
    let parse = |o: &Output| -> Vec<SweepRow> { stdout(o).lines().map(|l| serde_json::from_str(l).unwrap()).collect() };
    let (a, b) = (parse(&slow), parse(&fast));
    assert_eq!(a.len(), b.len());
    for (x, y) in a.iter().zip(&b) {
        assert_eq!(x.key(), y.key());
        assert!(x.same_decision(y), "{x} vs {y}");
    }
}

#[test]
fn sweep_oracle_flag() {
    let o = hurwitz(&["sweep", "exp_inv", "--param", "3", "--n", "2", "--qmax", "262144"]);
    let row: SweepRow = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(row.oracle_consistent, Some(true));
}

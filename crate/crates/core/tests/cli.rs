mod common;

use std::process::{Command, Output};

fn paybid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_paybid"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = paybid(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

/// Header and data lines of a CSV table, metadata stripped.
fn body(csv: &str) -> Vec<Vec<String>> {
    csv.lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn sweep_underestimate_grid() {
    let csv = ok(&[
        "sweep",
        "--scenario",
        "underestimate",
        "--param",
        "k",
        "--from",
        "-3",
        "--to",
        "3",
    ]);
    let rows = body(&csv);
    assert_eq!(rows[0][0], "k");
    assert_eq!(rows.len(), 1 + 7);
    let ks: Vec<f64> = rows[1..].iter().map(|r| r[0].parse().unwrap()).collect();
    assert_eq!(ks, [-3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.0]);
    let revenue: Vec<f64> = rows[1..].iter().map(|r| r[1].parse().unwrap()).collect();
    assert!((revenue[3] - 100.0).abs() < 1e-9);
    assert!(revenue[0] < 100.0 && revenue[6] > 100.0);
    assert!(csv.contains("# scenario: underestimate"));
    assert!(csv.contains("# config_sha256: "));
}

#[test]
fn analyze_json_is_well_formed() {
    let out = ok(&[
        "analyze",
        "--scenario",
        "collusion",
        "--set",
        "k=3",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["metadata"]["command"], "analyze");
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    let ratio = rows[0]["win_ratio"].as_f64().unwrap();
    assert!(ratio > 1.0, "coalition should be favoured, ratio {ratio}");
}

#[test]
fn simulate_is_reproducible_per_seed() {
    let args = [
        "simulate",
        "--scenario",
        "underestimate",
        "--set",
        "k=1",
        "--trials",
        "4000",
        "--seed",
        "9",
    ];
    let a = paybid(&args);
    let b = paybid(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let mut other = args;
    other[8] = "10";
    let c = paybid(&other);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.csv");
    let args = [
        "sweep",
        "--scenario",
        "bidfee",
        "--param",
        "k",
        "--from",
        "1",
        "--to",
        "5",
        "--step",
        "2",
    ];
    let stdout = ok(&args);
    let mut with_out: Vec<&str> = args.to_vec();
    let p = path.to_str().unwrap();
    with_out.extend(["--out", p]);
    let quiet = ok(&with_out);
    assert!(quiet.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), stdout);
}

#[test]
fn config_file_and_override() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.toml");
    std::fs::write(&path, "scenario = \"valuation\"\nn = 20\n").unwrap();
    let p = path.to_str().unwrap();
    let csv = ok(&["analyze", "--config", p, "--set", "k=4"]);
    assert!(csv.contains("# scenario: valuation"));
    assert!(csv.contains("n=20"), "{csv}");
}

#[test]
fn trace_reports_from_files() {
    let f = common::corpus();
    let dir = tempfile::tempdir().unwrap();
    let outcomes = dir.path().join("outcomes.tsv");
    let traces = dir.path().join("probes.trace");
    std::fs::write(&outcomes, &f.outcomes).unwrap();
    std::fs::write(&traces, &f.traces).unwrap();
    let (o, t) = (outcomes.to_str().unwrap(), traces.to_str().unwrap());
    for report in ["margins", "aggression", "duels", "active", "bidpacks"] {
        let csv = ok(&["trace", "--report", report, "--outcomes", o, "--traces", t]);
        assert!(csv.contains(&format!("# report: {report}")), "{csv}");
        assert!(body(&csv).len() >= 2, "{report}: {csv}");
    }
    let margins = ok(&["trace", "--report", "margins", "--outcomes", o]);
    assert!(margins.contains("\n1001,13,"), "{margins}");
}

#[test]
fn bad_invocations_fail() {
    for args in [
        &["analyze", "--scenario", "nonsense"][..],
        &[
            "sweep",
            "--scenario",
            "collusion",
            "--param",
            "k",
            "--from",
            "5",
            "--to",
            "2",
        ],
        &[
            "sweep",
            "--scenario",
            "collusion",
            "--param",
            "k",
            "--from",
            "2",
            "--to",
            "5",
            "--step",
            "0",
        ],
        &[
            "sweep",
            "--scenario",
            "collusion",
            "--param",
            "bogus",
            "--from",
            "2",
            "--to",
            "5",
        ],
        &["analyze", "--set", "n=2.5"],
        &["trace", "--report", "margins"],
        &["simulate", "--trials", "0"],
    ] {
        let out = paybid(args);
        assert!(!out.status.success(), "{args:?} unexpectedly succeeded");
        assert!(!out.stderr.is_empty());
    }
}

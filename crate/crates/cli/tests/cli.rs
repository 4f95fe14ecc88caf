//! The `twistlab` binary: printed values, reports and exit codes.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn twistlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twistlab"))
        .args(args)
        .env_remove("TWISTLAB_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

/// Runs a command that must succeed silently on stderr.
fn ok(args: &[&str]) -> String {
    let out = twistlab(args);
    assert!(
        out.status.success() && out.stderr.is_empty(),
        "{args:?}: {:?}\n{}",
        out.status,
        String::from_utf8_lossy(&out.stderr)
    );
    stdout(&out)
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn value(line: &str) -> f64 {
    line.split_whitespace().last().unwrap().parse().unwrap()
}

const POWER_1_3: &str = r#"{"phi0": {"kind": "power", "p": 1}, "phi1": {"kind": "power", "p": 3}, "theta": 0.5}"#;
const POWER_2_2: &str = r#"{"phi0": {"kind": "power", "p": 2}, "phi1": {"kind": "power", "p": 2}, "theta": 0.3}"#;
const LOG_COUPLE: &str =
    r#"{"phi0": {"kind": "power_log", "p": 2, "alpha": 1}, "phi1": {"kind": "power", "p": 2}, "theta": 0.5}"#;

#[test]
fn phi_eval_examples() {
    assert_eq!(ok(&["phi-eval", "--t", "3"]), "9\n");
    assert_eq!(ok(&["phi-eval", "--t", "0"]), "0\n");
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(&dir, "c.json", POWER_1_3);
    assert_eq!(ok(&["phi-eval", "--config", s(&cfg), "--t", "4"]), "8\n");
    assert_eq!(ok(&["phi-eval", "--config", s(&cfg), "--s", "8"]), "4\n");
}

#[test]
fn norm_examples() {
    let dir = tempfile::tempdir().unwrap();
    let single = write(
        &dir,
        "v.json",
        r#"{"n": 2, "order": "high_to_low", "entries": [{"k": 0, "block": [[0, 0], [1, 0]]}]}"#,
    );
    let out = ok(&["norm", "--n", "2", s(&single)]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 3, "{out}");
    for (line, name) in lines.iter().zip(["rochberg", "fenchel", "ratio"]) {
        assert!(line.starts_with(name), "{line}");
        assert!((value(line) - 1.0).abs() < 1e-9, "{line}");
    }

    let zero = write(&dir, "z.json", r#"{"n": 2, "order": "high_to_low", "entries": []}"#);
    assert_eq!(ok(&["norm", "--n", "2", s(&zero)]), "rochberg 0\nfenchel 0\n");

    let flat = write(
        &dir,
        "f.json",
        r#"{"n": 1, "order": "high_to_low", "entries": [{"k": 0, "block": [[3, 0]]}, {"k": 2, "block": [[0, -4]]}]}"#,
    );
    let out = ok(&["norm", "--n", "1", s(&flat)]);
    let values: Vec<f64> = out.lines().map(value).collect();
    assert!((values[0] - 5.0).abs() < 1e-9 && values[0] == values[1], "{out}");
    assert_eq!(ok(&["norm", "--n", "1", "--which", "fenchel", s(&flat)]).lines().count(), 1);
}

#[test]
fn omega_examples() {
    let dir = tempfile::tempdir().unwrap();
    let ones = write(
        &dir,
        "v.json",
        r#"{"n": 1, "order": "high_to_low", "entries": [{"k": 0, "block": [[1, 0]]}, {"k": 1, "block": [[1, 0]]}]}"#,
    );
    assert_eq!(
        ok(&["omega", "--n", "1", s(&ones)]),
        "0 -0.693147180559945 0\n1 -0.693147180559945 0\n"
    );
    let e1 = write(
        &dir,
        "e.json",
        r#"{"n": 1, "order": "high_to_low", "entries": [{"k": 1, "block": [[1, 0]]}]}"#,
    );
    assert_eq!(ok(&["omega", "--n", "1", s(&e1)]), "1 0 0\n");

    // Homogeneity under a real scale.
    let v = write(
        &dir,
        "w.json",
        r#"{"n": 2, "order": "high_to_low", "entries": [{"k": 0, "block": [[0.3, 1], [2, -1]]}, {"k": 5, "block": [[0, 0], [0.5, 0.25]]}]}"#,
    );
    let w = write(
        &dir,
        "w3.json",
        r#"{"n": 2, "order": "high_to_low", "entries": [{"k": 0, "block": [[0.9, 3], [6, -3]]}, {"k": 5, "block": [[0, 0], [1.5, 0.75]]}]}"#,
    );
    let parse = |text: String| -> Vec<f64> {
        text.split_whitespace().map(|t| t.parse().unwrap()).collect()
    };
    let base = parse(ok(&["omega", "--n", "2", s(&v)]));
    let scaled = parse(ok(&["omega", "--n", "2", s(&w)]));
    for (i, (a, b)) in base.iter().zip(&scaled).enumerate() {
        let expected = if i % 3 == 0 { *a } else { 3.0 * a };
        assert!((b - expected).abs() <= 1e-9 * expected.abs().max(1e-12), "{a} {b}");
    }
}

#[test]
fn verify_taylor_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let printed = ok(&["verify", "taylor", "--seed", "42", "--trials", "1000", "--out", s(&out)]);
    assert!(printed.lines().all(|l| l.starts_with("pass ")), "{printed}");
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["pass"], true);
    assert_eq!(report["seed"], 42);
    assert_eq!(report["trials"], 1000);
    for entry in report["entries"].as_array().unwrap() {
        assert!(entry["value"].as_f64().unwrap() <= 1e-8);
    }
    assert!(report.get("wall_time").is_none());
}

#[test]
fn verify_powers_and_threelines() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(&dir, "c.json", POWER_2_2);
    let out = ok(&["verify", "powers", "--config", s(&cfg), "--trials", "50"]);
    let report: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(report["pass"], true);
    assert!(report["entries"][0]["value"].as_f64().unwrap() <= 1e-12);

    let out = ok(&["verify", "threelines", "--n", "2", "--trials", "20"]);
    let report: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(report["pass"], true);
    assert!(report["entries"][0]["value"].as_f64().unwrap() >= -1e-9);
}

#[test]
fn verify_timing_is_opt_in() {
    let out = ok(&["verify", "kaltonpeck", "--trials", "5", "--timing"]);
    let report: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(report["wall_time"].as_f64().unwrap() >= 0.0);
}

#[test]
fn failed_suite_exits_one() {
    // A concave table is not an Orlicz function, so φ_θ fails the convexity bound.
    let dir = tempfile::tempdir().unwrap();
    let table = r#"{"kind": "monotone_table", "points": [[0, 0], [1, 1], [2, 1.2], [100, 1.5]]}"#;
    let cfg = write(
        &dir,
        "c.json",
        &format!(r#"{{"phi0": {table}, "phi1": {table}, "theta": 0.5}}"#),
    );
    let report = dir.path().join("r.json");
    let out = twistlab(&[
        "verify", "quasiconvex", "--config", s(&cfg), "--n", "1", "--trials", "200", "--out", s(&report),
    ]);
    assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).starts_with("FAIL "), "{}", stdout(&out));
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(json["pass"], false);
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad_cfg = write(&dir, "bad.json", r#"{"phi0": {"kind": "power"}, "theta": 0.5}"#);
    let bad_vec = write(&dir, "v.json", r#"{"n": 1, "order": "low_to_high", "entries": []}"#);
    let log_cfg = write(&dir, "log.json", LOG_COUPLE);
    for args in [
        vec!["phi-eval", "--config", s(&bad_cfg), "--t", "1"],
        vec!["norm", "--n", "1", s(&bad_vec)],
        vec!["omega", "--n", "1", "/nonexistent/vector.json"],
        vec!["phi-eval", "--theta", "1.5", "--t", "1"],
        vec!["verify", "powers", "--config", s(&log_cfg)],
        vec!["verify", "taylor", "--trials", "0"],
    ] {
        let out = twistlab(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty() && out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn couple_info_reports_the_couple() {
    let out = ok(&["couple-info", "--theta", "0.25"]);
    assert!(out.contains("theta 0.25\n"), "{out}");
    assert!(out.contains("phi0 nondegenerate=false ess_sup=true"), "{out}");
    assert!(out.lines().any(|l| l.starts_with("conformal_derivative ")));
}

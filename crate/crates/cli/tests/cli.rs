//! End-to-end runs of the `spectralab` binary.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use spectralab::circuits::DiagonalCircuit;
use spectralab::quantum::Circuit;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spectralab")).args(args).output().unwrap()
}

fn run_ok(args: &[&str]) -> Output {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    out
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

const SMALL_FIG1: &[&str] = &["--seed", "4", "fig1", "--n", "8", "--gammas", "0.5,2", "--instances", "6"];

#[test]
fn fig1_is_byte_identical_across_runs_and_threads() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    let mut args = vec!["--out", a.to_str().unwrap(), "--threads", "1"];
    args.extend_from_slice(SMALL_FIG1);
    run_ok(&args);
    let mut args = vec!["--out", b.to_str().unwrap(), "--threads", "3"];
    args.extend_from_slice(SMALL_FIG1);
    run_ok(&args);
    for f in ["fig1.csv", "fig1_summary.csv"] {
        let x = std::fs::read(a.join(f)).unwrap();
        assert_eq!(x, std::fs::read(b.join(f)).unwrap(), "{f}");
        assert!(!x.is_empty());
    }
    let text = std::fs::read_to_string(a.join("fig1.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "schema_version,gamma,instance,seed,entropy,pt_entropy_ref");
    assert_eq!(lines.count(), 12);
}

#[test]
fn manifest_records_the_run() {
    let dir = tempfile::tempdir().unwrap();
    let mut args = vec!["--out", dir.path().to_str().unwrap()];
    args.extend_from_slice(SMALL_FIG1);
    run_ok(&args);
    let m = read_json(&dir.path().join("manifest.json"));
    assert_eq!(m["experiment"], "fig1");
    assert_eq!(m["schema_version"], 1);
    assert_eq!(m["config"]["n"], 8);
    assert_eq!(m["config"]["seeds"], serde_json::json!([4]));
    assert_eq!(m["files"]["fig1.csv"], "fig1/v1");
    assert!(m["elapsed_seconds"].as_f64().unwrap() >= 0.0);
    assert!(m["started_at"].as_str().unwrap().contains('T'));
}

#[test]
fn config_files_drive_runs() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("attack.json");
    std::fs::write(
        &cfg,
        r#"{"experiment": "attack", "n": 6, "gamma": 2.0, "l": 2, "eta": 0.3, "seeds": [11]}"#,
    )
    .unwrap();
    let out = dir.path().join("res");
    run_ok(&["--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap(), "attack", "--eps", "0.2"]);
    let r = read_json(&out.join("attack.json"));
    assert_eq!(r["n"], 6);
    assert_eq!(r["seed"], 11);
    assert_eq!(r["eps"], 0.2);
    assert_eq!(r["components"], 1 + 6 + 15);
    assert_eq!(r["exact_sweep"].as_array().unwrap().len(), 3);
}

#[test]
fn xeb_and_noise_sweep_write_their_files() {
    let dir = tempfile::tempdir().unwrap();
    let x = dir.path().join("x");
    run_ok(&[
        "--out", x.to_str().unwrap(), "xeb", "--rows", "2", "--cols", "2", "--depth", "8", "--trajectories", "50",
        "--samples", "2000",
    ]);
    let r = read_json(&x.join("xeb.json"));
    assert_eq!(r["n"], 4);
    assert!(r["alpha_hat"].is_number() && r["no_error_fraction"].is_number());

    let f = dir.path().join("f");
    run_ok(&[
        "--out", f.to_str().unwrap(), "fig2-fig3", "--rows", "2", "--cols", "2", "--depth", "8", "--eps", "0,0.01",
        "--trajectories", "40", "--instances", "2",
    ]);
    for name in ["fig2.csv", "fig3.csv", "trajectories.csv", "manifest.json"] {
        assert!(f.join(name).exists(), "{name}");
    }
    let fig3 = std::fs::read_to_string(f.join("fig3.csv")).unwrap();
    // Two ε values times four weights.
    assert_eq!(fig3.lines().count(), 1 + 2 * 4);
}

#[test]
fn bad_input_exits_nonzero_with_json_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.json");
    std::fs::write(&cfg, r#"{"experiment": "fig1", "n": 0}"#).unwrap();
    let cases: Vec<Vec<&str>> = vec![
        vec!["--config", cfg.to_str().unwrap(), "fig1"],
        vec!["--config", cfg.to_str().unwrap(), "xeb"],
        vec!["--config", "/nonexistent/cfg.json", "fig1"],
        vec!["attack", "--eps", "1.5"],
        vec!["gen-iqp", "--n", "4", "--gamma", "1", "--couplings", "eighths"],
    ];
    for args in cases {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let err: Value = serde_json::from_slice(out.stderr.trim_ascii()).unwrap();
        assert!(err["error"].is_string() && err["message"].is_string(), "{err}");
    }
}

#[test]
fn generators_emit_loadable_json() {
    let out = run_ok(&["--seed", "9", "gen-iqp", "--n", "7", "--gamma", "2", "--phases", "continuous"]);
    let d = DiagonalCircuit::from_json(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert_eq!(d.n, 7);
    let again = run_ok(&["--seed", "9", "gen-iqp", "--n", "7", "--gamma", "2", "--phases", "continuous"]);
    assert_eq!(out.stdout, again.stdout);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    run_ok(&["--out", path.to_str().unwrap(), "gen-circuit", "--rows", "2", "--cols", "3", "--depth", "6"]);
    let c = Circuit::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(c.n(), 6);
    assert!(c.gate_count() > 0);
}

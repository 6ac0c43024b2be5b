use clifford_phase::artifact::read_matrix;
use serde_json::Value;
use std::f64::consts::SQRT_2;
use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_clifford-phase"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn artifact(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn stderr_error(out: &Output) -> Value {
    let text = String::from_utf8(out.stderr.clone()).unwrap();
    serde_json::from_str(text.trim()).expect("structured error on stderr")
}

#[test]
fn profile_artifact_carries_the_constants() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        &[
            "profile", "--well", "quartic", "--out", "p.json", "--csv", "p.csv",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let a = artifact(&dir.path().join("p.json"));
    let c = a["results"]["c_star"].as_f64().unwrap();
    assert!((c - 2.0 * SQRT_2 / 3.0).abs() <= 1e-8);
    for key in ["config", "versions", "grid", "timing"] {
        assert!(a.get(key).is_some(), "{key}");
    }
    assert_eq!(a["config"]["well"], "quartic");
    assert_eq!(a["timing"]["seconds"], Value::Null);
    let csv = std::fs::read_to_string(dir.path().join("p.csv")).unwrap();
    assert!(csv.starts_with("t,v,dv,d2v,d3v,eta,deta,d2eta\n"));
    assert_eq!(
        csv.lines().count(),
        1 + a["grid"]["nodes"].as_u64().unwrap() as usize
    );
}

#[test]
fn willmore_residual_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        &[
            "willmore", "--shape", "clifford", "--modes", "64", "--out", "w.json", "--matrix",
            "l.bin",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let a = artifact(&dir.path().join("w.json"));
    assert!(a["results"]["willmore_residual_sup"].as_f64().unwrap() <= 1e-8);
    let (rows, cols, data) =
        read_matrix(&std::fs::read(dir.path().join("l.bin")).unwrap()).unwrap();
    assert_eq!((rows, cols), (65, 65));
    assert!(data.iter().all(|x| x.is_finite()));
}

#[test]
fn solve_converges_and_writes_its_trace() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        &[
            "solve", "--eps", "0.05", "--out", "s.json", "--trace", "s.jsonl", "--csv", "phi.csv",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let a = artifact(&dir.path().join("s.json"));
    assert_eq!(a["results"]["converged"], true);
    assert!(a["results"]["volume_residual"].as_f64().unwrap().abs() <= 1e-8);
    let trace = std::fs::read_to_string(dir.path().join("s.jsonl")).unwrap();
    let lines: Vec<Value> = trace
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(
        lines.len() as u64,
        a["results"]["iterations"].as_u64().unwrap()
    );
    for key in ["iter", "update_norm", "proj_norm", "vol_residual", "lambda"] {
        assert!(lines[0].get(key).is_some(), "{key}");
    }
    let phi = std::fs::read_to_string(dir.path().join("phi.csv")).unwrap();
    assert_eq!(phi.lines().count(), 257);
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "solve", "--eps", "0.07", "--out", "a.json", "--trace", "a.jsonl",
    ];
    assert_eq!(run(&args, dir.path()).status.code(), Some(0));
    let first = (
        std::fs::read(dir.path().join("a.json")).unwrap(),
        std::fs::read(dir.path().join("a.jsonl")).unwrap(),
    );
    assert_eq!(run(&args, dir.path()).status.code(), Some(0));
    let second = (
        std::fs::read(dir.path().join("a.json")).unwrap(),
        std::fs::read(dir.path().join("a.jsonl")).unwrap(),
    );
    assert_eq!(first, second);
}

#[test]
fn config_file_is_read_and_flags_override_it() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("run.toml"),
        "well = [0.25, -0.25, -0.25, 0.25]\nmodes = 12\neps = 0.07\n",
    )
    .unwrap();
    let out = run(
        &[
            "geometry", "--config", "run.toml", "--modes", "48", "--out", "g.json",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let a = artifact(&dir.path().join("g.json"));
    assert_eq!(a["config"]["modes"], 48);
    assert_eq!(a["config"]["eps"], 0.07);
    assert_eq!(a["config"]["well"], "custom");
    assert_eq!(
        a["config"]["well_coefficients"].as_array().unwrap().len(),
        4
    );
}

#[test]
fn failed_checks_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["expansion", "--out", "e.json"], dir.path());
    let a = artifact(&dir.path().join("e.json"));
    let expected = if a["passed"] == true { 0 } else { 1 };
    assert_eq!(out.status.code(), Some(expected));
}

#[test]
fn usage_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["frobnicate"][..],
        &["profile", "--no-such-flag"],
        &["profile", "--well", "cubic"],
        &["solve", "--eps", "-1"],
        &["willmore", "--shape", "sphere"],
        &["profile", "--config", "missing.toml"],
    ] {
        let out = run(args, dir.path());
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert_eq!(
            stderr_error(&out)["error"]["kind"]
                .as_str()
                .map(|k| k == "usage" || k == "io"),
            Some(true)
        );
    }
    std::fs::write(dir.path().join("bad.toml"), "modes = 8\ncolour = \"red\"\n").unwrap();
    let out = run(&["geometry", "--config", "bad.toml"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn numerical_failures_exit_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["inner", "--eps", "0.1", "--half-width", "6"], dir.path());
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(stderr_error(&out)["error"]["kind"], "numerical");
}

#[test]
fn wall_clock_is_opt_in() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        &[
            "geometry",
            "--modes",
            "48",
            "--wall-clock",
            "--out",
            "g.json",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let a = artifact(&dir.path().join("g.json"));
    assert!(a["timing"]["seconds"].as_f64().unwrap() >= 0.0);
}

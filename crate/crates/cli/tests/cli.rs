//! End-to-end tests of the binary: exit codes, emitted files, determinism.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mra-seed"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn read(dir: &Path, name: &str) -> String {
    std::fs::read_to_string(dir.join(name)).unwrap_or_else(|_| panic!("missing {name}"))
}

#[test]
fn haar_synthesis_emits_reports_and_passes_strict() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "synthesize",
        "--seed",
        "box-momentum:2",
        "--radius",
        "3",
        "--s-max",
        "8",
        "--strict",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let filter_csv = read(dir.path(), "filter.csv");
    assert!(filter_csv.starts_with("n,re\n"));
    assert!(filter_csv.contains("7.0710678118654"));
    let relevance = read(dir.path(), "relevance.json");
    assert!(relevance.contains("\"schema\":1"));
    assert!(relevance.contains("\"pass\":true"));
    for f in ["filter.json", "overlap.json", "spectrum.csv", "symbol.csv"] {
        assert!(dir.path().join(f).exists(), "{f} missing");
    }
}

#[test]
fn gaussian_fails_strict_mode_on_sum_condition() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "synthesize",
        "--seed",
        "gaussian",
        "--radius",
        "5",
        "--s-max",
        "8",
        "--strict",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(4));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("sum: 1.08"), "{stdout}");
    // non-strict run on the same seed succeeds
    let out = run(&[
        "synthesize",
        "--seed",
        "gaussian",
        "--radius",
        "5",
        "--s-max",
        "8",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn even_width_box_exits_with_positivity_code() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "synthesize",
        "--seed",
        "box-momentum:4",
        "--radius",
        "4",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
    let failure = read(dir.path(), "failure.json");
    assert!(failure.contains("\"error\":\"positivity\""));
}

#[test]
fn bad_configuration_exits_2() {
    assert_eq!(run(&["synthesize", "--seed", "nonsense"]).status.code(), Some(2));
    assert_eq!(
        run(&["synthesize", "--seed", "box-momentum:0"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["synthesize", "--seed", "gaussian", "--radius", "0"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["synthesize", "--seed", "box-momentum:2k+1"]).status.code(),
        Some(2),
        "the 2k+1 form requires --k"
    );
    assert_eq!(run(&["examples", "12"]).status.code(), Some(2));
    // clap itself reports unknown flags as usage errors
    assert_eq!(run(&["synthesize", "--bogus"]).status.code(), Some(2));
}

#[test]
fn odd_width_form_matches_explicit_width() {
    let d1 = tempfile::tempdir().unwrap();
    let d2 = tempfile::tempdir().unwrap();
    let a = run(&[
        "synthesize",
        "--seed",
        "box-momentum:2k+1",
        "--k",
        "1",
        "--radius",
        "5",
        "--s-max",
        "48",
        "--out",
        d1.path().to_str().unwrap(),
    ]);
    let b = run(&[
        "synthesize",
        "--seed",
        "box-momentum:3",
        "--radius",
        "5",
        "--s-max",
        "48",
        "--out",
        d2.path().to_str().unwrap(),
    ]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(b.status.code(), Some(0));
    assert_eq!(read(d1.path(), "filter.json"), read(d2.path(), "filter.json"));
}

#[test]
fn output_is_byte_identical_across_runs() {
    let d1 = tempfile::tempdir().unwrap();
    let d2 = tempfile::tempdir().unwrap();
    for d in [&d1, &d2] {
        let out = run(&[
            "synthesize",
            "--seed",
            "gaussian",
            "--radius",
            "5",
            "--s-max",
            "12",
            "--out",
            d.path().to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
    }
    for f in ["filter.json", "relevance.json", "overlap.json", "filter.csv"] {
        assert_eq!(read(d1.path(), f), read(d2.path(), f), "{f} differs");
    }
}

#[test]
fn tabulated_seed_runs_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let n = 257;
    let p_max = 2.0;
    // normalized triangle-ish profile
    let step = p_max / (n - 1) as f64;
    let mut csv = format!("# domain 0 {p_max} {n}\n");
    let scale = (3.0f64 / p_max).sqrt();
    for j in 0..n {
        let p = step * j as f64;
        csv.push_str(&format!("{p},{},0\n", scale * (1.0 - p / p_max)));
    }
    let path = dir.path().join("seed.csv");
    std::fs::write(&path, csv).unwrap();
    let out = run(&[
        "synthesize",
        "--seed",
        &format!("tabulated:{}", path.display()),
        "--radius",
        "4",
        "--s-max",
        "8",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn examples_runner_reports_haar_golden() {
    let out = run(&["examples", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("example 2"));
    assert!(stdout.contains("[ ok ]"));
    assert!(!stdout.contains("[FAIL]"));
}

#[test]
fn sumrules_prints_rules_and_writes_json() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "sumrules",
        "--seed",
        "box-momentum:1",
        "--radius",
        "3",
        "--s-max",
        "8",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("weight_sum_vs_origin"));
    assert!(stdout.contains("row sums (momentum samples)"));
    let json = read(dir.path(), "sumrules.json");
    assert!(json.contains("total_overlap_vs_momentum_samples"));
}

#[test]
fn thread_cap_env_var_is_accepted() {
    let out = bin()
        .env("MRA_SEED_THREADS", "1")
        .args(["synthesize", "--seed", "box-momentum:1", "--radius", "2", "--s-max", "4"])
        .args(["--out", tempfile::tempdir().unwrap().path().to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

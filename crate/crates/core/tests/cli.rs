use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_harnack-lab"))
}

fn config(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn read_json(p: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn alpha_writes_summary_and_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("a");
    let o = run(&["alpha", "--config", config("alpha_sector.json").to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let stdout = String::from_utf8(o.stdout).unwrap();
    assert!(stdout.contains("\"verdict\": \"counterexample\""));
    for f in ["report.json", "config.json", "manifest.json", "f1.csv", "f1.svg"] {
        assert!(out.join(f).is_file(), "missing {f}");
    }
    let report = read_json(&out.join("report.json"));
    assert!((report["homogeneity"]["alpha1"].as_f64().unwrap() - 4.0).abs() < 1e-10);
}

#[test]
fn quiet_suppresses_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&[
        "alpha",
        "--quiet",
        "--config",
        config("alpha_cone.json").to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
}

#[test]
fn overrides_reach_the_config_echo_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&[
        "holder",
        "--quiet",
        "--config",
        config("holder_checkerboard.json").to_str().unwrap(),
        "--seed",
        "11",
        "--h",
        "0.03125",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let echo = read_json(&dir.path().join("config.json"));
    assert_eq!(echo["analysis"]["seed"], 11);
    assert_eq!(echo["grid"]["h"], 0.03125);
    assert!(echo.get("out_dir").is_none());
    let manifest = read_json(&dir.path().join("manifest.json"));
    assert_eq!(manifest["seed"], 11);
    assert_eq!(manifest["grid"]["h"], 0.03125);
}

#[test]
fn invalid_input_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"experiment": "alpha", "bogus": 1}"#).unwrap();
    let o = run(&["alpha", "--config", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bogus"));

    fs::write(&bad, "{ not json").unwrap();
    assert_eq!(run(&["alpha", "--config", bad.to_str().unwrap()]).status.code(), Some(2));

    let o = run(&["pair", "--config", config("alpha_sector.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2), "subcommand and config disagree");

    assert_eq!(run(&["growth", "--out", dir.path().to_str().unwrap()]).status.code(), Some(2), "no domain");
}

#[test]
fn missing_config_file_exits_with_one() {
    assert_eq!(run(&["alpha", "--config", "/nonexistent/config.json"]).status.code(), Some(1));
}

#[test]
fn insufficient_resolution_exits_with_three_and_records_the_failure() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&[
        "growth",
        "--config",
        config("growth_graph.json").to_str().unwrap(),
        "--h",
        "0.0625",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(3));
    let failure = read_json(&dir.path().join("failure.json"));
    assert_eq!(failure["error"], "insufficient_resolution");
    assert!(!dir.path().join("manifest.json").exists());
}

#[test]
fn parameter_sweep_writes_one_row_per_assignment() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["sweep", "--config", config("sweep_gamma.json").to_str().unwrap(), "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = fs::read_to_string(dir.path().join("sweep.csv")).unwrap();
    assert_eq!(String::from_utf8(o.stdout).unwrap(), csv);
    let mut rows = csv.lines();
    let header: Vec<&str> = rows.next().unwrap().split(',').collect();
    assert_eq!(&header[..3], ["row", "gamma", "status"]);
    let verdict = header.iter().position(|&c| c == "verdict").unwrap();
    let verdicts: Vec<String> = rows.map(|r| r.split(',').nth(verdict).unwrap().to_string()).collect();
    assert_eq!(verdicts.len(), 4);
    assert!(verdicts.iter().all(|v| v == "bounded"), "{verdicts:?}");
    assert!(dir.path().join("manifest.json").is_file());
}

#[test]
fn sweep_runs_threshold_tables() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&[
        "sweep",
        "--quiet",
        "--config",
        config("threshold_sweep.json").to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let table = fs::read_to_string(dir.path().join("threshold.csv")).unwrap();
    assert_eq!(table.lines().filter(|l| !l.starts_with('#')).count(), 1 + 7);
    assert!(run(&["sweep"]).status.code() == Some(2), "sweep without a config");
}

#[test]
fn reruns_are_byte_identical_across_output_directories() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    for out in [&a, &b] {
        let o = run(&["ratio", "--quiet", "--config", config("ratio_subcritical.json").to_str().unwrap(), "--out", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    let names: Vec<_> = fs::read_dir(&a).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert!(names.len() >= 5);
    for n in names {
        assert_eq!(fs::read(a.join(&n)).unwrap(), fs::read(b.join(&n)).unwrap(), "{n:?} differs");
    }
}

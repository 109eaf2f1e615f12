use std::fs;
use std::process::Command;

fn qrf() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_qrf"));
    c.env_remove("QRF_OUT_DIR");
    c
}

#[test]
fn runs_one_experiment_and_writes_reports() {
    let dir = tempfile::tempdir().unwrap();
    let status = qrf()
        .args(["run", "--experiment", "E7", "--out"])
        .arg(dir.path())
        .status()
        .unwrap();
    assert!(status.success());
    let csv = fs::read_to_string(dir.path().join("report.csv")).unwrap();
    assert!(csv.starts_with("experiment,claim,expected,measured,tolerance,pass\n"));
    assert!(csv.lines().skip(1).all(|l| l.starts_with("E7,") && l.ends_with(",true")));
    let summary: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["passed"], true);
    assert_eq!(summary["failed"], 0);
}

#[test]
fn output_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let status = qrf()
        .env("QRF_OUT_DIR", dir.path())
        .args(["run", "-e", "E1", "--set", "samples=10"])
        .status()
        .unwrap();
    assert!(status.success());
    assert!(dir.path().join("report.csv").exists());
}

#[test]
fn same_seed_same_report() {
    let run = |seed: &str| {
        let dir = tempfile::tempdir().unwrap();
        let status = qrf()
            .args(["run", "-e", "E1", "-e", "E4", "-e", "E6", "--seed", seed, "--out"])
            .arg(dir.path())
            .status()
            .unwrap();
        assert!(status.success());
        fs::read(dir.path().join("report.csv")).unwrap()
    };
    assert_eq!(run("11"), run("11"));
}

#[test]
fn config_file_and_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("e3.json");
    fs::write(
        &cfg,
        r#"{"experiments": ["E3"], "seed": 5, "params": {"g": "2", "alpha": ["0", "1"], "grid_n": 2048, "dt": "1/500"}}"#,
    )
    .unwrap();
    let out = dir.path().join("out");
    let status = qrf().args(["run", "--config"]).arg(&cfg).arg("--out").arg(&out).status().unwrap();
    assert!(status.success());
    let csv = fs::read_to_string(out.join("report.csv")).unwrap();
    assert!(csv.contains("grid finite-difference ⟨ẍ⟩ [α = 1]"));
    assert!(!csv.contains("[α = 1/2]"));
}

#[test]
fn configuration_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        vec!["run", "--set", "gravity=2"],
        vec!["run", "--set", "g=two"],
        vec!["run", "-e", "E9"],
        // a third of a cell cannot be shifted exactly
        vec!["run", "-e", "E2", "--set", "a=1/3"],
        vec!["run", "-e", "E3", "--set", "dt=1/3"],
    ] {
        let status = qrf().args(&args).arg("--out").arg(dir.path()).status().unwrap();
        assert_eq!(status.code(), Some(2), "{args:?}");
    }
    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"params": {"g": 2}}"#).unwrap();
    let status = qrf().args(["run", "--config"]).arg(&bad).status().unwrap();
    assert_eq!(status.code(), Some(2));
}

#[test]
fn shows_hamiltonians() {
    let out = qrf().args(["run", "--show-hamiltonian", "relative_cm"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("relative_cm: H ="), "{text}");
    let out = qrf().args(["run", "--show-hamiltonian", "nothing"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

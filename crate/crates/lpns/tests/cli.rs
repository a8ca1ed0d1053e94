//! Exit-code and file-layout checks against the installed binary.

use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn lpns(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lpns"))
        .args(args)
        .output()
        .expect("spawn lpns")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no exit code")
}

fn snapshots_in(dir: &Path) -> Vec<String> {
    let mut names: Vec<String> = std::fs::read_dir(dir)
        .unwrap()
        .filter_map(|e| e.ok())
        .map(|e| e.file_name().to_string_lossy().into_owned())
        .filter(|s| s.starts_with("snapshot_") && s.ends_with(".bin"))
        .collect();
    names.sort();
    names
}

#[test]
fn usage_errors_exit_1() {
    let no_sub = lpns(&[]);
    assert_eq!(code(&no_sub), 1);

    let bad_sub = lpns(&["simulate"]);
    assert_eq!(code(&bad_sub), 1);
    assert!(String::from_utf8_lossy(&bad_sub.stderr).contains("unknown subcommand"));

    let bad_flag = lpns(&["run", "--bogus", "3"]);
    assert_eq!(code(&bad_flag), 1);

    let bad_dt = lpns(&["run", "--n", "8", "--dt", "0", "--t-end", "0.1"]);
    assert_eq!(code(&bad_dt), 1);
    assert!(String::from_utf8_lossy(&bad_dt.stderr).contains("error:"));

    let bad_ic = lpns(&["run", "--n", "8", "--ic", "vortex"]);
    assert_eq!(code(&bad_ic), 1);

    let bad_verify_n = lpns(&["verify", "--n", "12"]);
    assert_eq!(code(&bad_verify_n), 1);
}

#[test]
fn zero_length_run_emits_one_snapshot_and_one_sample() {
    let dir = TempDir::new().unwrap();
    let out_dir = dir.path().to_str().unwrap();
    let run = lpns(&[
        "run", "--n", "8", "--nu", "0.1", "--t-end", "0", "--dt", "1e-3", "--ic", "random",
        "--k-peak", "2", "--p-max", "1", "--out-dir", out_dir,
    ]);
    assert_eq!(code(&run), 0, "stderr: {}", String::from_utf8_lossy(&run.stderr));

    let snaps = snapshots_in(dir.path());
    assert_eq!(snaps, vec!["snapshot_00000000.bin".to_string()]);

    let series = std::fs::read_to_string(dir.path().join("time_series.csv")).unwrap();
    let lines: Vec<&str> = series.lines().collect();
    assert_eq!(lines.len(), 2, "header plus the t = 0 sample");
    assert!(lines[0].starts_with("t,energy,enstrophy"));
    assert!(lines[1].starts_with("0.0000000000000000e0,"));

    assert!(dir.path().join("criteria.csv").is_file());
    let meta = std::fs::read_to_string(dir.path().join("run_meta")).unwrap();
    assert!(meta.contains("n = 8"));
}

#[test]
fn truncated_snapshot_fails_analysis_with_exit_3() {
    let dir = TempDir::new().unwrap();
    let out_dir = dir.path().to_str().unwrap();
    let run = lpns(&[
        "run", "--n", "8", "--nu", "0.1", "--t-end", "0", "--dt", "1e-3", "--ic", "random",
        "--k-peak", "2", "--out-dir", out_dir,
    ]);
    assert_eq!(code(&run), 0);

    let snap = dir.path().join(&snapshots_in(dir.path())[0]);
    let bytes = std::fs::read(&snap).unwrap();
    std::fs::write(&snap, &bytes[..bytes.len() / 2]).unwrap();

    let analysis_dir = TempDir::new().unwrap();
    let analyze = lpns(&[
        "analyze", "--snapshots", out_dir, "--out-dir", analysis_dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&analyze), 3, "stderr: {}", String::from_utf8_lossy(&analyze.stderr));

    let empty_dir = TempDir::new().unwrap();
    let none = lpns(&[
        "analyze",
        "--snapshots", empty_dir.path().to_str().unwrap(),
        "--out-dir", analysis_dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&none), 1, "an empty directory is a usage error, not bad data");
}

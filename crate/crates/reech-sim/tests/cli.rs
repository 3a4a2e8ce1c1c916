//! End-to-end checks of the `reech-sim` binary: flag handling, exit codes,
//! and output files.

use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_reech-sim"))
        .args(args)
        .output()
        .expect("failed to spawn reech-sim")
}

fn stderr(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

#[test]
fn successful_experiment_exits_zero_and_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("results");
    let output = run(&[
        "--protocol",
        "both",
        "--seeds",
        "1,2",
        "--max-rounds",
        "30",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(0), "stderr: {}", stderr(&output));
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.contains("Protocol comparison"));
    assert!(stdout.contains("REECH-ME vs LEACH"));
    for name in [
        "reech_seed1.csv",
        "reech_seed2.csv",
        "leach_seed1.csv",
        "leach_seed2.csv",
        "reech_aggregate.csv",
        "leach_aggregate.csv",
        "reech_summary.csv",
        "leach_summary.csv",
        "comparison.txt",
        "config.txt",
    ] {
        assert!(out.join(name).is_file(), "missing {name}");
    }
}

#[test]
fn default_experiment_with_five_seeds_writes_twelve_csvs() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("results");
    // low round cap keeps this fast; the file layout is what is under test
    let output = run(&["--max-rounds", "10", "--out", out.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(0), "stderr: {}", stderr(&output));
    let per_run = count_matching(&out, |n| n.contains("_seed") && n.ends_with(".csv"));
    let aggregates = count_matching(&out, |n| n.ends_with("_aggregate.csv"));
    assert_eq!(per_run, 10); // 2 protocols x 5 default seeds
    assert_eq!(aggregates, 2);
    assert!(out.join("comparison.txt").is_file());
}

fn count_matching(dir: &Path, predicate: impl Fn(&str) -> bool) -> usize {
    std::fs::read_dir(dir)
        .unwrap()
        .filter(|e| predicate(e.as_ref().unwrap().file_name().to_str().unwrap()))
        .count()
}

#[test]
fn invalid_drop_probability_exits_one_naming_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let output = run(&[
        "--drop-prob=-0.1",
        "--out",
        dir.path().join("x").to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(1));
    assert!(stderr(&output).contains("drop_probability"));
}

#[test]
fn unknown_protocol_exits_one() {
    let output = run(&["--protocol", "flood"]);
    assert_eq!(output.status.code(), Some(1));
    assert!(stderr(&output).contains("protocol"));
}

#[test]
fn malformed_seed_list_exits_one() {
    let output = run(&["--seeds", "1,two,3"]);
    assert_eq!(output.status.code(), Some(1));
    assert!(stderr(&output).contains("seeds"));
}

#[test]
fn unwritable_output_directory_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("blocker");
    std::fs::write(&blocker, "x").unwrap();
    let out = blocker.join("nested");
    let output = run(&[
        "--seeds",
        "1,2",
        "--max-rounds",
        "5",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn config_file_drives_the_run_and_flags_override_it() {
    let dir = tempfile::tempdir().unwrap();
    let config_path = dir.path().join("experiment.conf");
    let out = dir.path().join("results");
    std::fs::write(
        &config_path,
        "protocol = leach\nseeds = 3,4\nmax_rounds = 20\ndrop_probability = 0.2\n",
    )
    .unwrap();
    let output = run(&[
        "--config",
        config_path.to_str().unwrap(),
        "--seeds",
        "5,6",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(0), "stderr: {}", stderr(&output));
    // file told us leach; flag overrode the seeds
    assert!(out.join("leach_seed5.csv").is_file());
    assert!(out.join("leach_seed6.csv").is_file());
    assert!(!out.join("leach_seed3.csv").exists());
    assert!(!out.join("reech_seed5.csv").exists());
    let echo = std::fs::read_to_string(out.join("config.txt")).unwrap();
    assert!(echo.contains("seeds = 5,6"));
    assert!(echo.contains("drop_probability = 0.2"));
}

#[test]
fn invalid_config_file_line_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let config_path = dir.path().join("broken.conf");
    std::fs::write(&config_path, "max_rounds ten\n").unwrap();
    let output = run(&["--config", config_path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(1));
}

#[test]
fn missing_config_file_exits_two() {
    let output = run(&["--config", "/no/such/file.conf"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn help_exits_zero() {
    let output = run(&["--help"]);
    assert_eq!(output.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.contains("--protocol"));
    assert!(stdout.contains("--seeds"));
}

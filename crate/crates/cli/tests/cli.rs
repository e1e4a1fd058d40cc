//! End-to-end tests of the `cue` binary: output formats, determinism,
//! error paths and exit codes.

use std::process::{Command, Output};

fn cue(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cue"))
        .args(args)
        .env_remove("CUE_SEED")
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn same_seed_gives_byte_identical_output() {
    let a = cue(&["table2", "--dims", "6", "--samples", "400", "--seed", "1"]);
    let b = cue(&["table2", "--dims", "6", "--samples", "400", "--seed", "1"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}

#[test]
fn worker_count_does_not_change_output() {
    let base = &["table1", "--dims", "5", "--indices", "1,rand", "--samples", "600", "--seed", "3"];
    let w1 = cue(&[base as &[&str], &["--workers", "1"]].concat());
    let w4 = cue(&[base as &[&str], &["--workers", "4"]].concat());
    assert!(w1.status.success());
    assert_eq!(w1.stdout, w4.stdout);
}

#[test]
fn csv_line_count_is_header_plus_cells() {
    let out = cue(&["table2", "--dims", "4,6", "--samples", "50", "--seed", "0"]);
    let text = stdout_of(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 1 + 4, "2 rows x 2 dims + header");
    assert_eq!(lines[0], "experiment,dim,row,mean,std_error,count,seed");
}

#[test]
fn table2_default_shape_is_six_data_rows() {
    let out = cue(&["table2", "--samples", "30", "--seed", "0"]);
    let text = stdout_of(&out);
    assert_eq!(text.lines().count(), 1 + 6, "2 rows x 3 dims + header");
}

#[test]
fn json_report_parses_and_mirrors_the_config() {
    let out = cue(&[
        "table2", "--dims", "5", "--samples", "40", "--seed", "9", "--format", "json",
    ]);
    let text = stdout_of(&out);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["experiment_name"], "table2");
    assert_eq!(v["seed"], 9);
    assert_eq!(v["samples_per_cell"], 40);
    assert_eq!(v["cells"].as_array().unwrap().len(), 2);
    assert!(v["wall_time_seconds"].as_f64().unwrap() >= 0.0);
}

#[test]
fn histogram_counts_sum_to_samples_times_dim() {
    let out = cue(&[
        "histogram", "--dim", "14", "--samples", "1000", "--bins", "40", "--seed", "2",
    ]);
    let text = stdout_of(&out);
    let total: u64 = text
        .lines()
        .skip(1)
        .map(|line| {
            // count is the 6th field; the row label is quoted (it contains
            // a comma), so split from the right
            line.rsplit(',').nth(1).unwrap().parse::<u64>().unwrap()
        })
        .sum();
    assert_eq!(total, 14 * 1000);
}

#[test]
fn sample_dumps_a_square_matrix() {
    let out = cue(&["sample", "--dim", "3", "--seed", "4"]);
    let text = stdout_of(&out);
    assert_eq!(text.lines().count(), 1 + 9);
    assert_eq!(text.lines().next().unwrap(), "i,j,re,im");
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let out = cue(&["table2", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
}

#[test]
fn zero_dim_is_a_usage_error_on_stderr_only() {
    let out = cue(&["sample", "--dim", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("dim must be >= 1"), "stderr: {err}");
}

#[test]
fn unwritable_output_path_is_a_runtime_error() {
    let out = cue(&[
        "table2", "--dims", "4", "--samples", "10", "--out", "/nonexistent-dir/report.csv",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("cannot write output file"), "stderr: {err}");
}

#[test]
fn seed_env_var_matches_explicit_flag() {
    let with_env = Command::new(env!("CARGO_BIN_EXE_cue"))
        .args(["table2", "--dims", "5", "--samples", "60"])
        .env("CUE_SEED", "7")
        .output()
        .unwrap();
    let with_flag = cue(&["table2", "--dims", "5", "--samples", "60", "--seed", "7"]);
    assert!(with_env.status.success());
    assert_eq!(with_env.stdout, with_flag.stdout);

    let invalid = Command::new(env!("CARGO_BIN_EXE_cue"))
        .args(["table2", "--dims", "5", "--samples", "60"])
        .env("CUE_SEED", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(invalid.status.code(), Some(2));
    assert!(invalid.stdout.is_empty());
}

#[test]
fn explicit_seed_beats_the_environment() {
    let a = Command::new(env!("CARGO_BIN_EXE_cue"))
        .args(["table2", "--dims", "5", "--samples", "60", "--seed", "3"])
        .env("CUE_SEED", "7")
        .output()
        .unwrap();
    let b = cue(&["table2", "--dims", "5", "--samples", "60", "--seed", "3"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn out_file_matches_stdout_bytes() {
    let dir = std::env::temp_dir().join(format!("cue-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.csv");
    let to_file = cue(&[
        "table2", "--dims", "6", "--samples", "80", "--seed", "5", "--out",
        path.to_str().unwrap(),
    ]);
    assert!(to_file.status.success());
    assert!(to_file.stdout.is_empty());
    let from_file = std::fs::read(&path).unwrap();
    let to_stdout = cue(&["table2", "--dims", "6", "--samples", "80", "--seed", "5"]);
    assert_eq!(from_file, to_stdout.stdout);
    std::fs::remove_dir_all(&dir).ok();
}

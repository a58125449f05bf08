//! End-to-end checks of the command-line binary: exit codes, output tables,
//! warnings, and byte-level determinism.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_wellsep"))
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn tmp(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("cli");
    fs::create_dir_all(&dir).expect("tmp dir");
    dir.join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary launches")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

/// CSV body rows (comment and header lines stripped), split into fields.
fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#') && !l.is_empty())
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn discs_reports_fixture_geometry() {
    let out = run(&["discs", fixture("sym3.mtx").to_str().unwrap()]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("# schema = discs"));
    assert!(text.contains("# radius_mode = row"));
    assert!(text.contains("# seed = 42"));
    assert!(text.contains("# disjoint = true"));
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 3);
    // row 0: center 10, radius 0.4 (mirrored lower-triangle entry)
    assert_eq!(rows[0][1].parse::<f64>().unwrap(), 10.0);
    assert_eq!(rows[0][3].parse::<f64>().unwrap(), 0.4);
}

#[test]
fn parse_failures_exit_2_with_line_number() {
    let out = run(&["discs", fixture("bad_value.mtx").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(
        stderr(&out).contains("line 4"),
        "stderr should name the offending line: {}",
        stderr(&out)
    );

    let missing = run(&["discs", "/no/such/file.mtx"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn full_truncation_keeps_every_eigenvalue_fixed() {
    let out = run(&[
        "bounds",
        fixture("sym3.mtx").to_str().unwrap(),
        "--truncate",
        "1.0",
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let rows = csv_rows(&stdout(&out));
    assert_eq!(rows.len(), 3);
    for row in rows {
        assert_eq!(row[3].parse::<f64>().unwrap(), 0.0, "rel_error must vanish at c=1");
    }
}

#[test]
fn truncation_errors_respect_bounds_on_fixture() {
    let out = run(&[
        "bounds",
        fixture("sym3.mtx").to_str().unwrap(),
        "--truncate",
        "0.25",
    ]);
    assert!(out.status.success());
    for row in csv_rows(&stdout(&out)) {
        let rel: f64 = row[3].parse().unwrap();
        let bound: f64 = row[4].parse().unwrap();
        assert!(rel <= bound + 1e-10, "rel {rel} > bound {bound}");
    }
}

#[test]
fn overlapping_discs_warn_but_still_run() {
    let out = run(&[
        "bounds",
        fixture("overlap2.mtx").to_str().unwrap(),
        "--truncate",
        "0.5",
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    assert!(stderr(&out).contains("warning"), "stderr: {}", stderr(&out));
}

#[test]
fn precondition_violations_exit_4() {
    // a 1x1 request cannot produce a separated family
    let out = run(&["interlace", "--n", "1", "--t", "0.5", "--trials", "1"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stderr(&out).contains("precondition"));
}

#[test]
fn negative_step_rejected_at_flag_parse() {
    let out = run(&["interlace", "--n", "8", "--t", "-0.5", "--trials", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("nonnegative"));
}

#[test]
fn identical_flags_give_identical_bytes() {
    let args = [
        "condition", "--n", "8", "--trials", "2", "--seed", "7", "--format", "json",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));

    let c = run(&["perron", "--n", "10", "--trials", "2", "--seed", "5"]);
    let d = run(&["perron", "--n", "10", "--trials", "2", "--seed", "5"]);
    assert_eq!(stdout(&c), stdout(&d));
}

#[test]
fn generate_then_analyze_round_trip() {
    let path = tmp("gen6.mtx");
    let out = run(&[
        "generate",
        "--family",
        "sep-sym",
        "--n",
        "6",
        "--sep",
        "quadratic",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("%%MatrixMarket matrix array real symmetric"));

    let discs = run(&["discs", path.to_str().unwrap()]);
    assert!(discs.status.success());
    assert!(stdout(&discs).contains("# disjoint = true"));
    assert_eq!(csv_rows(&stdout(&discs)).len(), 6);
}

#[test]
fn generate_writes_matrix_market_to_stdout() {
    let out = run(&["generate", "--family", "S", "--n", "4"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("%%MatrixMarket matrix array real symmetric"));

    let hess = run(&["generate", "--family", "hessenberg", "--n", "4"]);
    assert!(stdout(&hess).starts_with("%%MatrixMarket matrix array real general"));
}

#[test]
fn out_flag_writes_the_same_table_as_stdout() {
    let path = tmp("discs.csv");
    let to_file = run(&[
        "discs",
        fixture("diag2.mtx").to_str().unwrap(),
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(to_file.status.success());
    let to_stdout = run(&["discs", fixture("diag2.mtx").to_str().unwrap()]);
    assert_eq!(fs::read_to_string(&path).unwrap(), stdout(&to_stdout));
}

#[test]
fn eigvec_trend_writes_sibling_table() {
    let path = tmp("bounds.csv");
    let out = run(&[
        "bounds",
        fixture("sym3.mtx").to_str().unwrap(),
        "--truncate",
        "0.5",
        "--eigvec-trend",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    assert!(path.exists());
    let trend = tmp("bounds.trend.csv");
    let text = fs::read_to_string(&trend).expect("trend table written next to main table");
    assert!(text.contains("# schema = eigvec_trend"));
    assert_eq!(csv_rows(&text).len(), 3);
}

#[test]
fn json_output_is_well_formed() {
    let out = run(&[
        "interlace", "--n", "6", "--t", "0.5", "--trials", "2", "--format", "json",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["metadata"]["schema"], "interlace");
    assert_eq!(doc["rows"].as_array().unwrap().len(), 2);
    let names: Vec<&str> = doc["columns"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(names.contains(&"interlaced"));
}

#[test]
fn perron_trace_covers_both_start_kinds() {
    let out = run(&["perron", "--n", "12", "--trials", "2", "--K", "24"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("# schema = perron_trace"));
    assert!(text.contains("# mean_saving = "));
    let rows = csv_rows(&text);
    assert!(rows.iter().any(|r| r[1] == "random"));
    assert!(rows.iter().any(|r| r[1] == "diagonal_seeded"));
    // iterations within one (trial, kind) block count up from 1
    assert_eq!(rows[0][2], "1");
}

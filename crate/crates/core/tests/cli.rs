//! End-to-end runs of the `hydrogen-kr` binary.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use hydrogen_kr::export::read_csv;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hydrogen-kr"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&[]).status.code(), Some(2));
    assert_eq!(run(&["kr-slice", "--n", "2"]).status.code(), Some(2));
    assert_eq!(run(&["kr-slice", "--n", "two", "--l", "0"]).status.code(), Some(2));
    assert_eq!(run(&["kr-slice", "--n", "1", "--l", "0", "--quantity", "phase"]).status.code(), Some(2));
    assert_eq!(run(&["kr-slice", "--n", "1", "--l", "0", "--format", "xml"]).status.code(), Some(2));

    let out = run(&["kr-slice", "--n", "2", "--l", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("invalid quantum numbers"), "{}", stderr(&out));

    let out = run(&["kr-slice", "--n", "1", "--l", "0", "--rmin", "3", "--rmax", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(run(&["verify", "--n-max", "11"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--n-max", "0"]).status.code(), Some(2));
}

#[test]
fn vanishing_equatorial_slice_asks_for_confirmation() {
    let out = run(&["kr-slice", "--n", "2", "--l", "1", "--nr", "3", "--np", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("--theta 0") && err.contains("--accept-suggested-angles"), "{err}");
    assert!(out.stdout.is_empty());

    let out = run(&[
        "kr-slice", "--n", "2", "--l", "1", "--nr", "3", "--np", "3", "--accept-suggested-angles",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("# theta=0.0"), "{text}");
    let values: Vec<f64> = text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.rsplit(',').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(values.len(), 9);
    assert!(values.iter().any(|&v| v > 0.0));

    // explicit angles are taken as given
    let out = run(&["kr-slice", "--n", "2", "--l", "1", "--nr", "3", "--np", "3", "--theta", "0.3", "--theta-p", "0.3"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn slice_file_output_records_metadata() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("nested/slice.csv");
    let out = run(&[
        "kr-slice", "--n", "1", "--l", "0", "--nr", "5", "--np", "4", "--convention", "paper_figure",
        "--quantity", "abs2", "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let table = read_csv(&path).unwrap();
    assert_eq!(table.meta("convention"), Some("paper_figure"));
    assert_eq!(table.meta("quantity"), Some("abs2"));
    assert!(table.meta("created_unix").is_some());
    assert_eq!(table.rows.len(), 20);
    let origin = table.column("value").unwrap()[0];
    let want = (2.0 * std::f64::consts::PI.powi(3)).powf(-3.0);
    assert!((origin - want).abs() < 1e-12 * want);
}

#[test]
fn complex_json_slice() {
    let out = run(&[
        "kr-slice", "--n", "2", "--l", "0", "--nr", "3", "--np", "2", "--quantity", "complex", "--format", "json",
        "--reproducible",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["metadata"]["quantity"], "complex");
    // one entry per (r, p) node, r-major, each a [re, im] pair
    assert_eq!(doc["values"].as_array().unwrap().len(), 6);
    assert_eq!(doc["values"][3].as_array().unwrap().len(), 2);
}

#[test]
fn reproducible_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for fmt in ["csv", "json"] {
        let a = dir.path().join(format!("a.{fmt}"));
        let b = dir.path().join(format!("b.{fmt}"));
        for path in [&a, &b] {
            let out = run(&[
                "kr-slice", "--n", "3", "--l", "2", "--m", "1", "--theta", "0.7", "--theta-p", "1.1", "--phi-p", "0.4",
                "--nr", "17", "--np", "13", "--format", fmt, "--reproducible", "--out", path.to_str().unwrap(),
            ]);
            assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
        }
        assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    }
}

#[test]
fn wavefunction_table() {
    let out = run(&["wavefn", "--n", "1", "--l", "0", "--points", "3", "--reproducible"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("x,radial,re,im"));
    let first = text.lines().find(|l| l.starts_with("0.0")).unwrap();
    let cols: Vec<f64> = first.split(',').map(|v| v.parse().unwrap()).collect();
    assert!((cols[1] - 2.0).abs() < 1e-15);
    assert!((cols[2] - 1.0 / std::f64::consts::PI.sqrt()).abs() < 1e-15);

    let out = run(&["wavefn", "--n", "1", "--l", "0", "--representation", "momentum", "--points", "2", "--max", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("representation=momentum"));
}

#[test]
fn extrema_of_two_p() {
    let out = run(&[
        "extrema", "--n", "2", "--l", "1", "--m", "1", "--nr", "64", "--np", "64", "--refine", "--reproducible",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    let row = text.lines().filter(|l| !l.starts_with('#')).nth(1).unwrap();
    let cols: Vec<f64> = row.split(',').map(|v| v.parse().unwrap()).collect();
    assert!((cols[0] - 2.0).abs() < 1e-3, "{row}");
    assert!((cols[1] - 5f64.sqrt() / 10.0).abs() < 1e-3, "{row}");
}

fn write_gaussian(path: &Path) {
    let mut text = String::from("q,re,im\n");
    for k in 0..=400 {
        let q = -10.0 + 0.05 * k as f64;
        let v = std::f64::consts::PI.powf(-0.25) * (-0.5 * q * q).exp();
        text.push_str(&format!("{q:.16e},{v:.16e},0\n"));
    }
    fs::write(path, text).unwrap();
}

#[test]
fn one_dimensional_commands() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("gauss.csv");
    write_gaussian(&input);
    let out_path = dir.path().join("w.csv");
    let out = run(&[
        "wigner1d", "--input", input.to_str().unwrap(), "--qmin", "-1", "--qmax", "1", "--nq", "3", "--pmin", "-1",
        "--pmax", "1", "--np", "3", "--out", out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let table = read_csv(&out_path).unwrap();
    assert_eq!(table.rows.len(), 9);
    let centre = table.rows[4].last().copied().unwrap();
    assert!((centre - 1.0 / std::f64::consts::PI).abs() < 1e-6, "{centre}");

    let out = run(&[
        "kr1d", "--input", input.to_str().unwrap(), "--nq", "3", "--np", "3", "--qmin", "-1", "--qmax", "1",
        "--pmin", "-1", "--pmax", "1", "--reproducible",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(stdout(&out).lines().filter(|l| !l.starts_with('#')).count(), 10);

    let out = run(&["kr1d", "--input", dir.path().join("missing.csv").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("missing.csv"));

    let bad = dir.path().join("bad.csv");
    fs::write(&bad, "q,re,im\n0,1\n").unwrap();
    assert_eq!(run(&["kr1d", "--input", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn verify_exit_codes() {
    let out = run(&["verify", "--n-max", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));

    let out = run(&["verify", "--n-max", "1", "--tolerance-overrides", "normalization=1e-30"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("FAIL"), "{}", stderr(&out));

    let out = run(&["verify", "--n-max", "1", "--tolerance-overrides", "bogus=1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_report_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&["verify", "--n-max", "1", "--format", "json", "--out", path.to_str().unwrap(), "--reproducible"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["schema_version"], 1);
}

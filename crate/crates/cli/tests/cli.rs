use std::fs;
use std::process::{Command, Output};

use wahba::bench::read_csv;

fn wahba(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wahba")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_tmp(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn solve_noiseless_axes() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_tmp(&dir, "axes.txt", "1 0 0 1 0 0\n0 1 0 0 1 0\n0 0 1 0 0 1\n");
    let out = wahba(&["solve", &path, "--solvers", "analytic", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let r = &v[0];
    assert_eq!(r["solver"], "analytic");
    assert!((r["lambda_max"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    let q: Vec<f64> = serde_json::from_value(r["quaternion"].clone()).unwrap();
    assert_eq!(q, [0.0, 0.0, 0.0, 1.0]);
    assert_eq!(r["iterations"], 0);
}

#[test]
fn solve_json_input_matches_line_input() {
    let dir = tempfile::tempdir().unwrap();
    let lines = write_tmp(&dir, "a.txt", "1 0 0 0.6 0.8 0 0.01\n0 0 1 0 0 1 0.02\n");
    let doc = write_tmp(
        &dir,
        "a.json",
        r#"[{"reference": [1,0,0], "body": [0.6,0.8,0], "sigma": 0.01},
            {"reference": [0,0,1], "body": [0,0,1], "sigma": 0.02}]"#,
    );
    let a = wahba(&["solve", &lines, "--format", "json"]);
    let b = wahba(&["solve", &doc, "--format", "json"]);
    assert_eq!(a.status.code(), Some(0));
    let strip = |o: &Output| {
        let mut v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        for r in v.as_array_mut().unwrap() {
            r.as_object_mut().unwrap().remove("wall_time_ns");
        }
        v
    };
    assert_eq!(strip(&a), strip(&b));
}

#[test]
fn single_observation_is_ambiguous() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_tmp(&dir, "one.txt", "1 0 0 0 1 0\n");
    let out = wahba(&["solve", &path]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stdout.is_empty());
}

#[test]
fn malformed_line_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_tmp(&dir, "bad.txt", "1 0 0 1 0 0\n1 0 0 1 0\n");
    let out = wahba(&["solve", &path]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    let missing = wahba(&["solve", "/nonexistent/obs.txt"]);
    assert_eq!(missing.status.code(), Some(1));
}

#[test]
fn roots_of_the_simple_quartic() {
    let out = wahba(&["roots", "0", "-2", "0", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let roots: Vec<f64> = stdout(&out).lines().map(|l| l.parse().unwrap()).collect();
    assert_eq!(roots.len(), 4);
    for (r, want) in roots.iter().zip([1.0, 1.0, -1.0, -1.0]) {
        assert!((r - want).abs() <= 1e-12);
    }
}

#[test]
fn roots_of_the_esoq_quartic() {
    let out = wahba(&["roots", "0", "-0.666666666666667", "-0.296296296294793", "-0.037037037036536"]);
    let first: f64 = stdout(&out).lines().next().unwrap().parse().unwrap();
    assert!((first - 0.999999999999155).abs() <= 1e-9);
}

#[test]
fn newton_trace() {
    let out = wahba(&["roots", "0", "-2", "0", "1", "--newton", "--x0", "1.1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let last = text.lines().last().unwrap();
    let words: Vec<&str> = last.split_whitespace().collect();
    let root: f64 = words[2].parse().unwrap();
    let count: usize = words[4].parse().unwrap();
    assert!((root - 1.0).abs() <= 1e-7 && root >= 1.0);
    assert!(count >= 15);
    let trace = text.lines().filter(|l| !l.starts_with('#') && l.starts_with(' ')).count();
    assert_eq!(trace, count);
}

#[test]
fn roots_without_real_solutions() {
    let out = wahba(&["roots", "0", "2", "0", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bench_csv_shape_and_round_trip() {
    let out =
        wahba(&["bench", "--trials", "20", "--seed", "42", "--solvers", "analytic,quest,davenport", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let records = read_csv(out.stdout.as_slice()).unwrap();
    assert_eq!(records.len(), 36);
    let mut buf = Vec::new();
    let mut w = csv::Writer::from_writer(&mut buf);
    for r in &records {
        w.serialize(r).unwrap();
    }
    drop(w);
    assert_eq!(buf, out.stdout);
}

#[test]
fn bench_case_one_matches_published_mean() {
    let out = wahba(&["bench", "--case", "1", "--trials", "4000", "--solvers", "analytic", "--format", "csv"]);
    let rec = &read_csv(out.stdout.as_slice()).unwrap()[0];
    assert!((rec.mean_phi_deg / 6.4957e-05 - 1.0).abs() <= 0.05);
}

#[test]
fn bench_output_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        let out = wahba(&[
            "bench",
            "--case",
            "3",
            "--trials",
            "10",
            "--seed",
            "7",
            "--format",
            "csv",
            "--output",
            path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let json = wahba(&["bench", "--case", "3", "--trials", "10", "--seed", "7", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 3);
}

#[test]
fn bench_rejects_bad_arguments() {
    assert_eq!(wahba(&["bench", "--case", "13"]).status.code(), Some(1));
    assert_eq!(wahba(&["bench", "--trials", "0"]).status.code(), Some(1));
    assert_eq!(wahba(&["bench", "--solvers", "esoq"]).status.code(), Some(1));
    assert_eq!(wahba(&["frobnicate"]).status.code(), Some(1));
}

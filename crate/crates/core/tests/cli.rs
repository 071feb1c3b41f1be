//! End-to-end runs of the `hermite-eq` binary.

use std::path::Path;
use std::process::{Command, Output};

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hermite-eq"))
        .args(args)
        .arg("--out")
        .arg(dir)
        .output()
        .unwrap()
}

fn read(dir: &Path, name: &str) -> String {
    std::fs::read_to_string(dir.join(name)).unwrap()
}

#[test]
fn density_json_for_the_free_half_line() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        dir.path(),
        &[
            "density",
            "--alpha",
            "0",
            "--a",
            "0",
            "--support",
            "half",
            "--grid",
            "200",
        ],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let json: serde_json::Value = serde_json::from_str(&read(dir.path(), "measure.json")).unwrap();
    assert_eq!(json["case"], "HL3");
    assert_eq!(json["sigma"].as_f64().unwrap(), 0.0);
    assert!((json["b"].as_f64().unwrap() - 1.63299).abs() < 1e-5);
    assert!(json
        .as_object()
        .unwrap()
        .values()
        .all(|v| !v.is_object() && !v.is_array()));
    let csv = read(dir.path(), "density.csv");
    assert_eq!(csv.lines().next(), Some("x,f"));
    assert_eq!(csv.lines().count(), 201);
}

#[test]
fn compare_ks_shrinks_with_degree() {
    let dir = tempfile::tempdir().unwrap();
    let ks = |n: &str| -> f64 {
        let out = run(
            dir.path(),
            &["compare", "--alpha", "0", "--a", "0", "--support", "sym", "--n", n],
        );
        assert!(out.status.success());
        let csv = read(dir.path(), "compare.csv");
        let row = csv.lines().nth(1).unwrap();
        row.split(',').nth(2).unwrap().parse().unwrap()
    };
    let (k20, k60) = (ks("20"), ks("60"));
    assert!(k60 < k20, "{k60} >= {k20}");
    assert!(read(dir.path(), "compare.svg").contains("<polyline"));
}

#[test]
fn coeffs_first_classical_row() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        dir.path(),
        &["coeffs", "--lambda", "0", "--a", "0", "--support", "sym", "--n", "1"],
    );
    assert!(out.status.success());
    let csv = read(dir.path(), "coeffs.csv");
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(rows.len(), 2);
    let f: Vec<f64> = rows[1].split(',').map(|s| s.parse().unwrap()).collect();
    assert_eq!(f[0], 0.0);
    assert!(f[1].abs() < 1e-15);
    assert!((f[2] * f[2] - 0.5).abs() < 1e-14);
}

#[test]
fn zeros_csv_has_one_row_per_zero() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        dir.path(),
        &["zeros", "--lambda", "1", "--a", "0.5", "--support", "half", "--n", "12"],
    );
    assert!(out.status.success());
    let csv = read(dir.path(), "zeros.csv");
    assert_eq!(csv.lines().next(), Some("i,zero,rescaled"));
    assert_eq!(csv.lines().count(), 13);
}

#[test]
fn figure_two_legends() {
    let dir = tempfile::tempdir().unwrap();
    assert!(run(dir.path(), &["figure", "--id", "2"]).status.success());
    let svg = read(dir.path(), "figure2.svg");
    assert!(svg.contains("a=1, sigma=1.000, b=2.600"));
    assert!(svg.contains("a=a_c, sigma=0.618, b=2.562"));
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [
        &[
            "energy",
            "--alpha",
            "0.5",
            "--a",
            "0.25",
            "--support",
            "sym",
            "--n",
            "8,16",
        ][..],
        &["figure", "--id", "4"][..],
        &["compare", "--alpha", "1", "--a", "0", "--n", "10,20"][..],
    ] {
        let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
        assert!(run(a.path(), args).status.success());
        assert!(run(b.path(), args).status.success());
        for entry in std::fs::read_dir(a.path()).unwrap() {
            let name = entry.unwrap().file_name();
            assert_eq!(
                std::fs::read(a.path().join(&name)).unwrap(),
                std::fs::read(b.path().join(&name)).unwrap(),
                "{args:?} {name:?}"
            );
        }
    }
}

#[test]
fn flag_errors_exit_two_with_usage() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["coeffs", "--a", "0", "--n", "3"][..],
        &["density", "--alpha", "-1"][..],
        &["density", "--alpha", "1", "--a", "-1"][..],
        &["zeros", "--lambda", "0", "--n", "0"][..],
        &["compare", "--alpha", "0", "--n", "20,10"][..],
        &["figure", "--id", "6"][..],
        &["coeffs", "--alpha", "0", "--n", "3"][..],
    ] {
        let out = run(dir.path(), args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).contains("--help"), "{args:?}");
    }
}

#[test]
fn numerical_failures_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["coeffs", "--lambda", "0", "--a", "38", "--n", "3"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("quadrature"));
    assert!(!dir.path().join("coeffs.csv").exists());
}

#[test]
fn unwritable_output_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("not-a-dir");
    std::fs::write(&file, "").unwrap();
    let out = run(&file, &["figure", "--id", "1"]);
    assert_eq!(out.status.code(), Some(1));
}

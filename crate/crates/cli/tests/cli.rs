use std::process::{Command, Output};

use tvsn::OperatorMatrix;

fn tvsn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tvsn"))
        .args(args)
        .env_remove("TVSN_TOLERANCE")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// The value on the final `RESULT` line.
fn result(o: &Output) -> String {
    let s = stdout(o);
    let last = s.lines().last().unwrap_or_default().to_string();
    last.strip_prefix("RESULT ")
        .unwrap_or_else(|| panic!("no RESULT line in {s:?}"))
        .to_string()
}

fn result_f64(o: &Output) -> f64 {
    result(o).parse().unwrap()
}

#[test]
fn vacuum_six_j() {
    let o = tvsn(&["q6j", "--r", "3", "0", "0", "0", "0", "0", "0"]);
    assert!(o.status.success());
    assert_eq!(result_f64(&o), 1.0);
}

#[test]
fn q6j_residual_check() {
    let o = tvsn(&["q6j", "--r", "5", "--check"]);
    assert!(o.status.success());
    assert!(result_f64(&o) < 1e-10);
    assert!(stdout(&o).contains("pentagon"));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["q6j", "--r", "2", "0", "0", "0", "0", "0", "0"][..],
        &["q6j", "--r", "3", "0", "0", "0"],
        &["q6j", "--r", "3", "0", "0", "0", "0", "0", "x"],
        &["q6j", "--r", "3"],
        &["tv", "--manifold", "no-such-thing", "--r", "3"],
        &["tv", "--r", "3"],
        &["verify", "--lattice", "honeycomb-torus:zz", "--r", "3"],
        &["spectrum", "--lattice", "/nonexistent/lattice.txt", "--r", "3"],
        &["bogus"],
    ] {
        let o = tvsn(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn closed_invariant() {
    let o = tvsn(&["tv", "--manifold", "S3_5tet", "--r", "3"]);
    assert!(o.status.success());
    assert!((result_f64(&o) - 0.5).abs() < 1e-12);
}

#[test]
fn manifold_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s3.tri");
    std::fs::write(&path, tvsn::complex3::write_triangulation(&tvsn::complex3::s3_5tet())).unwrap();
    let o = tvsn(&["tv", "--manifold", path.to_str().unwrap(), "--r", "4"]);
    assert!(o.status.success());
    assert!((result_f64(&o) - 0.25).abs() < 1e-12);
}

#[test]
fn spectrum_of_the_torus() {
    let o = tvsn(&["spectrum", "--lattice", "honeycomb-torus:2", "--r", "3"]);
    assert!(o.status.success());
    assert!((result_f64(&o) + 6.0).abs() < 1e-9);
    assert!(stdout(&o).contains("degeneracy    4"));
}

#[test]
fn verify_passes_and_fails() {
    let o = tvsn(&["verify", "--lattice", "honeycomb-torus:2", "--r", "3"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("PASS"));
    assert!(result_f64(&o) < 1e-9);
    let strict = Command::new(env!("CARGO_BIN_EXE_tvsn"))
        .args(["verify", "--lattice", "honeycomb-torus:2", "--r", "3"])
        .env("TVSN_TOLERANCE", "0")
        .output()
        .unwrap();
    assert_eq!(strict.status.code(), Some(1));
    assert!(stdout(&strict).contains("FAIL"));
    let bad = Command::new(env!("CARGO_BIN_EXE_tvsn"))
        .args(["verify", "--lattice", "honeycomb-torus:2", "--r", "3"])
        .env("TVSN_TOLERANCE", "loose")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn cylinder_matrix_file_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.txt");
    let o = tvsn(&[
        "tv",
        "--cylinder",
        "honeycomb-torus:2",
        "--r",
        "3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!((result_f64(&o) - 4.0).abs() < 1e-9);
    let text = std::fs::read(&path).unwrap();
    let m = OperatorMatrix::read_dense_text(text.as_slice()).unwrap();
    assert_eq!(m.dim(), 64);
    assert!(m.idempotency_defect() < 1e-10);
    let mut again = Vec::new();
    m.write_dense_text(&mut again).unwrap();
    assert_eq!(again, text);
}

#[test]
fn generated_lattice_feeds_verify() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("l.txt");
    let p = path.to_str().unwrap();
    let o = tvsn(&["honeycomb-torus", "--rows", "2", "--cols", "1", "--out", p]);
    assert!(o.status.success());
    assert_eq!(result(&o), "6");
    let v = tvsn(&["verify", "--lattice", p, "--r", "3"]);
    assert!(v.status.success(), "{}", stdout(&v));
    // stdout mode prints only the lattice
    let s = tvsn(&["honeycomb-torus", "--rows", "2", "--cols", "1"]);
    assert_eq!(stdout(&s), std::fs::read_to_string(&path).unwrap());
}

#[test]
fn output_is_the_same_for_any_thread_count() {
    let run = |n: &str| {
        stdout(&tvsn(&[
            "--threads",
            n,
            "tv",
            "--cylinder",
            "honeycomb-torus:2",
            "--r",
            "4",
        ]))
    };
    assert_eq!(run("1"), run("4"));
    assert_eq!(
        tvsn(&["--threads", "0", "q6j", "--r", "3", "--check"]).status.code(),
        Some(2)
    );
}

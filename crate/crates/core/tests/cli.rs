//! The binary's output and exit codes.

use std::process::{Command, Output};

fn run(cache: &std::path::Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cubic-census"))
        .env("CUBIC_CENSUS_CACHE", cache)
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn fields_and_analyze() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["fields", "--dmax", "25"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1 complex cubic fields with |d_K| <= 25\n");
    let o = run(dir.path(), &["fields", "--dmax", "10"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "0 complex cubic fields with |d_K| <= 10\n"));
    let a = run(dir.path(), &["analyze", "--poly", "0,-1,-1"]);
    let b = run(dir.path(), &["analyze", "--poly", "0,-1,-1"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    for needle in ["d_K: -23", "splitting at 2", "splitting at 3", "fundamental unit", "R_K: 0.2811995743", "h_K: 1"] {
        assert!(text.contains(needle), "missing {needle:?} in\n{text}");
    }
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(dir.path(), &["analyze", "--poly", "0,0,-1"]).status.code(), Some(2));
    assert_eq!(run(dir.path(), &["analyze", "--poly", "0,1"]).status.code(), Some(2));
    assert_eq!(run(dir.path(), &["count", "--primes", "2", "--grid", "100"]).status.code(), Some(2));
    assert_eq!(run(dir.path(), &["count", "--grid", "1000,100"]).status.code(), Some(2));
    assert_eq!(run(dir.path(), &["zeta", "--s", "1.5", "--cutoff", "1"]).status.code(), Some(3));
    assert_eq!(run(dir.path(), &["count", "--grid", "300", "--ceiling", "1"]).status.code(), Some(4));
}

#[test]
fn count_then_zeta() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["count", "--primes", "2,3", "--grid", "100"]);
    assert_eq!(o.status.code(), Some(0));
    let csv = stdout(&o);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0], "x,pi_S,li,x_over_log_x,norm_err,pi_tilde_lo,pi_tilde_hi,ambiguous_count");
    assert!(lines[1].starts_with("100,28,"));
    let cutoff = (100f64.ln() / 3.0).to_string();
    let z = run(dir.path(), &["zeta", "--s", "1.2,1.5,2.0,1.5+3i", "--cutoff", &cutoff]);
    assert_eq!(z.status.code(), Some(0), "{}", String::from_utf8_lossy(&z.stderr));
    let rows: Vec<Vec<String>> = stdout(&z).lines().skip(1).map(|l| l.split(',').map(String::from).collect()).collect();
    assert_eq!(rows.len(), 4);
    for r in &rows[..3] {
        assert_eq!(r[4], "0");
        assert!(r[5].parse::<f64>().unwrap() <= 1e-12);
    }
    assert_ne!(rows[3][4], "0");
}

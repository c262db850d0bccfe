//! End-to-end checks of the command-line interface: exit codes, cache
//! round-trips and byte-stable JSON output.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cartanlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn construct_writes_a_loadable_dump() {
    let dir = std::env::temp_dir().join(format!("cartanlab-cli-test-{}", std::process::id()));
    let out = run(&[
        "construct", "--family", "W", "--p", "5", "--m", "1", "--n", "1",
        "--cache-dir", dir.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(dir.join("W_p5_n1.json")).expect("cache file exists");
    let alg = cartanlab::cache::read_dump(&text).expect("dump parses");
    assert_eq!(alg.dim, 5);
    assert_eq!(alg.p, 5);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn verify_exit_codes_follow_the_expectation_grid() {
    // A plain pass.
    let out = run(&["verify", "--family", "K", "--p", "5", "--n", "1,1,1"]);
    assert!(out.status.success());
    // An expected failure still exits 0.
    let out = run(&["verify", "--family", "W", "--p", "3", "--m", "1", "--n", "1"]);
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("\"matches_expectation\": true"), "stdout: {stdout}");
    assert!(stdout.contains("G III"));
}

#[test]
fn usage_errors_exit_2() {
    let cases: &[&[&str]] = &[
        &["construct", "--family", "K", "--p", "2", "--n", "1,1,1"],
        &["construct", "--family", "Q", "--p", "5", "--n", "1"],
        &["counterexample", "bogus"],
        &["construct", "--family", "W", "--p", "4", "--n", "1"],
        &["verify", "--family", "W", "--p", "5", "--n", "1", "--criterion", "theorem"],
    ];
    for args in cases {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "args: {args:?}");
    }
}

#[test]
fn counterexamples_reproduce() {
    for name in ["rumynin", "contact_p3"] {
        let out = run(&["counterexample", name]);
        assert!(out.status.success(), "{name}");
        let stdout = String::from_utf8_lossy(&out.stdout);
        assert!(stdout.contains("\"reproduced\": true"), "{name}: {stdout}");
    }
}

#[test]
fn json_reports_are_byte_stable() {
    let args = ["invariants", "--family", "H", "--p", "5", "--n", "1,1", "--seed", "3"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

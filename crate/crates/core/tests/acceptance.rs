//! Acceptance gate: eleven criteria, one printed pass/fail line each.
//!
//! Criteria 1-10 are the rows of the deterministic self-test grid; criterion
//! 11 checks that two self-test runs with the same seed serialize to
//! byte-identical JSON.

use cartanlab::selftest;

#[test]
fn acceptance() {
    let seed = 42u64;
    let start = std::time::Instant::now();
    let report = selftest::run(seed);
    let mut all_ok = true;

    for row in &report.rows {
        let verdict = if row.passed { "pass" } else { "FAIL" };
        println!("[{verdict}] criterion {}: {}", row.id, row.description);
        for d in &row.details {
            println!("        - {d}");
        }
        all_ok &= row.passed;
    }

    let second = selftest::run(seed);
    let deterministic = report.to_json() == second.to_json();
    let verdict = if deterministic { "pass" } else { "FAIL" };
    println!("[{verdict}] criterion 11-determinism: two runs with seed {seed} produce byte-identical JSON");
    all_ok &= deterministic;

    println!("acceptance wall time: {:.1}s", start.elapsed().as_secs_f64());
    assert!(all_ok, "one or more acceptance criteria failed; see lines above");
}

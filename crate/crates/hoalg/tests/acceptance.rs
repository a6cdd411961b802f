//! Acceptance criteria 1 to 10, one line of output per criterion.

use std::time::Instant;

use hoalg::selftest::{run, CRITERIA};

const SEED: u64 = 20240601;

#[test]
fn acceptance() {
    let mut failed = Vec::new();
    for id in 1..=CRITERIA.len() {
        let start = Instant::now();
        let outcome = run(id, SEED);
        let verdict = if outcome.passed { "PASS" } else { "FAIL" };
        println!(
            "[{id}] {}: {verdict} ({}, {:.2} s)",
            outcome.name,
            outcome.detail,
            start.elapsed().as_secs_f64()
        );
        if !outcome.passed {
            failed.push(outcome);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:#?}");
}

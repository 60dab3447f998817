//! Acceptance suite: one test per criterion, each printing its pass/fail
//! line. `cargo test --test acceptance -- --nocapture` shows the report;
//! the CLI command `verify-all` runs the same battery.

use unicusp::verify::{run_criterion, CriterionResult};

const SEED: u64 = 0x5EED;

fn run(id: usize) -> CriterionResult {
    let r = run_criterion(id, SEED);
    println!(
        "criterion {:02} {:<28} {} ({} ms) {}",
        r.id,
        r.name,
        if r.passed { "PASS" } else { "FAIL" },
        r.millis,
        r.detail
    );
    r
}

#[test]
fn criterion_01_euclid_identities() {
    let r = run(1);
    assert!(r.passed, "{}", r.detail);
    assert!(r.millis < 5_000, "over budget: {} ms", r.millis);
}

#[test]
fn criterion_02_cubic_dimension_table() {
    let r = run(2);
    assert!(r.passed, "{}", r.detail);
    assert!(r.millis < 2_000, "over budget: {} ms", r.millis);
}

#[test]
fn criterion_03_window_size_identity() {
    let r = run(3);
    assert!(r.passed, "{}", r.detail);
    assert!(r.millis < 30_000, "over budget: {} ms", r.millis);
}

#[test]
fn criterion_04_series_vs_euclid_oracle() {
    let r = run(4);
    assert!(r.passed, "{}", r.detail);
}

#[test]
fn criterion_05_nu_catalog() {
    let r = run(5);
    assert!(r.passed, "{}", r.detail);
}

#[test]
fn criterion_06_dicritical_engine() {
    let r = run(6);
    assert!(r.passed, "{}", r.detail);
    assert!(r.millis < 60_000, "over budget: {} ms", r.millis);
}

#[test]
fn criterion_07_plan_consistency() {
    let r = run(7);
    assert!(r.passed, "{}", r.detail);
}

#[test]
fn criterion_08_obstruction_analysis() {
    let r = run(8);
    assert!(r.passed, "{}", r.detail);
    assert!(r.millis < 60_000, "over budget: {} ms", r.millis);
}

#[test]
fn criterion_09_erasability_corpus() {
    let r = run(9);
    assert!(r.passed, "{}", r.detail);
    assert!(r.millis < 120_000, "over budget: {} ms", r.millis);
}

#[test]
fn criterion_10_graph_calculus_conservation() {
    let r = run(10);
    assert!(r.passed, "{}", r.detail);
    assert!(r.millis < 30_000, "over budget: {} ms", r.millis);
}

#[test]
fn criterion_11_contraction_invariance() {
    let r = run(11);
    assert!(r.passed, "{}", r.detail);
}

#[test]
fn criterion_12_birationality_probe() {
    let r = run(12);
    assert!(r.passed, "{}", r.detail);
    assert!(r.millis < 30_000, "over budget: {} ms", r.millis);
}

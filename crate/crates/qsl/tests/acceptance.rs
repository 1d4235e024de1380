//! The acceptance gate: one test per criterion of the desk-scale
//! battery, each printing a single pass/fail line (visible with
//! `cargo test --test acceptance -- --nocapture`).

use qsl::suite::{self, CriterionResult};

fn check(result: CriterionResult) {
    let status = if result.passed { "PASS" } else { "FAIL" };
    println!(
        "criterion-{}: {} {} ({})",
        result.id, status, result.name, result.detail
    );
    assert!(
        result.passed,
        "criterion {} ({}) failed: {}",
        result.id, result.name, result.detail
    );
}

#[test]
fn criterion_1_axiom_regression() {
    check(suite::criterion_1());
}

#[test]
fn criterion_2_worked_validities() {
    check(suite::criterion_2());
}

#[test]
fn criterion_3_theorem_library() {
    check(suite::criterion_3());
}

#[test]
fn criterion_4_non_adjunction() {
    check(suite::criterion_4());
}

#[test]
fn criterion_5_cat_model() {
    check(suite::criterion_5());
}

#[test]
fn criterion_6_negation_square() {
    check(suite::criterion_6());
}

#[test]
fn criterion_7_hook_equivalence() {
    check(suite::criterion_7());
}

#[test]
fn criterion_8_enumerator_oracle() {
    check(suite::criterion_8());
}

#[test]
fn full_suite_passes() {
    let results = suite::run_acceptance_suite();
    assert_eq!(results.len(), 8);
    assert!(results.iter().all(|r| r.passed));
}

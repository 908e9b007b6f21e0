//! End-to-end acceptance checks, one test per criterion. Each prints a single
//! PASS/FAIL line (with the first few mismatches underneath) and asserts the
//! runtime limit.

use std::time::{Duration, Instant};

use edim2_core::verify::{self, CheckReport};

fn run(criterion: u32, limit_secs: u64, check: impl FnOnce() -> CheckReport) {
    let start = Instant::now();
    let report = check();
    let elapsed = start.elapsed();
    println!(
        "criterion {criterion}: {report} [{:.2}s]",
        elapsed.as_secs_f64()
    );
    assert!(report.passed, "criterion {criterion} failed:\n{report}");
    assert!(
        elapsed < Duration::from_secs(limit_secs),
        "criterion {criterion} took {elapsed:?}"
    );
}

#[test]
fn criterion_01_gl2z_classes() {
    run(1, 10, verify::gl2z_classes);
}

#[test]
fn criterion_02_containment_lattice() {
    run(2, 30, verify::gl2z_lattice);
}

#[test]
fn criterion_03_standard_fan_automorphisms() {
    run(3, 1, verify::standard_fan_automorphisms);
}

#[test]
fn criterion_04_three_group_equivalence() {
    run(4, 300, verify::three_group_equivalence);
}

/// The stated 2-group rule (trivial torus intersection suffices) disagrees
/// with both oracles on groups whose translations cannot be removed, so this
/// criterion fails. The corrected rule is checked below.
#[test]
fn criterion_05_two_group_equivalence() {
    run(5, 600, verify::two_group_equivalence);
}

#[test]
fn criterion_05_two_group_equivalence_corrected_rule() {
    run(5, 600, verify::two_group_equivalence_corrected);
}

#[test]
fn criterion_06_versality_conditions() {
    run(6, 120, verify::versality_conditions);
}

#[test]
fn criterion_07_sylow_reduction() {
    run(7, 300, || verify::sylow_reduction(200, 7));
}

#[test]
fn criterion_08_polyhedral_normal_structure() {
    run(8, 60, verify::polyhedral_normal_structure);
}

#[test]
fn criterion_09_pgl2_lifts() {
    run(9, 60, verify::pgl2_lifts);
}

#[test]
fn criterion_10_essential_dimension_regression() {
    run(10, 300, verify::essential_dimension_regression);
}

#[test]
fn criterion_11_character_tables() {
    run(11, 300, verify::character_tables);
}

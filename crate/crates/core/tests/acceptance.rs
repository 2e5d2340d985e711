//! The acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line. Run with `cargo test -p hurlab-core --test acceptance` (add
//! `-- --nocapture` to see the lines for passing criteria too).

use hurlab_core::verify::{self, VerifyConfig};

fn run(criterion: fn(&VerifyConfig) -> verify::CriterionReport) {
    let cfg = VerifyConfig::default();
    let report = criterion(&cfg);
    println!("{}", report.line());
    assert!(report.passed, "{}", report.line());
}

#[test]
fn criterion_01_hurwitz_classification() {
    run(verify::criterion_1_hurwitz_classification);
}

#[test]
fn criterion_02_pi0_classification() {
    run(verify::criterion_2_pi0_classification);
}

#[test]
fn criterion_03_norm_sum_identity() {
    run(verify::criterion_3_norm_sum_identity);
}

#[test]
fn criterion_04_worked_polynomial() {
    run(verify::criterion_4_worked_polynomial);
}

#[test]
fn criterion_05_completion_arithmetic() {
    run(verify::criterion_5_completion_arithmetic);
}

#[test]
fn criterion_06_braiding_identity() {
    run(verify::criterion_6_braiding_identity);
}

#[test]
fn criterion_07_main_diagram_commutativity() {
    run(verify::criterion_7_main_diagram_commutativity);
}

#[test]
fn criterion_08_propagator_property() {
    run(verify::criterion_8_propagator_property);
}

#[test]
fn criterion_09_stable_cohomology_dimensions() {
    run(verify::criterion_9_stable_cohomology_dimensions);
}

#[test]
fn criterion_10_dimension_formulas() {
    run(verify::criterion_10_dimension_formulas);
}

#[test]
fn criterion_11_numerical_robustness() {
    run(verify::criterion_11_numerical_robustness);
}

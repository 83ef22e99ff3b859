//! Acceptance suite: each verification criterion at its stated tolerance,
//! printing one pass/fail line per criterion.
//!
//! Run with `cargo test --release -p ymsim-core --test acceptance -- --nocapture`
//! (the determinism and Trotter-order criteria are much faster in release).

use ymsim_core::verify;

fn check(result: verify::SuiteResult) {
    println!("{}", result.line());
    assert!(result.passed, "{}", result.line());
}

#[test]
fn criterion_1_operator_algebra() {
    check(verify::criterion_operator_algebra());
}

#[test]
fn criterion_2_cross_path_decomposition() {
    check(verify::criterion_cross_path());
}

#[test]
fn criterion_3_synthesis_correctness() {
    check(verify::criterion_synthesis());
}

#[test]
fn criterion_4_trotter_order() {
    check(verify::criterion_trotter_order());
}

#[test]
fn criterion_5_gate_count_bounds() {
    check(verify::criterion_gate_bounds());
}

#[test]
fn criterion_6_qubit_count_formula() {
    check(verify::criterion_qubit_count());
}

#[test]
fn criterion_7_t_matrix_singlet() {
    check(verify::criterion_t_matrix());
}

#[test]
fn criterion_8_conservation_laws() {
    check(verify::criterion_conservation());
}

#[test]
fn criterion_9_determinism_stability() {
    check(verify::criterion_determinism());
}

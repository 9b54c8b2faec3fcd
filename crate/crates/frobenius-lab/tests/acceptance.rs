//! The full acceptance gate: one test per criterion, one printed line each.
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use frobenius_lab::runner::suites::criterion;

fn check(id: u32) {
    let outcome = criterion(id);
    println!("{}", outcome.line());
    assert!(outcome.passed, "{}", outcome.detail);
}

#[test]
fn criterion_01_trace_oracle_equivalence() {
    check(1);
}

#[test]
fn criterion_02_hasse_bound() {
    check(2);
}

#[test]
fn criterion_03_deuring_cm_ratio() {
    check(3);
}

#[test]
fn criterion_04_cm_field_rigidity() {
    check(4);
}

#[test]
fn criterion_05_sato_tate_single_curve() {
    check(5);
}

#[test]
fn criterion_06_st_density_quadrature() {
    check(6);
}

#[test]
fn criterion_07_coincidence_q_oracle() {
    check(7);
}

#[test]
fn criterion_08_additive_energy_v_oracle() {
    check(8);
}

#[test]
fn criterion_09_census_equidistribution() {
    check(9);
}

#[test]
fn criterion_10_michel_sum_bound() {
    check(10);
}

#[test]
fn criterion_11_counter_brute_force() {
    check(11);
}

#[test]
fn criterion_12_st_setsum_desk_scale() {
    check(12);
}

#[test]
fn criterion_13_farey_count_asymptotic() {
    check(13);
}

#[test]
fn criterion_14_worker_determinism() {
    check(14);
}

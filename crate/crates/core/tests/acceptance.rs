//! One test per acceptance criterion. Each prints its verdict line to the
//! real stdout so that the summary survives output capture. Criteria run one
//! at a time so that their time limits measure their own work.

use std::io::Write;
use std::sync::Mutex;

use hydro2d::verify::{self, CriterionReport};

static SERIAL: Mutex<()> = Mutex::new(());

fn check(criterion: fn() -> CriterionReport) {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let report = criterion();
    let line = format!("{report}\n");
    let _ = std::io::stdout().write_all(line.as_bytes());
    assert!(report.passed, "{report}");
}

#[test]
fn criterion_1_free_atom_table() {
    check(verify::criterion_1);
}

#[test]
fn criterion_2_free_density_quadrature() {
    check(verify::criterion_2);
}

#[test]
fn criterion_3_free_limit_at_forty() {
    check(verify::criterion_3);
}

#[test]
fn criterion_4_upper_bound() {
    check(verify::criterion_4);
}

#[test]
fn criterion_5_energy_inversion() {
    check(verify::criterion_5);
}

#[test]
fn criterion_6_complexity_ordering() {
    check(verify::criterion_6);
}

#[test]
fn criterion_7_structural_extrema() {
    check(verify::criterion_7);
}

#[test]
fn criterion_8_uncertainty_on_default_sweep() {
    check(verify::criterion_8);
}

#[test]
fn criterion_9_variance_crossings() {
    check(verify::criterion_9);
}

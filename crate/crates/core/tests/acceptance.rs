use std::sync::OnceLock;

use rvd_core::acceptance::{run_all, AcceptanceConfig, CriterionReport};

fn reports() -> &'static [CriterionReport] {
    static REPORTS: OnceLock<Vec<CriterionReport>> = OnceLock::new();
    REPORTS.get_or_init(|| run_all(&AcceptanceConfig::default()))
}

fn criterion(id: usize) {
    let r = reports().iter().find(|r| r.id == id).expect("criterion exists");
    println!("{r}");
    assert!(r.passed, "{r}");
}

#[test]
fn criterion_01_tree_law() {
    criterion(1);
}

#[test]
fn criterion_02_cycle_law() {
    criterion(2);
}

#[test]
fn criterion_03_sharpness() {
    criterion(3);
}

#[test]
fn criterion_04_delta_bound() {
    criterion(4);
}

#[test]
fn criterion_05_block_law() {
    criterion(5);
}

#[test]
fn criterion_06_contraction_law() {
    criterion(6);
}

#[test]
fn criterion_07_conflict_law() {
    criterion(7);
}

#[test]
fn criterion_08_bipartite_reduction() {
    criterion(8);
}

#[test]
fn criterion_09_split_reduction() {
    criterion(9);
}

#[test]
fn criterion_10_chain() {
    criterion(10);
}

#[test]
fn criterion_11_size_formulas() {
    criterion(11);
}

#[test]
fn criterion_12_verifier_soundness() {
    criterion(12);
}

use hermitian_core::gf::FieldTower;
use hermitian_core::verify::{random_subgroups, run_suites, Fault, VerifyOptions};

#[test]
fn full_suite_passes_at_q4() {
    let t = FieldTower::for_q(4).unwrap();
    let r = run_suites(&t, &VerifyOptions::default()).unwrap();
    assert!(r.ok(), "{:?}", r.suites.iter().find(|s| !s.ok()));
    assert!(r.suites.iter().all(|s| s.total > 0 || s.name == "monotonicity"));
}

#[test]
fn flipped_matrix_entry_is_caught() {
    let t = FieldTower::for_q(4).unwrap();
    let opts = VerifyOptions { random_groups: 5, fault: Some(Fault::FlipMatrixEntry), ..Default::default() };
    let r = run_suites(&t, &opts).unwrap();
    let rel = r.suites.iter().find(|s| s.name == "relations").unwrap();
    assert!(!r.ok());
    assert!(rel.failure.as_deref().unwrap().contains("does not preserve the curve"));
}

#[test]
fn random_subgroups_are_reproducible() {
    let t = FieldTower::for_q(5).unwrap();
    let a: Vec<String> = random_subgroups(&t, 20, 7, 64).into_iter().map(|s| s.spec).collect();
    let b: Vec<String> = random_subgroups(&t, 20, 7, 64).into_iter().map(|s| s.spec).collect();
    assert_eq!(a, b);
    assert_eq!(a.len(), 20);
}

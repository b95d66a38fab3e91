use domroots::atlas::audit_fast_path;
use domroots::rational::pow10_inv;

#[test]
fn fast_path_matches_exact_on_ten_thousand_graphs() {
    let report = audit_fast_path(10_000, 9, 2024, &pow10_inv(9)).unwrap();
    eprintln!("{} graphs, {} escalated", report.samples, report.escalated);
    assert_eq!(report.samples, 10_000);
    assert!(report.mismatches.is_empty(), "{:?}", report.mismatches);
}

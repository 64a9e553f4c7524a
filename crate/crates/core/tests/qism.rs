use toda_core::qism::{ac_exchange_defect, check_rll, qism_suite, RllScope};
use toda_core::report::all_passed;

#[test]
fn exact_suite_up_to_four_sites() {
    for n in 1..=4 {
        let reports = qism_suite(n).unwrap();
        assert!(all_passed(&reports), "{reports:#?}");
    }
}

#[test]
fn printed_exchange_sign_fails_for_one_site() {
    assert!(!ac_exchange_defect(1, 1).unwrap().first_term().is_none());
}

#[test]
fn rll_scope_bounds() {
    assert!(check_rll(RllScope::Global { n: 6 }).is_err());
    assert!(check_rll(RllScope::Local { m: 4, n: 3 }).is_err());
}

use proptest::prelude::*;
use toda_core::report::all_passed;
use toda_core::separation::*;

#[test]
fn suite_passes_for_small_chains() {
    for n in 2..=4 {
        let reports = separation_suite(n, 50, 42, 1e-6).unwrap();
        assert!(all_passed(&reports), "{reports:#?}");
    }
}

#[test]
fn dif_and_measure_on_hundred_points() {
    let dif = separation_suite(2, 100, 1, 1e-6).unwrap();
    assert!(dif[0].passed());
    let three = separation_suite(3, 100, 2, 1e-6).unwrap();
    assert!(three[0].passed() && three[1].passed(), "{three:#?}");
}

#[test]
fn lagrange_fifty_samples() {
    for n in 1..=4 {
        assert!(check_lagrange_identity(n, 50, 11).unwrap().passed());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn wavefunction_symmetric_in_alpha(a in -2.0f64..2.0, b in -2.0f64..2.0, c in -2.0f64..2.0, l1 in -2.0f64..2.0, l2 in -2.0f64..2.0) {
        let x = sep_wavefunction(&SpectralParams(vec![a, b, c]), &[l1, l2]).unwrap();
        let y = sep_wavefunction(&SpectralParams(vec![c, a, b]), &[l1, l2]).unwrap();
        prop_assert!((x - y).norm() <= 1e-12 * x.norm());
    }

    #[test]
    fn measure_symmetric_and_nonnegative(a in -2.0f64..2.0, b in -2.0f64..2.0, c in -2.0f64..2.0) {
        let x = sep_measure(&[a, b, c]);
        let y = sep_measure(&[b, c, a]);
        prop_assert!(x >= 0.0);
        prop_assert!((x - y).abs() <= 1e-12 * x.max(1e-300));
    }
}

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use toda_core::gz::*;
use toda_core::report::all_passed;

#[test]
fn relations_and_serre_up_to_four() {
    for n in 2..=4 {
        let gl = check_gl_relations(n, 20, 42).unwrap();
        assert!(all_passed(&gl), "{gl:#?}");
        let serre = check_serre(n, 20, 42).unwrap();
        assert!(all_passed(&serre), "{serre:#?}");
    }
}

#[test]
fn vector_equations_on_fifty_arrays() {
    for n in 2..=3 {
        let reps = vector_suite(n, 50, 42, 1e-6).unwrap();
        assert!(all_passed(&reps), "{reps:#?}");
    }
}

#[test]
fn measure_sign_is_fixed_by_pair_count() {
    // every factor (a - b)(e^{2πb} - e^{2πa}) is negative for real a != b
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for size in 2..=4 {
        let pairs: usize = (1..size).map(|n| n * (n - 1) / 2).sum();
        for _ in 0..20 {
            let lam = random_real_array(size, 0.1, &mut rng);
            let m = gz_measure(&lam);
            assert!(m.im.abs() <= 1e-12 * m.norm());
            assert_eq!(m.re.signum(), if pairs.is_multiple_of(2) { 1.0 } else { -1.0 });
        }
    }
}

#[test]
fn apply_ratio_on_constant() {
    let lam = TriangularArray::from_real_levels(&[vec![0.1], vec![0.5, -0.6]]).unwrap();
    let lower = gz_generator(Generator::Lower(1), 2).unwrap();
    let (v, _) = lower.apply_ratio(lam.values(), |_| Ok(Complex64::new(1.0, 0.0))).unwrap();
    assert!((v + Complex64::i()).norm() < 1e-15);
}

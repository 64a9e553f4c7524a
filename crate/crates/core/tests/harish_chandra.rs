use toda_core::harish_chandra::*;

#[test]
fn gamma_product_identities() {
    for n in 2..=4 {
        let reps = hc_suite(n, 100, 42).unwrap();
        for r in &reps[..4] {
            assert!(r.passed(), "{r:?}");
        }
    }
}

#[test]
fn reduced_word_independence_rank_three() {
    let f = Character::unit(3);
    let w0 = WeylPermutation::longest(3);
    let l: Vec<_> = [0.9, -0.35, 0.2].iter().map(|&x| num_complex::Complex64::new(x, 0.0)).collect();
    let vals: Vec<_> = w0.all_reduced_words().iter().map(|w| m_function_word(w, &l, &f).unwrap()).collect();
    for v in &vals {
        assert!((v - vals[0]).norm() <= 1e-10 * vals[0].norm());
    }
}

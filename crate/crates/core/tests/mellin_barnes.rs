use num_complex::Complex64;
use proptest::prelude::*;
use toda_core::mellin_barnes::*;

const N2_ALPHA: [f64; 2] = [0.5, -0.5];
const N3_ALPHA: [f64; 3] = [0.7, 0.0, -0.7];
const N3_X: [f64; 3] = [0.3, 0.1, -0.4];

fn permutations(v: &[f64]) -> Vec<Vec<f64>> {
    if v.len() <= 1 {
        return vec![v.to_vec()];
    }
    let mut out = Vec::new();
    for k in 0..v.len() {
        let mut rest = v.to_vec();
        let head = rest.remove(k);
        for mut p in permutations(&rest) {
            p.insert(0, head);
            out.push(p);
        }
    }
    out
}

#[test]
fn two_particle_golden_values() {
    // (1/2π)∫ Γ(-i(λ-α1)) Γ(-i(λ-α2)) e^{iλ(x1-x2)} dλ · e^{iσ1 x2}, high-precision quadrature
    let cases = [
        (N2_ALPHA, [0.3, -0.2], Complex64::new(0.097_246_666_785_179_57, 0.0)),
        ([1.3, 0.2], [-1.0, 1.0], Complex64::new(0.695_473_345_214_749_9, 0.0)),
    ];
    for (alpha, x, golden) in cases {
        let r = whittaker_eval(2, &alpha, &x, 1e-10).unwrap();
        assert!((r.value - golden).norm() < 1e-10, "{:?} vs {golden}", r.value);
        let loose = whittaker_eval(2, &alpha, &x, 1e-6).unwrap();
        assert!((loose.value - golden).norm() < 1e-6);
    }
}

#[test]
fn self_consistency_under_refinement() {
    for (alpha, x) in [(N2_ALPHA.to_vec(), vec![0.3, -0.2]), (N3_ALPHA.to_vec(), N3_X.to_vec())] {
        let c = default_contour(alpha.len(), &alpha, 1e-6).unwrap();
        let r = whittaker_with_contour(&alpha, &x, c.clone()).unwrap();
        let fine = whittaker_with_contour(&alpha, &x, c.refined()).unwrap();
        assert!(r.error_estimate >= 0.0);
        assert!((fine.value - r.value).norm() < r.error_estimate);
        assert_eq!(r.evaluations, c.nodes_per_dim().pow((alpha.len() * (alpha.len() - 1) / 2) as u32));
    }
}

#[test]
fn contour_independence() {
    for (alpha, x) in [(N2_ALPHA.to_vec(), vec![0.3, -0.2]), (N3_ALPHA.to_vec(), N3_X.to_vec())] {
        let n = alpha.len();
        let a = whittaker_with_contour(&alpha, &x, whittaker_contour(n, &alpha, 0.5, 1e-8).unwrap()).unwrap();
        let b = whittaker_with_contour(&alpha, &x, whittaker_contour(n, &alpha, 0.7, 1e-8).unwrap()).unwrap();
        assert!((a.value - b.value).norm() < 1e-7);
    }
}

#[test]
fn weyl_symmetry() {
    for (alpha, x) in [(vec![1.3, 0.2], vec![0.4, -0.1]), (N3_ALPHA.to_vec(), N3_X.to_vec())] {
        let base = whittaker_eval(alpha.len(), &alpha, &x, 1e-6).unwrap();
        for p in permutations(&alpha) {
            let r = whittaker_eval(alpha.len(), &p, &x, 1e-6).unwrap();
            assert!((r.value - base.value).norm() <= 10.0 * base.error_estimate.max(1e-15));
            assert!((r.value - base.value).norm() <= 1e-6 * base.value.norm());
        }
    }
}

#[test]
fn translation_covariance() {
    let alpha = [0.9, -0.2, 0.4];
    let x = [0.2, -0.3, 0.1];
    let base = whittaker_eval(3, &alpha, &x, 1e-6).unwrap().value;
    let sigma1: f64 = alpha.iter().sum();
    for c in [-0.5, 0.25, 1.0] {
        let shifted: Vec<f64> = x.iter().map(|v| v + c).collect();
        let r = whittaker_eval(3, &alpha, &shifted, 1e-6).unwrap().value;
        let ratio = r / base;
        assert!((ratio.norm() - 1.0).abs() < 1e-6);
        assert!((ratio - Complex64::new(0.0, sigma1 * c).exp()).norm() < 1e-6);
    }
}

#[test]
fn direct_and_recursive_agree() {
    let r2 = whittaker_recursive(2, &[1.3, 0.2], &[0.4, -0.1], 1e-8).unwrap();
    let d2 = whittaker_eval(2, &[1.3, 0.2], &[0.4, -0.1], 1e-8).unwrap();
    assert!((r2.value - d2.value).norm() < 1e-8);
    let r3 = whittaker_recursive(3, &N3_ALPHA, &N3_X, 1e-6).unwrap();
    let d3 = whittaker_eval(3, &N3_ALPHA, &N3_X, 1e-6).unwrap();
    assert!((r3.value - d3.value).norm() < 1e-6);
    assert_eq!(r3.evaluations, d3.evaluations);
    let one = whittaker_recursive(1, &[0.4], &[2.0], 1e-6).unwrap();
    assert_eq!(one.value, Complex64::new(0.0, 0.8).exp());
}

#[test]
fn spherical_values() {
    let golden = 7.866_801_413_319_756;
    let r = spherical_eval(2, &[0.5, -0.5], &[0.0, 0.0], 1e-10).unwrap();
    assert!((r.value - golden).norm() < 1e-9 * golden);
    let x = [0.3, -0.6];
    let a = spherical_eval(2, &[0.8, -0.1], &x, 1e-8).unwrap();
    let b = spherical_eval(2, &[-0.1, 0.8], &x, 1e-8).unwrap();
    assert!((a.value - b.value).norm() < 1e-8 * a.value.norm());
    let lam = [0.9, 0.1, -0.6];
    let x3 = [0.2, 0.0, -0.3];
    let base = spherical_eval(3, &lam, &x3, 1e-5).unwrap();
    let swapped = spherical_eval(3, &[0.1, -0.6, 0.9], &x3, 1e-5).unwrap();
    assert!((base.value - swapped.value).norm() < 1e-5 * base.value.norm());
}

#[test]
fn grid_scan_shapes() {
    let req = GridRequest {
        kind: Kind::Whittaker,
        params: vec![0.5, -0.5],
        base: vec![0.0, 0.0],
        axis: 1,
        from: -1.0,
        to: 1.0,
        steps: 5,
        tol: 1e-6,
    };
    let rows = grid_scan(&req).unwrap();
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[0].x, vec![-1.0, 0.0]);
    assert_eq!(rows[4].x, vec![1.0, 0.0]);
    let single = grid_scan(&GridRequest { steps: 1, ..req.clone() }).unwrap();
    assert_eq!(single.len(), 1);
    assert!(grid_scan(&GridRequest { axis: 3, ..req.clone() }).is_err());
    let sph = grid_scan(&GridRequest { kind: Kind::Spherical, params: vec![0.3, -0.3], ..req }).unwrap();
    assert!(sph.iter().all(|r| r.value.im.abs() < 1e-9 * r.value.norm()));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn two_particle_symmetry_and_covariance(a in -1.5f64..1.5, b in -1.5f64..1.5, x1 in -1.0f64..1.0, x2 in -1.0f64..1.0, c in -1.0f64..1.0) {
        let v = whittaker_eval(2, &[a, b], &[x1, x2], 1e-7).unwrap();
        let w = whittaker_eval(2, &[b, a], &[x1, x2], 1e-7).unwrap();
        prop_assert!((v.value - w.value).norm() <= 10.0 * v.error_estimate.max(1e-15));
        let s = whittaker_eval(2, &[a, b], &[x1 + c, x2 + c], 1e-7).unwrap();
        let expected = v.value * Complex64::new(0.0, (a + b) * c).exp();
        prop_assert!((s.value - expected).norm() < 1e-7);
    }
}

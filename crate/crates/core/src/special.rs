//! Complex Gamma function, log-Gamma and exact shift ratios.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type ComplexScalar = Complex64;

/// Distance to a nonpositive integer below which the argument counts as a pole.
pub const POLE_EPS: f64 = 1e-12;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];
const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_7;

/// Largest real part of log Gamma that `exp` can represent.
const MAX_LOG: f64 = 709.78;

fn nonpositive_integer_near(z: Complex64) -> bool {
    let r = z.re.round();
    r <= 0.0 && (z - Complex64::new(r, 0.0)).norm() < POLE_EPS
}

fn pole(z: Complex64) -> Error {
    Error::Pole { re: z.re, im: z.im }
}

/// Lanczos form, valid for `Re z >= 0.5`.
fn log_gamma_right(z: Complex64) -> Complex64 {
    let zm = z - 1.0;
    let mut sum = Complex64::new(LANCZOS_COEFFS[0], 0.0);
    for (k, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        sum += *c / (zm + k as f64);
    }
    let t = zm + LANCZOS_G + 0.5;
    (zm + 0.5) * t.ln() - t + sum.ln() + HALF_LN_TWO_PI
}

/// Principal branch of `log Gamma(z)`, analytic off the negative real axis.
///
/// Arguments left of `Re z = 1/2` are moved right with the recurrence
/// `log Gamma(z) = log Gamma(z + n) - sum_k log(z + k)`, which keeps the branch
/// continuous in each half plane (no reflection formula).
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain(format!("non-finite argument {z}")));
    }
    if nonpositive_integer_near(z) {
        return Err(pole(z));
    }
    if z.re >= 0.5 {
        return Ok(log_gamma_right(z));
    }
    let n = (0.5 - z.re).ceil() as usize;
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..n {
        acc += (z + k as f64).ln();
    }
    Ok(log_gamma_right(z + n as f64) - acc)
}

pub fn gamma(z: Complex64) -> Result<Complex64> {
    let lg = log_gamma(z)?;
    if lg.re > MAX_LOG {
        return Err(Error::Overflow(lg.re));
    }
    Ok(lg.exp())
}

pub fn gamma_real(x: f64) -> Result<f64> {
    gamma(Complex64::new(x, 0.0)).map(|g| g.re)
}

/// `Gamma(z + k) / Gamma(z)` as a rising (k > 0) or falling (k < 0) factorial.
pub fn gamma_shift_ratio(z: Complex64, k: i32) -> Result<Complex64> {
    let mut acc = Complex64::new(1.0, 0.0);
    if k >= 0 {
        for j in 0..k {
            acc *= z + j as f64;
        }
    } else {
        for j in 1..=(-k) {
            let f = z - j as f64;
            if f.norm() < POLE_EPS {
                return Err(pole(f));
            }
            acc /= f;
        }
    }
    Ok(acc)
}

/// `log sin(pi z)` up to an additive multiple of `2 pi i`, stable for large `|Im z|`.
pub fn ln_sin_pi(z: Complex64) -> Complex64 {
    let i = Complex64::i();
    if z.im.abs() < 20.0 {
        return (z * PI).sin().ln();
    }
    if z.im > 0.0 {
        // sin(pi z) = (i/2) e^{-i pi z} (1 - e^{2 i pi z})
        Complex64::new(-std::f64::consts::LN_2, PI / 2.0) - i * PI * z
            + (1.0 - (i * PI * z * 2.0).exp()).ln()
    } else {
        // sin(pi z) = (-i/2) e^{i pi z} (1 - e^{-2 i pi z})
        Complex64::new(-std::f64::consts::LN_2, -PI / 2.0) + i * PI * z
            + (1.0 - (-i * PI * z * 2.0).exp()).ln()
    }
}

/// `log [1 / (Gamma(z) Gamma(-z))] = log(-z sin(pi z) / pi)`, modulo `2 pi i`.
///
/// The left-hand side is entire, so this never raises a pole error; it returns
/// `-inf` in the real part when `z` is an integer.
pub fn ln_recip_gamma_pair(z: Complex64) -> Complex64 {
    if z.norm() == 0.0 {
        return Complex64::new(f64::NEG_INFINITY, 0.0);
    }
    (-z).ln() + ln_sin_pi(z) - PI.ln()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    // Reference values computed once with mpmath (30 digits).
    const GOLDEN: [(f64, f64, f64, f64); 8] = [
        (2.0, 3.0, -2.092_851_753_092_733_3, 2.302_396_543_466_867_6),
        (0.5, 20.0, -30.496_988_002_693_26, 39.916_729_108_473_33),
        (-3.3, 4.1, -11.320_596_788_999_238, -5.847_706_954_544_012),
        (-7.5, -0.2, -8.587_667_032_423_892, 24.716_702_316_375_27),
        (10.0, -40.0, -26.780_956_023_147_975, -121.360_977_592_016_02),
        (0.1, 0.1, 1.898_991_273_675_900_2, -0.827_464_707_773_075_7),
        (0.25, -3.7, -5.219_513_631_558_174, -0.750_950_682_963_234_6),
        (1e-3, 0.0, 6.907_178_885_383_853_7, 0.0),
    ];

    #[test]
    fn log_gamma_golden() {
        for (re, im, lre, lim) in GOLDEN {
            let v = log_gamma(c(re, im)).unwrap();
            let scale = c(lre, lim).norm().max(1.0);
            assert!((v - c(lre, lim)).norm() / scale < 1e-12, "z={re}+{im}i got {v}");
        }
    }

    #[test]
    fn simple_values() {
        assert!(log_gamma(c(1.0, 0.0)).unwrap().norm() < 1e-15);
        assert_relative_eq!(log_gamma(c(0.5, 0.0)).unwrap().re, 0.572_364_942_924_700_1, epsilon = 1e-14);
        assert_relative_eq!(gamma_real(5.0).unwrap(), 24.0, max_relative = 1e-13);
        assert_relative_eq!(gamma_real(0.5).unwrap(), PI.sqrt(), max_relative = 1e-13);
        assert_relative_eq!(gamma_real(-0.5).unwrap(), -2.0 * PI.sqrt(), max_relative = 1e-13);
    }

    #[test]
    fn poles_and_overflow() {
        assert!(matches!(log_gamma(c(0.0, 0.0)), Err(Error::Pole { .. })));
        assert!(matches!(log_gamma(c(-3.0, 1e-13)), Err(Error::Pole { .. })));
        assert!(log_gamma(c(-3.0, 1e-6)).is_ok());
        assert!(matches!(gamma(c(200.0, 0.0)), Err(Error::Overflow(_))));
    }

    #[test]
    fn shift_ratio() {
        assert_eq!(gamma_shift_ratio(c(2.5, 0.0), 1).unwrap(), c(2.5, 0.0));
        assert_eq!(gamma_shift_ratio(c(1.0, 0.0), 3).unwrap(), c(6.0, 0.0));
        let z = c(0.3, 1.2);
        assert_eq!(gamma_shift_ratio(z, 2).unwrap(), z * (z + 1.0));
        assert!(matches!(gamma_shift_ratio(c(2.0, 0.0), -2), Err(Error::Pole { .. })));
        let back = gamma_shift_ratio(z, -2).unwrap();
        assert_relative_eq!((back * (z - 1.0) * (z - 2.0)).re, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn conjugation_is_bitwise() {
        for (re, im) in [(0.3, 1.7), (-4.2, 0.9), (7.0, -12.5)] {
            let a = gamma(c(re, im)).unwrap();
            let b = gamma(c(re, -im)).unwrap();
            assert_eq!(a.re.to_bits(), b.re.to_bits());
            assert_eq!(a.im.to_bits(), (-b.im).to_bits());
        }
    }

    #[test]
    fn decay_envelope_bounded() {
        // |Gamma(x+iy)| e^{pi|y|/2} |y|^{1/2-x} -> sqrt(2 pi)
        for x in [-1.5, 0.25, 2.0] {
            for y in [5.0, 12.0, 30.0, 50.0_f64] {
                let g = gamma(c(x, y)).unwrap().norm();
                let env = g * (PI * y / 2.0).exp() * y.powf(0.5 - x);
                assert!(env > 1.0 && env < 4.0, "x={x} y={y} env={env}");
            }
        }
    }

    #[test]
    fn recip_pair_matches_gammas() {
        for z in [c(0.3, 0.4), c(-1.7, 2.0), c(0.0, 3.0), c(0.2, -25.0)] {
            let direct = -(log_gamma(z).unwrap() + log_gamma(-z).unwrap());
            let d = (ln_recip_gamma_pair(z) - direct).exp();
            assert!((d - 1.0).norm() < 1e-11, "{z}: {d}");
        }
        assert_eq!(ln_recip_gamma_pair(c(0.0, 0.0)).re, f64::NEG_INFINITY);
    }

    fn off_pole(z: Complex64) -> bool {
        let r = z.re.round();
        !(r <= 0.0 && (z - r).norm() < 1e-3)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(2000))]

        #[test]
        fn recurrence(re in -10.0f64..10.0, im in -10.0f64..10.0) {
            let z = c(re, im);
            prop_assume!(off_pole(z) && off_pole(z + 1.0));
            let g1 = gamma(z + 1.0).unwrap();
            let g0 = gamma(z).unwrap();
            prop_assert!((g1 - z * g0).norm() / g1.norm() <= 1e-11);
        }

        #[test]
        fn reflection(re in -10.0f64..10.0, im in -3.0f64..3.0) {
            let z = c(re, im);
            prop_assume!((re - re.round()).abs() > 1e-3 || im.abs() > 1e-3);
            let v = gamma(z).unwrap() * gamma(1.0 - z).unwrap() * (z * PI).sin() / PI;
            prop_assert!((v - 1.0).norm() <= 1e-10);
        }
    }
}

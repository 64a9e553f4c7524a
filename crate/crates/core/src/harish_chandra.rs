//! Gamma-product harmonic analysis for the root system `A_{N-1}`: c-functions,
//! M-functions, scattering factors, the `b` normalizer and the Plancherel density.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::report::VerificationReport;
use crate::special::log_gamma;

const SUITE: &str = "hc";

/// Positive root `e_i - e_j`, `i < j`, 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Root {
    pub i: usize,
    pub j: usize,
}

impl Root {
    /// `λ_α = <λ, α>/<α, α>`.
    pub fn coordinate(self, lambda: &[Complex64]) -> Complex64 {
        (lambda[self.i] - lambda[self.j]) / 2.0
    }

    /// `<α, λ>`.
    pub fn pairing(self, lambda: &[Complex64]) -> Complex64 {
        lambda[self.i] - lambda[self.j]
    }
}

#[derive(Clone, Debug)]
pub struct RootSystemA {
    n: usize,
}

impl RootSystemA {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("rank needs N >= 1".into()));
        }
        Ok(Self { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn positive_roots(&self) -> Vec<Root> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                out.push(Root { i, j });
            }
        }
        out
    }

    /// Simple root `α_k = e_k - e_{k+1}` (0-based `k`).
    pub fn simple(&self, k: usize) -> Root {
        Root { i: k, j: k + 1 }
    }

    /// Half-sum of positive roots in coordinates.
    pub fn rho(&self) -> Vec<f64> {
        (0..self.n).map(|i| (self.n as f64 - 1.0) / 2.0 - i as f64).collect()
    }
}

/// Permutation `s` of `0..N` with `s(i) = image[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylPermutation {
    image: Vec<usize>,
}

impl WeylPermutation {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; image.len()];
        for &v in &image {
            if v >= image.len() || seen[v] {
                return Err(Error::Domain(format!("{image:?} is not a permutation")));
            }
            seen[v] = true;
        }
        Ok(Self { image })
    }

    pub fn identity(n: usize) -> Self {
        Self { image: (0..n).collect() }
    }

    /// Adjacent transposition `s_k` swapping `k` and `k+1` (0-based).
    pub fn simple(n: usize, k: usize) -> Self {
        let mut p = Self::identity(n);
        p.image.swap(k, k + 1);
        p
    }

    pub fn longest(n: usize) -> Self {
        Self { image: (0..n).rev().collect() }
    }

    /// `s_{k1} s_{k2} ... s_{kl}` from a word of 0-based simple indices.
    pub fn from_word(n: usize, word: &[usize]) -> Self {
        word.iter().fold(Self::identity(n), |acc, &k| acc.compose(&Self::simple(n, k)))
    }

    pub fn n(&self) -> usize {
        self.image.len()
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn apply_index(&self, i: usize) -> usize {
        self.image[i]
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Self) -> Self {
        Self { image: other.image.iter().map(|&i| self.image[i]).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.n()];
        for (i, &v) in self.image.iter().enumerate() {
            inv[v] = i;
        }
        Self { image: inv }
    }

    pub fn length(&self) -> usize {
        delta_set(self).len()
    }

    /// `(sλ)_i = λ_{s^{-1}(i)}`.
    pub fn act<T: Copy>(&self, lambda: &[T]) -> Vec<T> {
        let inv = self.inverse();
        (0..self.n()).map(|i| lambda[inv.image[i]]).collect()
    }

    /// One reduced word, `self = s_{k1} ... s_{kl}`.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut cur = self.image.clone();
        let mut word = Vec::new();
        while let Some(k) = (0..cur.len().saturating_sub(1)).find(|&k| cur[k] > cur[k + 1]) {
            // cur ∘ s_k has one inversion fewer
            cur.swap(k, k + 1);
            word.push(k);
        }
        word.reverse();
        word
    }

    /// Every reduced word of `self`.
    pub fn all_reduced_words(&self) -> Vec<Vec<usize>> {
        let descents: Vec<usize> =
            (0..self.n().saturating_sub(1)).filter(|&k| self.image[k] > self.image[k + 1]).collect();
        if descents.is_empty() {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for k in descents {
            let shorter = self.compose(&Self::simple(self.n(), k));
            for mut w in shorter.all_reduced_words() {
                w.push(k);
                out.push(w);
            }
        }
        out
    }
}

/// `Δ(s) = Δ_+ ∩ sΔ_- = {(i, j): i < j, s^{-1}(i) > s^{-1}(j)}`.
pub fn delta_set(s: &WeylPermutation) -> Vec<Root> {
    let inv = s.inverse();
    let n = s.n();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if inv.image[i] > inv.image[j] {
                out.push(Root { i, j });
            }
        }
    }
    out
}

/// Roots `β_r = s_{k1} ... s_{k(r-1)} α_{kr}` read off a word.
pub fn word_roots(n: usize, word: &[usize]) -> Vec<Root> {
    let mut out = Vec::new();
    let mut prefix = WeylPermutation::identity(n);
    for &k in word {
        let (a, b) = (prefix.apply_index(k), prefix.apply_index(k + 1));
        out.push(if a < b { Root { i: a, j: b } } else { Root { i: b, j: a } });
        prefix = prefix.compose(&WeylPermutation::simple(n, k));
    }
    out
}

/// Values `c_α = f(e_α)` on the simple roots.
#[derive(Clone, Debug, PartialEq)]
pub struct Character {
    pub c_alpha: Vec<f64>,
}

impl Character {
    pub fn unit(n: usize) -> Self {
        Self { c_alpha: vec![1.0; n.saturating_sub(1)] }
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.c_alpha.iter().all(|&c| c != 0.0)
    }
}

fn ln_c_alpha(x: Complex64) -> Result<Complex64> {
    Ok(log_gamma(x)? + 0.5 * PI.ln() - log_gamma(x + 0.5)?)
}

/// `c_α(λ) = Γ(λ_α) Γ(1/2) / Γ(λ_α + 1/2)`.
pub fn c_alpha_factor(lambda: &[Complex64], root: Root) -> Result<Complex64> {
    Ok(ln_c_alpha(root.coordinate(lambda))?.exp())
}

pub fn c_s(lambda: &[Complex64], s: &WeylPermutation) -> Result<Complex64> {
    check_len(lambda, s.n())?;
    let mut acc = Complex64::new(0.0, 0.0);
    for r in delta_set(s) {
        acc += ln_c_alpha(r.coordinate(lambda))?;
    }
    Ok(acc.exp())
}

/// Harish-Chandra function `c(λ) = c_{w0}(λ)`.
pub fn c_function(lambda: &[Complex64]) -> Result<Complex64> {
    c_s(lambda, &WeylPermutation::longest(lambda.len()))
}

/// `c_s` from the roots induced by a word instead of the inversion set.
pub fn c_s_from_word(lambda: &[Complex64], word: &[usize]) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for r in word_roots(lambda.len(), word) {
        acc += ln_c_alpha(r.coordinate(lambda))?;
    }
    Ok(acc.exp())
}

fn ln_e_alpha(x: Complex64) -> Result<Complex64> {
    Ok((1.0 - x) * std::f64::consts::LN_2 + 0.5 * PI.ln() + log_gamma(x + 0.5)?)
}

fn check_len(lambda: &[Complex64], n: usize) -> Result<()> {
    if lambda.len() != n {
        return Err(Error::Dimension(lambda.len()));
    }
    Ok(())
}

/// `M(s_α, λ, f) = e_α(λ) / e_α(-λ) · (|f(e_α)| / (2 sqrt(2<α,α>)))^{2λ_α}`
/// for the simple root `α_k` (0-based `k`).
pub fn m_elementary(lambda: &[Complex64], k: usize, f: &Character) -> Result<Complex64> {
    let c = *f
        .c_alpha
        .get(k)
        .ok_or_else(|| Error::Index(format!("simple root {k} outside the character")))?;
    if c == 0.0 {
        return Err(Error::Domain(format!("character degenerate on simple root {k}")));
    }
    let x = Root { i: k, j: k + 1 }.coordinate(lambda);
    let base = c.abs() / (2.0 * (2.0_f64 * 2.0).sqrt());
    Ok((ln_e_alpha(x)? - ln_e_alpha(-x)? + 2.0 * x * base.ln()).exp())
}

/// `M(s, λ, f)` through the cocycle rule along `word` (`s = s_{k1} ... s_{kl}`).
pub fn m_function_word(word: &[usize], lambda: &[Complex64], f: &Character) -> Result<Complex64> {
    let n = lambda.len();
    let mut mu = lambda.to_vec();
    let mut acc = Complex64::one();
    for &k in word.iter().rev() {
        if k + 1 >= n {
            return Err(Error::Index(format!("simple reflection {k} outside N={n}")));
        }
        acc *= m_elementary(&mu, k, f)?;
        mu = WeylPermutation::simple(n, k).act(&mu);
    }
    Ok(acc)
}

pub fn m_function(s: &WeylPermutation, lambda: &[Complex64], f: &Character) -> Result<Complex64> {
    check_len(lambda, s.n())?;
    m_function_word(&s.reduced_word(), lambda, f)
}

/// `(S_{w0}, S⁰_{w0})` with `S⁰ = c(λ)/c(w0 λ)` and `S = S⁰ M(w0, λ)`.
pub fn scattering_matrices(lambda: &[Complex64], f: &Character) -> Result<(Complex64, Complex64)> {
    let w0 = WeylPermutation::longest(lambda.len());
    let s0 = c_function(lambda)? / c_function(&w0.act(lambda))?;
    Ok((s0 * m_function(&w0, lambda, f)?, s0))
}

pub fn ln_b_denominator(lambda: &[Complex64]) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for r in RootSystemA::new(lambda.len())?.positive_roots() {
        let p = r.pairing(lambda);
        acc += log_gamma(Complex64::new(p.im, -p.re) + 0.5)?;
    }
    Ok(acc)
}

/// `b(λ) = ∏_{α>0} Γ(<α, λ>/i + 1/2)`.
pub fn b_denominator(lambda: &[Complex64]) -> Result<Complex64> {
    Ok(ln_b_denominator(lambda)?.exp())
}

/// `1/|c(λ)|²`; zero at poles of `c`.
pub fn plancherel_density(lambda: &[Complex64]) -> Result<f64> {
    match c_function(lambda) {
        Ok(c) => Ok(1.0 / c.norm_sqr()),
        Err(Error::Pole { .. }) => Ok(0.0),
        Err(e) => Err(e),
    }
}

/// `M(s_α, λ, f) b(λ) / b(s_α λ)` for the simple root `α_k`.
pub fn normalizer_ratio(lambda: &[Complex64], k: usize, f: &Character) -> Result<Complex64> {
    let s = WeylPermutation::simple(lambda.len(), k);
    Ok(m_elementary(lambda, k, f)? * (ln_b_denominator(lambda)? - ln_b_denominator(&s.act(lambda))?).exp())
}

fn real_vec(rng: &mut ChaCha8Rng, n: usize, lo: f64, hi: f64) -> Vec<Complex64> {
    (0..n).map(|_| Complex64::new(rng.gen_range(lo..hi), 0.0)).collect()
}

fn random_perm(rng: &mut ChaCha8Rng, n: usize) -> WeylPermutation {
    let mut v: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        v.swap(i, rng.gen_range(0..=i));
    }
    WeylPermutation { image: v }
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(f64::MIN_POSITIVE)
}

/// Largest relative variation of the normalizer ratio along random real lines.
pub fn normalizer_variation(n: usize, lines: usize, seed: u64) -> Result<(f64, Complex64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = Character::unit(n);
    let mut worst = 0.0_f64;
    let mut sample = Complex64::one();
    for line in 0..lines {
        let start = real_vec(&mut rng, n, 0.1, 1.5);
        let dir = real_vec(&mut rng, n, -1.0, 1.0);
        let k = rng.gen_range(0..n - 1);
        let at = |t: f64| -> Vec<Complex64> { start.iter().zip(&dir).map(|(a, d)| a + d * t).collect() };
        let r0 = normalizer_ratio(&at(0.0), k, &f)?;
        if line == 0 {
            sample = r0;
        }
        for step in 1..=8 {
            let r = normalizer_ratio(&at(step as f64 / 8.0), k, &f)?;
            worst = worst.max(rel(r, r0));
        }
    }
    Ok((worst, sample))
}

/// Multiplicativity, cocycle, reduced-word independence, Plancherel invariance
/// and normalizer constancy for one rank.
pub fn hc_suite(n: usize, trials: usize, seed: u64) -> Result<Vec<VerificationReport>> {
    if n < 2 {
        return Err(Error::Domain("suite needs N >= 2".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = Character::unit(n);

    let mut gk = 0.0_f64;
    let mut cocycle = 0.0_f64;
    let mut planch = 0.0_f64;
    for _ in 0..trials {
        let lambda = real_vec(&mut rng, n, 0.2, 3.0);
        let s = random_perm(&mut rng, n);
        // decreasing real parts keep every λ_α, α > 0, off the Gamma poles
        let shifted: Vec<Complex64> = lambda
            .iter()
            .enumerate()
            .map(|(i, l)| l + Complex64::new(3.5 * (n - i) as f64, rng.gen_range(-1.0..1.0)))
            .collect();
        for w in [s.reduced_word(), random_perm(&mut rng, n).reduced_word()] {
            let pw = WeylPermutation::from_word(n, &w);
            gk = gk.max(rel(c_s(&shifted, &pw)?, c_s_from_word(&shifted, &w)?));
        }

        let s1 = random_perm(&mut rng, n);
        let s2 = random_perm(&mut rng, n);
        let lhs = m_function(&s1.compose(&s2), &lambda, &f)?;
        let rhs = m_function(&s2, &lambda, &f)? * m_function(&s1, &s2.act(&lambda), &f)?;
        cocycle = cocycle.max(rel(lhs, rhs));

        let it: Vec<Complex64> = lambda.iter().map(|l| Complex64::new(0.0, l.re)).collect();
        let base = plancherel_density(&it)?;
        let w = random_perm(&mut rng, n);
        planch = planch.max((plancherel_density(&w.act(&it))? - base).abs() / base);
    }

    let mut words = 0.0_f64;
    let w0 = WeylPermutation::longest(n);
    let lambda = real_vec(&mut rng, n, 0.2, 3.0);
    let reference = m_function(&w0, &lambda, &f)?;
    for w in w0.all_reduced_words() {
        words = words.max(rel(m_function_word(&w, &lambda, &f)?, reference));
    }

    let (variation, sample) = normalizer_variation(n, trials.min(20), seed)?;
    Ok(vec![
        VerificationReport::numeric(SUITE, n, "c_s over Delta(s) = product over word roots", gk, 1e-11).with_seed(seed),
        VerificationReport::numeric(SUITE, n, "M(s1 s2, l) = M(s2, l) M(s1, s2 l)", cocycle, 1e-10).with_seed(seed),
        VerificationReport::numeric(SUITE, n, "M(w0) independent of reduced word", words, 1e-10).with_seed(seed),
        VerificationReport::numeric(SUITE, n, "1/|c(s it)|^2 = 1/|c(it)|^2", planch, 1e-11).with_seed(seed),
        VerificationReport::numeric(SUITE, n, "M(s_a, l, 1) b(l)/b(s_a l) constant along lines", variation, 1e-8)
            .with_seed(seed)
            .with_witness(format!("ratio at first sample {:.6e}{:+.6e}i", sample.re, sample.im)),
    ])
}

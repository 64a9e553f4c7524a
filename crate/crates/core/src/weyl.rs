//! Exact Weyl algebra generated by `p_m` and `e^{±q_m}` with `[p_j, q_k] = -i δ_jk`.
//!
//! Elements are kept in normal order: every `e^{a·q}` factor sits to the left of
//! every power of `p`. Coefficients live in Q(i).

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::exact::CQ;

/// `e^{a·q} p^b` with `a ∈ Z^N`, `b ∈ N^N`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct WeylMonomial {
    pub exp_q: Vec<i32>,
    pub pow_p: Vec<u32>,
}

impl WeylMonomial {
    pub fn unit(n: usize) -> Self {
        Self { exp_q: vec![0; n], pow_p: vec![0; n] }
    }

    pub fn sites(&self) -> usize {
        self.exp_q.len()
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeylElement {
    sites: usize,
    terms: BTreeMap<WeylMonomial, CQ>,
}

fn binomial(n: u32, k: u32) -> i64 {
    let mut acc: i64 = 1;
    for j in 0..k as i64 {
        acc = acc * (n as i64 - j) / (j + 1);
    }
    acc
}

/// `p^b e^{c q}` for a single site, rewritten as `e^{c q} (p - i c)^b`;
/// returns the coefficients of `p^k`, `k = 0..=b`.
fn reorder_coeffs(b: u32, c: i32) -> Vec<CQ> {
    let shift = CQ::from_int(0, -(c as i64));
    (0..=b)
        .map(|k| {
            let pow = shift.powi((b - k) as i64).expect("nonnegative power");
            &CQ::from(binomial(b, k)) * &pow
        })
        .collect()
}

impl WeylElement {
    pub fn zero(sites: usize) -> Self {
        Self { sites, terms: BTreeMap::new() }
    }

    pub fn scalar(sites: usize, c: CQ) -> Self {
        let mut e = Self::zero(sites);
        e.add_term(WeylMonomial::unit(sites), c);
        e
    }

    pub fn one(sites: usize) -> Self {
        Self::scalar(sites, CQ::one())
    }

    pub fn monomial(exp_q: Vec<i32>, pow_p: Vec<u32>, c: CQ) -> Self {
        assert_eq!(exp_q.len(), pow_p.len(), "monomial vectors differ in length");
        let sites = exp_q.len();
        let mut e = Self::zero(sites);
        e.add_term(WeylMonomial { exp_q, pow_p }, c);
        e
    }

    /// `p_m`, with `m` 1-based.
    pub fn p(sites: usize, m: usize) -> Self {
        let mut pow = vec![0; sites];
        pow[m - 1] = 1;
        Self::monomial(vec![0; sites], pow, CQ::one())
    }

    /// `e^{a q_m}`, with `m` 1-based.
    pub fn exp_q(sites: usize, m: usize, a: i32) -> Self {
        let mut ex = vec![0; sites];
        ex[m - 1] = a;
        Self::monomial(ex, vec![0; sites], CQ::one())
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WeylMonomial, &CQ)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &WeylMonomial) -> CQ {
        self.terms.get(m).cloned().unwrap_or_else(CQ::zero)
    }

    fn add_term(&mut self, m: WeylMonomial, c: CQ) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.sites, other.sites, "site count mismatch");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-CQ::one())
    }

    pub fn scale(&self, c: &CQ) -> Self {
        let mut out = Self::zero(self.sites);
        if c.is_zero() {
            return out;
        }
        for (m, v) in &self.terms {
            out.terms.insert(m.clone(), v * c);
        }
        out
    }

    /// Normal-ordered product.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.sites, other.sites, "site count mismatch");
        let mut out = Self::zero(self.sites);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let coeff = ca * cb;
                for (m, c) in mul_monomials(ma, mb) {
                    out.add_term(m, &c * &coeff);
                }
            }
        }
        out
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }
}

fn mul_monomials(a: &WeylMonomial, b: &WeylMonomial) -> Vec<(WeylMonomial, CQ)> {
    let n = a.sites();
    let mut partial: Vec<(Vec<u32>, CQ)> = vec![(vec![0; n], CQ::one())];
    for m in 0..n {
        if a.pow_p[m] == 0 {
            continue;
        }
        let site = reorder_coeffs(a.pow_p[m], b.exp_q[m]);
        let mut next = Vec::with_capacity(partial.len() * site.len());
        for (pows, c) in &partial {
            for (k, sc) in site.iter().enumerate() {
                if sc.is_zero() {
                    continue;
                }
                let mut pw = pows.clone();
                pw[m] = k as u32;
                next.push((pw, c * sc));
            }
        }
        partial = next;
    }
    let exp_q: Vec<i32> = a.exp_q.iter().zip(&b.exp_q).map(|(x, y)| x + y).collect();
    partial
        .into_iter()
        .map(|(mut pw, c)| {
            for (p, d) in pw.iter_mut().zip(&b.pow_p) {
                *p += d;
            }
            (WeylMonomial { exp_q: exp_q.clone(), pow_p: pw }, c)
        })
        .collect()
}

/// Free function form of the normal-ordered product.
pub fn weyl_mul(a: &WeylElement, b: &WeylElement) -> WeylElement {
    a.mul(b)
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            let ex: Vec<String> = m
                .exp_q
                .iter()
                .enumerate()
                .filter(|(_, a)| **a != 0)
                .map(|(k, a)| format!("{a}q{}", k + 1))
                .collect();
            if !ex.is_empty() {
                write!(f, "·e^{{{}}}", ex.join("+"))?;
            }
            for (k, b) in m.pow_p.iter().enumerate() {
                match b {
                    0 => {}
                    1 => write!(f, "·p{}", k + 1)?,
                    _ => write!(f, "·p{}^{b}", k + 1)?,
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn p_past_exponential() {
        // p1 e^{q1} = e^{q1} p1 - i e^{q1}
        let lhs = WeylElement::p(1, 1).mul(&WeylElement::exp_q(1, 1, 1));
        let rhs = WeylElement::exp_q(1, 1, 1)
            .mul(&WeylElement::p(1, 1))
            .sub(&WeylElement::exp_q(1, 1, 1).scale(&CQ::i()));
        assert_eq!(lhs, rhs);
        // [p_m, e^{-q_m}] = +i e^{-q_m}
        let c = WeylElement::p(1, 1).commutator(&WeylElement::exp_q(1, 1, -1));
        assert_eq!(c, WeylElement::exp_q(1, 1, -1).scale(&CQ::i()));
    }

    #[test]
    fn distinct_sites_commute() {
        let p1 = WeylElement::p(2, 1);
        let e2 = WeylElement::exp_q(2, 2, 1);
        assert_eq!(p1.mul(&e2), e2.mul(&p1));
    }

    #[test]
    fn unit_laws() {
        let x = WeylElement::p(2, 2).mul(&WeylElement::exp_q(2, 1, -3)).add(&WeylElement::p(2, 1));
        let one = WeylElement::one(2);
        assert_eq!(one.mul(&x), x);
        assert_eq!(x.mul(&one), x);
        assert!(x.sub(&x).is_zero());
    }

    #[test]
    fn higher_powers_reorder() {
        // p^2 e^{2q} = e^{2q} (p - 2i)^2 = e^{2q}(p^2 - 4i p - 4)
        let lhs = WeylElement::p(1, 1).mul(&WeylElement::p(1, 1)).mul(&WeylElement::exp_q(1, 1, 2));
        let e = WeylElement::exp_q(1, 1, 2);
        let p = WeylElement::p(1, 1);
        let rhs = e
            .mul(&p.mul(&p))
            .sub(&e.mul(&p).scale(&CQ::from_int(0, 4)))
            .sub(&e.scale(&CQ::from(4)));
        assert_eq!(lhs, rhs);
    }

    fn arb_element(sites: usize) -> impl Strategy<Value = WeylElement> {
        let mono = (
            proptest::collection::vec(-2i32..=2, sites),
            proptest::collection::vec(0u32..=2, sites),
            -3i64..=3,
            -3i64..=3,
        );
        proptest::collection::vec(mono, 1..=4).prop_map(move |ts| {
            let mut e = WeylElement::zero(sites);
            for (ex, pw, re, im) in ts {
                e = e.add(&WeylElement::monomial(ex, pw, CQ::from_int(re, im)));
            }
            e
        })
    }

    fn arb_triple() -> impl Strategy<Value = (WeylElement, WeylElement, WeylElement)> {
        (1usize..=3).prop_flat_map(|n| (arb_element(n), arb_element(n), arb_element(n)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn associative((a, b, c) in arb_triple()) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        }

        #[test]
        fn distributive((a, b, c) in arb_triple()) {
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.add(&b).mul(&c), a.mul(&c).add(&b.mul(&c)));
        }
    }
}

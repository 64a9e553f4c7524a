//! Exact arithmetic in the Gaussian rationals Q(i).

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A complex number `re + i im` with arbitrary-precision rational parts.
///
/// `BigRational` keeps both parts reduced, so structural equality is
/// mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExactComplexRational {
    pub re: BigRational,
    pub im: BigRational,
}

pub type CQ = ExactComplexRational;

impl ExactComplexRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_int(re: i64, im: i64) -> Self {
        Self::new(BigRational::from_integer(re.into()), BigRational::from_integer(im.into()))
    }

    /// `(re_num / re_den) + i (im_num / im_den)`.
    pub fn from_ratio(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        Self::new(
            BigRational::new(BigInt::from(re_num), BigInt::from(re_den)),
            BigRational::new(BigInt::from(im_num), BigInt::from(im_den)),
        )
    }

    pub fn real(re: BigRational) -> Self {
        Self::new(re, BigRational::zero())
    }

    pub fn i() -> Self {
        Self::from_int(0, 1)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return None;
        }
        Some(Self::new(&self.re / &n, -&self.im / &n))
    }

    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self * &r)
    }

    /// Integer power; negative exponents invert (None on zero base).
    pub fn powi(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc *= &base;
        }
        Some(acc)
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl Zero for ExactComplexRational {
    fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for ExactComplexRational {
    fn one() -> Self {
        Self::from_int(1, 0)
    }
}

impl From<i64> for ExactComplexRational {
    fn from(v: i64) -> Self {
        Self::from_int(v, 0)
    }
}

impl<'a> Add<&'a CQ> for &'a CQ {
    type Output = CQ;
    fn add(self, rhs: &CQ) -> CQ {
        CQ::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a CQ> for &'a CQ {
    type Output = CQ;
    fn sub(self, rhs: &CQ) -> CQ {
        CQ::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a CQ> for &'a CQ {
    type Output = CQ;
    fn mul(self, rhs: &CQ) -> CQ {
        CQ::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

/// Panics on division by zero, like the integer types; use `checked_div` otherwise.
impl<'a> Div<&'a CQ> for &'a CQ {
    type Output = CQ;
    fn div(self, rhs: &CQ) -> CQ {
        self.checked_div(rhs).expect("division by zero in Q(i)")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<CQ> for CQ {
            type Output = CQ;
            fn $f(self, rhs: CQ) -> CQ {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a CQ> for CQ {
            type Output = CQ;
            fn $f(self, rhs: &CQ) -> CQ {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for CQ {
    type Output = CQ;
    fn neg(self) -> CQ {
        CQ::new(-self.re, -self.im)
    }
}

impl Neg for &CQ {
    type Output = CQ;
    fn neg(self) -> CQ {
        CQ::new(-self.re.clone(), -self.im.clone())
    }
}

impl AddAssign<&CQ> for CQ {
    fn add_assign(&mut self, rhs: &CQ) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&CQ> for CQ {
    fn sub_assign(&mut self, rhs: &CQ) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&CQ> for CQ {
    fn mul_assign(&mut self, rhs: &CQ) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for ExactComplexRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                write!(f, "({} {} {}i)", self.re, sign, self.im.abs())
            }
        }
    }
}

impl fmt::Debug for ExactComplexRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_ops() {
        let a = CQ::from_ratio(1, 2, 3, 4);
        let b = CQ::from_ratio(-2, 3, 1, 5);
        let q = &a / &b;
        assert_eq!(&q * &b, a);
        assert_eq!(&CQ::i() * &CQ::i(), CQ::from_int(-1, 0));
        assert!(CQ::zero().inv().is_none());
        assert_eq!(a.powi(-2).unwrap(), (&a * &a).inv().unwrap());
    }

    #[test]
    fn canonical_form() {
        let a = CQ::from_ratio(2, 4, -3, 6);
        let b = CQ::from_ratio(1, 2, -1, 2);
        assert_eq!(a, b);
        assert_eq!(format!("{a}"), "(1/2 - 1/2i)");
    }
}

//! Exact scalar arithmetic: rationals and elements of a real quadratic
//! field `Q(√D)`.
//!
//! Everything here is immutable and allocation-backed by `num-bigint`, so
//! values may be shared freely across threads.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("radicand mismatch: {0} vs {1}")]
    RadicandMismatch(u64, u64),
    #[error("radicand {0} is a perfect square")]
    SquareRadicand(u64),
    #[error("radicand must be positive")]
    ZeroRadicand,
    #[error("division by zero")]
    DivisionByZero,
}

/// Arbitrary-precision fraction, always stored in lowest terms with a
/// positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        let den = den.into();
        assert!(!den.is_zero(), "zero denominator");
        Rational(BigRational::new(num.into(), den))
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn signum(&self) -> i32 {
        match self.0.numer().sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn floor(&self) -> BigInt {
        self.0.numer().div_floor(self.0.denom())
    }

    pub fn ceil(&self) -> BigInt {
        -((-self.0.numer()).div_floor(self.0.denom()))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Integer `s` with `s ≥ √self`, tight to within one.
    pub fn sqrt_ceil(&self) -> BigInt {
        assert!(self.signum() >= 0, "square root of a negative rational");
        // √(p/q) = √(pq)/q
        let pq = self.numer() * self.denom();
        let mut r = pq.sqrt();
        if &r * &r < pq {
            r += 1;
        }
        let q = self.denom();
        -((-r).div_floor(q))
    }

    /// Parses `"p/q"`, an integer, or a finite decimal such as `"1.25"`.
    pub fn parse(text: &str) -> Option<Self> {
        let text = text.trim();
        if let Some((n, d)) = text.split_once('/') {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            return Some(Rational::new(n, d));
        }
        if let Some((int, frac)) = text.split_once('.') {
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return None;
            }
            let negative = int.starts_with('-');
            let int: BigInt = if int.is_empty() || int == "-" {
                BigInt::zero()
            } else {
                int.parse().ok()?
            };
            let scale = BigInt::from(10u32).pow(frac.len() as u32);
            let frac: BigInt = frac.parse().ok()?;
            let magnitude = int.abs() * &scale + frac;
            let num = if negative { -magnitude } else { magnitude };
            return Some(Rational::new(num, scale));
        }
        Some(Rational::from_int(text.parse::<BigInt>().ok()?))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_int(n)
    }
}

macro_rules! rational_binop {
    ($trait:ident, $method:ident) => {
        impl<'a> $trait<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
    };
}

rational_binop!(Add, add);
rational_binop!(Sub, sub);
rational_binop!(Mul, mul);
rational_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

/// Exact integer square root: `Some(s)` with `s² = n`, else `None`.
pub fn is_perfect_square(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let s = n.sqrt();
    (&s * &s == *n).then_some(s)
}

/// [`is_perfect_square`] for machine integers.
pub fn perfect_square_u64(n: u64) -> Option<u64> {
    let s = n.sqrt();
    (s.checked_mul(s) == Some(n)).then_some(s)
}

/// `p + q·√d` with rational `p`, `q` and a fixed non-square radicand `d`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadExt {
    d: u64,
    p: Rational,
    q: Rational,
}

impl QuadExt {
    pub fn new(d: u64, p: Rational, q: Rational) -> Result<Self, ArithError> {
        if d == 0 {
            return Err(ArithError::ZeroRadicand);
        }
        if perfect_square_u64(d).is_some() {
            return Err(ArithError::SquareRadicand(d));
        }
        Ok(QuadExt { d, p, q })
    }

    /// Rational element embedded into `Q(√d)`; `d` must already be validated
    /// by the caller (used internally where `d` comes from a `QuadExt`).
    pub(crate) fn rational_in(d: u64, p: Rational) -> Self {
        QuadExt { d, p, q: Rational::zero() }
    }

    pub(crate) fn from_parts_unchecked(d: u64, p: Rational, q: Rational) -> Self {
        debug_assert!(perfect_square_u64(d).is_none());
        QuadExt { d, p, q }
    }

    pub fn zero(d: u64) -> Self {
        Self::rational_in(d, Rational::zero())
    }

    pub fn one(d: u64) -> Self {
        Self::rational_in(d, Rational::one())
    }

    pub fn radicand(&self) -> u64 {
        self.d
    }

    pub fn rational_part(&self) -> &Rational {
        &self.p
    }

    pub fn irrational_part(&self) -> &Rational {
        &self.q
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    pub fn conjugate(&self) -> Self {
        QuadExt { d: self.d, p: self.p.clone(), q: -&self.q }
    }

    /// Field norm `p² − d·q²`.
    pub fn norm(&self) -> Rational {
        &(&self.p * &self.p) - &(&(&self.q * &self.q) * &Rational::from(self.d as i64))
    }

    fn check(&self, other: &Self) -> Result<(), ArithError> {
        if self.d != other.d {
            return Err(ArithError::RadicandMismatch(self.d, other.d));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ArithError> {
        self.check(other)?;
        Ok(QuadExt { d: self.d, p: &self.p + &other.p, q: &self.q + &other.q })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ArithError> {
        self.check(other)?;
        Ok(QuadExt { d: self.d, p: &self.p - &other.p, q: &self.q - &other.q })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ArithError> {
        self.check(other)?;
        let d = Rational::from(self.d as i64);
        let p = &(&self.p * &other.p) + &(&(&self.q * &other.q) * &d);
        let q = &(&self.p * &other.q) + &(&self.q * &other.p);
        Ok(QuadExt { d: self.d, p, q })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ArithError> {
        self.check(other)?;
        self.checked_mul(&other.recip()?)
    }

    pub fn recip(&self) -> Result<Self, ArithError> {
        // nonzero elements have nonzero norm because √d is irrational
        let n = self.norm();
        if n.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(QuadExt { d: self.d, p: &self.p / &n, q: -(&self.q / &n) })
    }

    pub fn scale(&self, r: &Rational) -> Self {
        QuadExt { d: self.d, p: &self.p * r, q: &self.q * r }
    }

    /// Exact sign of the real number `p + q√d`.
    pub fn sign(&self) -> i32 {
        let sp = self.p.signum();
        let sq = self.q.signum();
        if sq == 0 {
            return sp;
        }
        if sp == 0 || sp == sq {
            return sq;
        }
        // opposite signs: compare p² with q²·d
        let p2 = &self.p * &self.p;
        let q2d = &(&self.q * &self.q) * &Rational::from(self.d as i64);
        match p2.cmp(&q2d) {
            Ordering::Greater => sp,
            Ordering::Less => sq,
            Ordering::Equal => 0,
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.p.to_f64() + self.q.to_f64() * (self.d as f64).sqrt()
    }
}

/// Free-function form of [`QuadExt::checked_add`].
pub fn quad_add(x: &QuadExt, y: &QuadExt) -> Result<QuadExt, ArithError> {
    x.checked_add(y)
}

/// Free-function form of [`QuadExt::checked_mul`].
pub fn quad_mul(x: &QuadExt, y: &QuadExt) -> Result<QuadExt, ArithError> {
    x.checked_mul(y)
}

pub fn quad_sign(x: &QuadExt) -> i32 {
    x.sign()
}

impl PartialOrd for QuadExt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        let diff = self.checked_sub(other).ok()?;
        Some(diff.sign().cmp(&0))
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q.signum() < 0 {
            write!(f, "{} - {}√{}", self.p, self.q.abs(), self.d)
        } else {
            write!(f, "{} + {}√{}", self.p, self.q, self.d)
        }
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// Operator forms panic on radicand mismatch; use the `checked_*` methods
// when operands may come from different fields.
macro_rules! quad_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'a> $trait<&'a QuadExt> for &'a QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: &'a QuadExt) -> QuadExt {
                self.$checked(rhs).expect("QuadExt operands from different fields")
            }
        }
        impl $trait for QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: QuadExt) -> QuadExt {
                (&self).$method(&rhs)
            }
        }
    };
}

quad_binop!(Add, add, checked_add);
quad_binop!(Sub, sub, checked_sub);
quad_binop!(Mul, mul, checked_mul);

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt { d: self.d, p: -&self.p, q: -&self.q }
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        -&self
    }
}

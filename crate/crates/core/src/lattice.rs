//! Lattice families `L(k)`, `M(k)`, `M(k)/2`, their exact Gram matrices
//! and the closed-form squared length of a coefficient vector.
//!
//! A lattice point is `a·e₀ + b·e₁ + c·e₂ + d·e₃` with basis
//! `{1, w, ω, w·ω}` (times a scale), where `w` is the hexagonal unit
//! `ω₁ = (1 + i√3)/2` or `i`, and `ω = ((2k−1) + i√(4k−1)) / (2k)`.
//! Real and imaginary parts of the basis live in `Q(√3, √(4k−1))`; all
//! inner products collapse into a single real quadratic field `Q(√D)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{perfect_square_u64, ArithError, QuadExt, Rational};
use crate::repcount::{self, Form};

/// Largest accepted family parameter; keeps `4k − 1` and `3(4k − 1)`
/// inside `u64`.
pub const MAX_PARAM: u64 = 1 << 60;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("{family} excluded: {witness}; the lattice is only 2-dimensional")]
    Degenerate { family: FamilyTag, witness: String },
    #[error("invalid parameter for {0}: {1}")]
    InvalidParameter(&'static str, String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Family and parameter. `MHalf` carries the odd integer `2k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyTag {
    L(u64),
    M(u64),
    MHalf(u64),
}

impl FamilyTag {
    pub fn name(&self) -> &'static str {
        match self {
            FamilyTag::L(_) => "L",
            FamilyTag::M(_) => "M",
            FamilyTag::MHalf(_) => "MHALF",
        }
    }

    /// `k` for `L` and `M`, `2k` for `MHalf`.
    pub fn param(&self) -> u64 {
        match *self {
            FamilyTag::L(k) | FamilyTag::M(k) | FamilyTag::MHalf(k) => k,
        }
    }

    pub fn with_param(&self, p: u64) -> FamilyTag {
        match self {
            FamilyTag::L(_) => FamilyTag::L(p),
            FamilyTag::M(_) => FamilyTag::M(p),
            FamilyTag::MHalf(_) => FamilyTag::MHalf(p),
        }
    }

    pub fn form(&self) -> Form {
        match self {
            FamilyTag::L(_) => Form::Hex,
            FamilyTag::M(_) | FamilyTag::MHalf(_) => Form::Square,
        }
    }

    /// Number of trivial unit vectors (both coefficient planes).
    pub fn trivial_count(&self) -> u64 {
        2 * self.form().unit_count()
    }

    /// Argument `n` of the form equation `H(a,b) = n` / `S(a,b) = n`
    /// whose solutions give the diagonal unit vectors.
    pub fn diagonal_norm(&self) -> u64 {
        match *self {
            FamilyTag::L(k) | FamilyTag::M(k) => k,
            FamilyTag::MHalf(n) => 2 * n,
        }
    }

    /// Unit-vector count predicted by the divisor formulas.
    pub fn predicted_units(&self) -> u64 {
        self.trivial_count() + repcount::count(self.form(), self.diagonal_norm())
    }

    fn validate(&self) -> Result<(), LatticeError> {
        let p = self.param();
        if p == 0 || p > MAX_PARAM {
            return Err(LatticeError::InvalidParameter(self.name(), format!("{p} out of range")));
        }
        if let FamilyTag::MHalf(n) = self {
            if n % 2 == 0 {
                return Err(LatticeError::InvalidParameter(
                    "MHALF",
                    format!("2k = {n} must be odd"),
                ));
            }
        }
        Ok(())
    }

    /// Radicand under `Im ω`: `4k − 1`, or `2·(2k) − 1` for `MHalf`.
    fn omega_radicand(&self) -> u64 {
        match *self {
            FamilyTag::L(k) | FamilyTag::M(k) => 4 * k - 1,
            FamilyTag::MHalf(n) => 2 * n - 1,
        }
    }

    /// `2k` as an integer (the denominator of `ω`).
    fn omega_denominator(&self) -> u64 {
        match *self {
            FamilyTag::L(k) | FamilyTag::M(k) => 2 * k,
            FamilyTag::MHalf(n) => n,
        }
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.name(), self.param())
    }
}

impl FromStr for FamilyTag {
    type Err = LatticeError;

    /// Accepts `L3`, `M(5)`, `MHALF13`, case-insensitive.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let upper = s.trim().to_ascii_uppercase();
        let (name, rest) = if let Some(r) = upper.strip_prefix("MHALF") {
            ("MHALF", r)
        } else if let Some(r) = upper.strip_prefix('M') {
            ("M", r)
        } else if let Some(r) = upper.strip_prefix('L') {
            ("L", r)
        } else {
            return Err(LatticeError::InvalidParameter("family", s.to_string()));
        };
        let digits = rest.trim_start_matches('(').trim_end_matches(')');
        let p: u64 = digits
            .parse()
            .map_err(|_| LatticeError::InvalidParameter("family", s.to_string()))?;
        family_from_name(name, p)
    }
}

pub fn family_from_name(name: &str, param: u64) -> Result<FamilyTag, LatticeError> {
    match name.to_ascii_uppercase().as_str() {
        "L" => Ok(FamilyTag::L(param)),
        "M" => Ok(FamilyTag::M(param)),
        "MHALF" | "M/2" | "MH" => Ok(FamilyTag::MHalf(param)),
        other => Err(LatticeError::InvalidParameter("family", other.to_string())),
    }
}

/// Witness of a degenerate parameter, e.g. `4·7−1 = 27 = 3·3²`.
pub fn degeneracy_witness(family: FamilyTag) -> Option<String> {
    match family {
        FamilyTag::L(k) => {
            let t = 4u128 * k as u128 - 1;
            if t % 3 != 0 {
                return None;
            }
            let s = perfect_square_u64((t / 3) as u64)?;
            Some(format!("4·{k}−1 = {t} = 3·{s}²"))
        }
        // 4k − 1 ≡ 3 (mod 4) is never a square
        FamilyTag::M(_) => None,
        FamilyTag::MHalf(n) => {
            let t = 2 * n - 1;
            let s = perfect_square_u64(t)?;
            Some(format!("2·{n}−1 = {t} = {s}²"))
        }
    }
}

pub fn is_degenerate(family: FamilyTag) -> bool {
    degeneracy_witness(family).is_some()
}

/// `|1 − ω|²`, which equals `1/k` (so `2/(2k)` for `MHalf`).
pub fn one_minus_omega_norm(family: FamilyTag) -> Rational {
    // |1 − ω|² = (1 − Re ω)² + (Im ω)², computed from the components
    let den = BigInt::from(family.omega_denominator());
    let re = Rational::new(&den - 1, den.clone());
    let one_minus_re = &Rational::one() - &re;
    let im_sq = Rational::new(family.omega_radicand(), &den * &den);
    &(&one_minus_re * &one_minus_re) + &im_sq
}

/// Integer coefficient vector `(a, b, c, d)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CoeffVec(pub [i64; 4]);

impl CoeffVec {
    pub const ZERO: CoeffVec = CoeffVec([0; 4]);

    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        CoeffVec([a, b, c, d])
    }

    pub fn is_zero(&self) -> bool {
        self.0 == [0; 4]
    }

    pub fn neg(&self) -> Self {
        CoeffVec(self.0.map(|x| -x))
    }
}

impl fmt::Display for CoeffVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "({a}, {b}, {c}, {d})")
    }
}

/// Element of `Q(√s, √t)` in the basis `{1, √s, √t, √(st)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Biquad {
    s: u64,
    t: u64,
    c: [Rational; 4],
}

impl Biquad {
    fn new(s: u64, t: u64, c: [Rational; 4]) -> Self {
        Biquad { s, t, c }
    }

    fn zero(s: u64, t: u64) -> Self {
        Self::new(s, t, Default::default())
    }

    fn add(&self, o: &Self) -> Self {
        Biquad::new(self.s, self.t, std::array::from_fn(|i| &self.c[i] + &o.c[i]))
    }

    fn sub(&self, o: &Self) -> Self {
        Biquad::new(self.s, self.t, std::array::from_fn(|i| &self.c[i] - &o.c[i]))
    }

    fn neg(&self) -> Self {
        Biquad::new(self.s, self.t, std::array::from_fn(|i| -&self.c[i]))
    }

    fn scale(&self, r: &Rational) -> Self {
        Biquad::new(self.s, self.t, std::array::from_fn(|i| &self.c[i] * r))
    }

    fn mul(&self, o: &Self) -> Self {
        let (a, b) = (&self.c, &o.c);
        let s = Rational::from(self.s as i64);
        let t = Rational::from(self.t as i64);
        let st = &s * &t;
        let m = |i: usize, j: usize| &a[i] * &b[j];
        let c0 = &(&m(0, 0) + &(&s * &m(1, 1))) + &(&(&t * &m(2, 2)) + &(&st * &m(3, 3)));
        let c1 = &(&m(0, 1) + &m(1, 0)) + &(&t * &(&m(2, 3) + &m(3, 2)));
        let c2 = &(&m(0, 2) + &m(2, 0)) + &(&s * &(&m(1, 3) + &m(3, 1)));
        let c3 = &(&m(0, 3) + &m(3, 0)) + &(&m(1, 2) + &m(2, 1));
        Biquad::new(self.s, self.t, [c0, c1, c2, c3])
    }

    fn to_f64(&self) -> f64 {
        let (s, t) = (self.s as f64, self.t as f64);
        self.c[0].to_f64()
            + self.c[1].to_f64() * s.sqrt()
            + self.c[2].to_f64() * t.sqrt()
            + self.c[3].to_f64() * (s * t).sqrt()
    }
}

/// Complex number with biquadratic real and imaginary parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct SymComplex {
    pub(crate) re: Biquad,
    pub(crate) im: Biquad,
}

impl SymComplex {
    pub(crate) fn mul(&self, o: &Self) -> Self {
        SymComplex {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    pub(crate) fn conj(&self) -> Self {
        SymComplex { re: self.re.clone(), im: self.im.neg() }
    }

    pub(crate) fn scale(&self, r: &Rational) -> Self {
        SymComplex { re: self.re.scale(r), im: self.im.scale(r) }
    }

    /// `Re(self · conj(o))`
    fn inner(&self, o: &Self) -> Biquad {
        self.re.mul(&o.re).add(&self.im.mul(&o.im))
    }

    pub(crate) fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    /// The eight rational coordinates (real parts first).
    pub(crate) fn coords(&self) -> impl Iterator<Item = &Rational> {
        self.re.c.iter().chain(self.im.c.iter())
    }
}

/// Closed-form numerators: `|v|² = (P + Q√D) / den` for integers `P`, `Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum ClosedForm {
    /// `den = 2k`: `P = 2k(H(a,b) + H(c,d)) + (2k−1)(2ac + 2bd + ad + bc)`, `Q = bc − ad`
    Hex { k: u64 },
    /// `den = k`: `P = k(S(a,b) + S(c,d)) + (2k−1)(ac + bd)`, `Q = bc − ad`
    Square { k: u64 },
    /// `den = 4n`: `P = n(S(a,b) + S(c,d)) + 2(n−1)(ac + bd)`, `Q = 2(bc − ad)`
    HalfSquare { n: u64 },
}

impl ClosedForm {
    fn den(&self) -> u64 {
        match *self {
            ClosedForm::Hex { k } => 2 * k,
            ClosedForm::Square { k } => k,
            ClosedForm::HalfSquare { n } => 4 * n,
        }
    }

    fn numerators_i128(&self, v: &CoeffVec) -> Option<(i128, i128)> {
        let [a, b, c, d] = v.0.map(|x| x as i128);
        let mul = |x: i128, y: i128| x.checked_mul(y);
        let h = |x: i128, y: i128| mul(x, x)?.checked_add(mul(x, y)?)?.checked_add(mul(y, y)?);
        let s = |x: i128, y: i128| mul(x, x)?.checked_add(mul(y, y)?);
        let ac_bd = mul(a, c)?.checked_add(mul(b, d)?)?;
        let cross = mul(b, c)?.checked_sub(mul(a, d)?)?;
        match *self {
            ClosedForm::Hex { k } => {
                let k2 = 2 * k as i128;
                let mixed = mul(2, ac_bd)?.checked_add(mul(a, d)?)?.checked_add(mul(b, c)?)?;
                let p = mul(k2, h(a, b)?.checked_add(h(c, d)?)?)?.checked_add(mul(k2 - 1, mixed)?)?;
                Some((p, cross))
            }
            ClosedForm::Square { k } => {
                let k = k as i128;
                let p = mul(k, s(a, b)?.checked_add(s(c, d)?)?)?.checked_add(mul(2 * k - 1, ac_bd)?)?;
                Some((p, cross))
            }
            ClosedForm::HalfSquare { n } => {
                let n = n as i128;
                let p = mul(n, s(a, b)?.checked_add(s(c, d)?)?)?.checked_add(mul(2 * (n - 1), ac_bd)?)?;
                Some((p, mul(2, cross)?))
            }
        }
    }

    fn numerators_big(&self, v: &CoeffVec) -> (BigInt, BigInt) {
        let [a, b, c, d] = v.0.map(BigInt::from);
        let h = |x: &BigInt, y: &BigInt| x * x + x * y + y * y;
        let s = |x: &BigInt, y: &BigInt| x * x + y * y;
        let ac_bd = &a * &c + &b * &d;
        let cross = &b * &c - &a * &d;
        match *self {
            ClosedForm::Hex { k } => {
                let k2 = BigInt::from(2 * k);
                let mixed = BigInt::from(2) * &ac_bd + &a * &d + &b * &c;
                let p = &k2 * (h(&a, &b) + h(&c, &d)) + (&k2 - 1) * mixed;
                (p, cross)
            }
            ClosedForm::Square { k } => {
                let k = BigInt::from(k);
                let p = &k * (s(&a, &b) + s(&c, &d)) + (BigInt::from(2) * &k - 1) * ac_bd;
                (p, cross)
            }
            ClosedForm::HalfSquare { n } => {
                let n = BigInt::from(n);
                let p = &n * (s(&a, &b) + s(&c, &d)) + BigInt::from(2) * (&n - 1) * ac_bd;
                (p, BigInt::from(2) * cross)
            }
        }
    }

    /// Machine-word fast path; escalates to `BigInt` on overflow.
    fn numerators(&self, v: &CoeffVec) -> (BigInt, BigInt) {
        match self.numerators_i128(v) {
            Some((p, q)) => (BigInt::from(p), BigInt::from(q)),
            None => self.numerators_big(v),
        }
    }
}

/// A non-degenerate lattice: radicand, scale and exact Gram matrix.
#[derive(Clone, Debug)]
pub struct LatticeSpec {
    family: FamilyTag,
    d: u64,
    scale: Rational,
    gram: [[QuadExt; 4]; 4],
    basis: [SymComplex; 4],
    closed: ClosedForm,
}

impl PartialEq for LatticeSpec {
    fn eq(&self, other: &Self) -> bool {
        self.family == other.family
    }
}

impl Eq for LatticeSpec {}

/// Builds the lattice for `family`, rejecting degenerate parameters.
pub fn make_lattice(family: FamilyTag) -> Result<LatticeSpec, LatticeError> {
    family.validate()?;
    if let Some(witness) = degeneracy_witness(family) {
        return Err(LatticeError::Degenerate { family, witness });
    }
    let s = 3u64;
    let t = family.omega_radicand();
    let (d, scale, closed) = match family {
        FamilyTag::L(k) => (3 * t, Rational::one(), ClosedForm::Hex { k }),
        FamilyTag::M(k) => (t, Rational::one(), ClosedForm::Square { k }),
        FamilyTag::MHalf(n) => (t, Rational::new(1, 2), ClosedForm::HalfSquare { n }),
    };
    let r = |n: i64, m: i64| Rational::new(n, m);
    let bq = |c0: Rational, c1: Rational, c2: Rational, c3: Rational| Biquad::new(s, t, [c0, c1, c2, c3]);
    let z = Rational::zero;
    let one = SymComplex { re: bq(r(1, 1), z(), z(), z()), im: Biquad::zero(s, t) };
    let w = match family {
        // ω₁ = 1/2 + (√3/2)·i
        FamilyTag::L(_) => SymComplex { re: bq(r(1, 2), z(), z(), z()), im: bq(z(), r(1, 2), z(), z()) },
        _ => SymComplex { re: Biquad::zero(s, t), im: bq(r(1, 1), z(), z(), z()) },
    };
    let den = family.omega_denominator() as i64;
    let omega = SymComplex {
        re: bq(r(den - 1, den), z(), z(), z()),
        im: bq(z(), z(), r(1, den), z()),
    };
    let w_omega = w.mul(&omega);
    let basis = [one, w, omega, w_omega].map(|e| e.scale(&scale));

    let gram: [[QuadExt; 4]; 4] = std::array::from_fn(|i| {
        std::array::from_fn(|j| project(&basis[i].inner(&basis[j]), family, d))
    });
    let spec = LatticeSpec { family, d, scale, gram, basis, closed };
    debug_assert!(spec.trace_form_minors().iter().all(|m| m.signum() > 0));
    Ok(spec)
}

/// Collapses an inner product from `Q(√3, √t)` into `Q(√D)`.
fn project(x: &Biquad, family: FamilyTag, d: u64) -> QuadExt {
    let c = &x.c;
    let (p, q) = match family {
        FamilyTag::L(_) => {
            assert!(c[1].is_zero() && c[2].is_zero(), "inner product left Q(√D)");
            (c[0].clone(), c[3].clone())
        }
        _ => {
            assert!(c[1].is_zero() && c[3].is_zero(), "inner product left Q(√D)");
            (c[0].clone(), c[2].clone())
        }
    };
    QuadExt::from_parts_unchecked(d, p, q)
}

fn det<T: Clone>(m: &[Vec<T>], add: &dyn Fn(&T, &T) -> T, sub: &dyn Fn(&T, &T) -> T, mul: &dyn Fn(&T, &T) -> T) -> T {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let cofactor = |col: usize| {
        let minor: Vec<Vec<T>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(j, _)| j != col).map(|(_, x)| x.clone()).collect())
            .collect();
        mul(&m[0][col], &det(&minor, add, sub, mul))
    };
    (1..n).fold(cofactor(0), |acc, col| {
        if col % 2 == 0 {
            add(&acc, &cofactor(col))
        } else {
            sub(&acc, &cofactor(col))
        }
    })
}

impl LatticeSpec {
    pub fn family(&self) -> FamilyTag {
        self.family
    }

    /// Radicand `D` of the field holding all squared lengths.
    pub fn radicand(&self) -> u64 {
        self.d
    }

    pub fn scale(&self) -> &Rational {
        &self.scale
    }

    pub fn gram(&self) -> &[[QuadExt; 4]; 4] {
        &self.gram
    }

    pub(crate) fn basis(&self) -> &[SymComplex; 4] {
        &self.basis
    }

    pub fn predicted_units(&self) -> u64 {
        self.family.predicted_units()
    }

    /// Rational parts of the Gram entries. As a quadratic form this is
    /// `(|z|² + |z'|²) / 2`, with `z'` the image of `z` under `√D ↦ −√D`;
    /// it is positive definite, unlike the real Gram matrix, which has
    /// rank 2 because all four basis vectors lie in the plane.
    pub fn trace_gram(&self) -> [[Rational; 4]; 4] {
        std::array::from_fn(|i| std::array::from_fn(|j| self.gram[i][j].rational_part().clone()))
    }

    /// Leading principal minors of [`Self::trace_gram`].
    pub fn trace_form_minors(&self) -> Vec<Rational> {
        let g = self.trace_gram();
        (1..=4)
            .map(|n| {
                let m: Vec<Vec<Rational>> = (0..n).map(|i| g[i][..n].to_vec()).collect();
                det(&m, &|a, b| a + b, &|a, b| a - b, &|a, b| a * b)
            })
            .collect()
    }

    /// Leading principal minors of the real Gram matrix.
    pub fn gram_minors(&self) -> Vec<QuadExt> {
        (1..=4)
            .map(|n| {
                let m: Vec<Vec<QuadExt>> = (0..n).map(|i| self.gram[i][..n].to_vec()).collect();
                det(&m, &|a, b| a + b, &|a, b| a - b, &|a, b| a * b)
            })
            .collect()
    }

    fn closed_numerators(&self, v: &CoeffVec) -> (BigInt, BigInt) {
        self.closed.numerators(v)
    }

    /// Exact `|v|²` from the closed form.
    pub fn sq_length(&self, v: &CoeffVec) -> QuadExt {
        let (p, q) = self.closed_numerators(v);
        let den = BigInt::from(self.closed.den());
        QuadExt::from_parts_unchecked(self.d, Rational::new(p, den.clone()), Rational::new(q, den))
    }

    /// Galois conjugate of `|v|²` (`√D ↦ −√D`); nonnegative as well.
    pub fn conjugate_sq_length(&self, v: &CoeffVec) -> QuadExt {
        self.sq_length(v).conjugate()
    }

    /// `|v|² == target`, decided on integer numerators without building
    /// rationals.
    pub fn has_sq_length(&self, v: &CoeffVec, target: &Rational) -> bool {
        let den = self.closed.den() as i128;
        if let Some((p, q)) = self.closed.numerators_i128(v) {
            if q != 0 {
                return false;
            }
            if let (Some(tn), Some(td)) = (target.numer().to_i128(), target.denom().to_i128()) {
                if let (Some(l), Some(r)) = (p.checked_mul(td), tn.checked_mul(den)) {
                    return l == r;
                }
            }
        }
        let (p, q) = self.closed.numerators_big(v);
        q.is_zero() && p * target.denom() == target.numer() * BigInt::from(den)
    }

    pub fn is_unit(&self, v: &CoeffVec) -> bool {
        self.has_sq_length(v, &Rational::one())
    }

    /// `vᵀ·G·v` evaluated entry by entry over `Q(√D)`.
    pub fn quadratic_form(&self, v: &CoeffVec) -> QuadExt {
        let mut acc = QuadExt::zero(self.d);
        for i in 0..4 {
            for j in 0..4 {
                let coeff = Rational::from(BigInt::from(v.0[i]) * v.0[j]);
                acc = &acc + &self.gram[i][j].scale(&coeff);
            }
        }
        acc
    }

    /// Floating-point position of `v` in the plane.
    pub fn point(&self, v: &CoeffVec) -> (f64, f64) {
        self.basis.iter().zip(v.0).fold((0.0, 0.0), |(x, y), (e, c)| {
            let (ex, ey) = e.to_f64();
            (x + c as f64 * ex, y + c as f64 * ey)
        })
    }

    /// Rational trace-form value `(|v|² + |v|²') / 2`.
    pub fn trace_length(&self, v: &CoeffVec) -> Rational {
        self.sq_length(v).rational_part().clone()
    }
}

/// Roots of unity whose multiplication should map the lattice to itself:
/// the unit `w` of the sublattices, plus a primitive 12th root for `M(1)`,
/// where `ω = ω₁` and both sublattice types coexist.
pub(crate) fn rotation_units(spec: &LatticeSpec) -> Vec<(String, SymComplex)> {
    let family = spec.family();
    let (s, t) = (3, family.omega_radicand());
    let r = |n: i64, m: i64| Rational::new(n, m);
    let z = Rational::zero;
    let bq = |c: [Rational; 4]| Biquad::new(s, t, c);
    let mut units = Vec::new();
    match family {
        FamilyTag::L(_) => units.push((
            "rotation by ω₁".to_string(),
            SymComplex { re: bq([r(1, 2), z(), z(), z()]), im: bq([z(), r(1, 2), z(), z()]) },
        )),
        _ => units.push((
            "rotation by i".to_string(),
            SymComplex { re: Biquad::zero(s, t), im: bq([r(1, 1), z(), z(), z()]) },
        )),
    }
    if family == FamilyTag::M(1) {
        // ζ = (√3 + i)/2, with √3 held in the √t slot since t = 3
        units.push((
            "rotation by ζ₁₂".to_string(),
            SymComplex { re: bq([z(), z(), r(1, 2), z()]), im: bq([r(1, 2), z(), z(), z()]) },
        ));
    }
    units
}

/// Free-function form of [`LatticeSpec::sq_length`].
pub fn sq_length(spec: &LatticeSpec, v: &CoeffVec) -> QuadExt {
    spec.sq_length(v)
}

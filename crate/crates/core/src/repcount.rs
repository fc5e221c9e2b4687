//! Representation counts of the hexagonal form `a² + ab + b²` and the
//! square form `a² + b²`, integer factorization, and the lowest-k sieve.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_integer::Roots;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Binary quadratic form whose representation numbers drive the diagonal
/// unit vectors of a lattice family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Form {
    /// `H(a, b) = a² + ab + b²`
    Hex,
    /// `S(a, b) = a² + b²`
    Square,
}

impl Form {
    pub fn eval(self, a: i64, b: i64) -> i128 {
        let (a, b) = (a as i128, b as i128);
        match self {
            Form::Hex => a * a + a * b + b * b,
            Form::Square => a * a + b * b,
        }
    }

    /// Number of units of the underlying ring (6 Eisenstein, 4 Gaussian).
    pub fn unit_count(self) -> u64 {
        match self {
            Form::Hex => 6,
            Form::Square => 4,
        }
    }

    fn modulus(self) -> u64 {
        match self {
            Form::Hex => 3,
            Form::Square => 4,
        }
    }

    /// Role of a prime in the representation count.
    fn classify(self, p: u64) -> PrimeKind {
        match self {
            Form::Hex if p == 3 => PrimeKind::Ramified,
            Form::Square if p == 2 => PrimeKind::Ramified,
            Form::Hex if p % 3 == 1 => PrimeKind::Split,
            Form::Square if p % 4 == 1 => PrimeKind::Split,
            _ => PrimeKind::Inert,
        }
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Form::Hex => "hex",
            Form::Square => "square",
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum PrimeKind {
    Split,
    Inert,
    Ramified,
}

/// Prime factorization as `(prime, exponent)` pairs, primes increasing.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct FactorMap(Vec<(u64, u32)>);

impl FactorMap {
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, p: u64) -> u32 {
        self.0.iter().find(|(q, _)| *q == p).map_or(0, |&(_, e)| e)
    }

    /// Product of `p^e`, or `None` on u64 overflow.
    pub fn value(&self) -> Option<u64> {
        self.0
            .iter()
            .try_fold(1u64, |acc, &(p, e)| acc.checked_mul(p.checked_pow(e)?))
    }
}

const TRIAL_BOUND: u64 = 1_000_000;

/// Complete factorization of `n ≥ 1`: trial division below 10⁶, then
/// Pollard rho (Brent) with a deterministic Miller–Rabin test.
pub fn factorize(n: u64) -> FactorMap {
    assert!(n >= 1, "factorize requires n >= 1");
    let mut rest = n;
    let mut factors: BTreeMap<u64, u32> = BTreeMap::new();
    let mut p = 2u64;
    while p <= TRIAL_BOUND && p * p <= rest {
        while rest % p == 0 {
            *factors.entry(p).or_default() += 1;
            rest /= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        let mut stack = vec![rest];
        while let Some(m) = stack.pop() {
            if m == 1 {
                continue;
            }
            if is_prime(m) {
                *factors.entry(m).or_default() += 1;
                continue;
            }
            let d = pollard_rho(m);
            stack.push(d);
            stack.push(m / d);
        }
    }
    FactorMap(factors.into_iter().collect())
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for all `u64` (first twelve prime bases).
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Nontrivial divisor of an odd composite `n`.
fn pollard_rho(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    if let Some(s) = crate::arith::perfect_square_u64(n) {
        return s;
    }
    for c in 1u64.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut y, mut r, mut q) = (2u64, 1u64, 1u64);
        let (mut x, mut ys) = (0u64, 0u64);
        let mut g = 1;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..128.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += 128;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!()
}

/// All integer pairs `(a, b)` with `form(a, b) = n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepSolutionSet {
    pub form: Form,
    pub n: u64,
    pub solutions: BTreeSet<(i64, i64)>,
}

impl RepSolutionSet {
    pub fn len(&self) -> usize {
        self.solutions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.solutions.is_empty()
    }

    pub fn contains(&self, a: i64, b: i64) -> bool {
        self.solutions.contains(&(a, b))
    }
}

/// Solutions of `a² + ab + b² = n`. Both `|a|, |b| ≤ ⌈2√(n/3)⌉`; each `b`
/// is solved for `a` through the discriminant `4n − 3b²`.
pub fn hex_reps(n: u64) -> RepSolutionSet {
    let n_i = n as i128;
    let bound = ((4 * n_i) / 3).sqrt() as i64 + 1;
    let mut solutions = BTreeSet::new();
    for b in -bound..=bound {
        let disc = 4 * n_i - 3 * (b as i128) * (b as i128);
        if disc < 0 {
            continue;
        }
        let s = disc.sqrt();
        if s * s != disc || (s + b as i128) % 2 != 0 {
            continue;
        }
        for root in [s, -s] {
            let a = ((root - b as i128) / 2) as i64;
            solutions.insert((a, b));
        }
    }
    RepSolutionSet { form: Form::Hex, n, solutions }
}

/// Solutions of `a² + b² = n`.
pub fn square_reps(n: u64) -> RepSolutionSet {
    let bound = n.sqrt() as i64;
    let mut solutions = BTreeSet::new();
    for a in -bound..=bound {
        let rest = n - (a.unsigned_abs() * a.unsigned_abs());
        if let Some(s) = crate::arith::perfect_square_u64(rest) {
            solutions.insert((a, s as i64));
            solutions.insert((a, -(s as i64)));
        }
    }
    RepSolutionSet { form: Form::Square, n, solutions }
}

pub fn reps(form: Form, n: u64) -> RepSolutionSet {
    match form {
        Form::Hex => hex_reps(n),
        Form::Square => square_reps(n),
    }
}

/// Representation count from the factorization: zero if an inert prime
/// has odd exponent, else `units · ∏(e + 1)` over split primes.
pub fn count_from_factors(form: Form, factors: &FactorMap) -> u64 {
    let mut product = 1u64;
    for &(p, e) in factors.factors() {
        match form.classify(p) {
            PrimeKind::Split => product *= e as u64 + 1,
            PrimeKind::Inert if e % 2 == 1 => return 0,
            _ => {}
        }
    }
    form.unit_count() * product
}

/// Number of solutions of `H(a, b) = n`.
pub fn u_of_k(n: u64) -> u64 {
    count_from_factors(Form::Hex, &factorize(n))
}

/// Number of solutions of `S(a, b) = n`.
pub fn v_of_k(n: u64) -> u64 {
    count_from_factors(Form::Square, &factorize(n))
}

fn divisor_class_difference(n: u64, modulus: u64) -> i64 {
    assert!(n >= 1);
    let mut diff = 0i64;
    let mut tally = |d: u64| match d % modulus {
        1 => diff += 1,
        r if r == modulus - 1 => diff -= 1,
        _ => {}
    };
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            tally(d);
            if d * d != n {
                tally(n / d);
            }
        }
        d += 1;
    }
    diff
}

/// `6 (d₃,₁(n) − d₃,₂(n))` by direct divisor enumeration.
pub fn u_divisor_form(n: u64) -> u64 {
    (6 * divisor_class_difference(n, 3)) as u64
}

/// `4 (d₄,₁(n) − d₄,₃(n))` by direct divisor enumeration.
pub fn v_divisor_form(n: u64) -> u64 {
    (4 * divisor_class_difference(n, 4)) as u64
}

pub fn count(form: Form, n: u64) -> u64 {
    match form {
        Form::Hex => u_of_k(n),
        Form::Square => v_of_k(n),
    }
}

const SEGMENT: u64 = 1 << 16;

/// Segmented sieve producing the representation count of every
/// `k ∈ [1, limit]` without per-k factorization.
pub struct CountSieve {
    form: Form,
    limit: u64,
    primes: Vec<u64>,
}

impl CountSieve {
    pub fn new(form: Form, limit: u64) -> Self {
        let root = limit.sqrt() + 1;
        CountSieve { form, limit, primes: small_primes(root) }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    fn segments(&self) -> u64 {
        self.limit.div_ceil(SEGMENT)
    }

    /// Counts for `k ∈ [lo, hi)`, indexed by `k − lo`.
    pub fn segment_counts(&self, lo: u64, hi: u64) -> Vec<u64> {
        let len = (hi - lo) as usize;
        let mut rest: Vec<u64> = (lo..hi).collect();
        let mut product = vec![1u64; len];
        for &p in &self.primes {
            if p * p >= hi {
                break;
            }
            let kind = self.form.classify(p);
            let first = lo.div_ceil(p) * p;
            let mut k = first;
            while k < hi {
                let i = (k - lo) as usize;
                let mut e = 0u64;
                while rest[i] % p == 0 {
                    rest[i] /= p;
                    e += 1;
                }
                match kind {
                    PrimeKind::Split => product[i] *= e + 1,
                    PrimeKind::Inert if e % 2 == 1 => product[i] = 0,
                    _ => {}
                }
                k += p;
            }
        }
        let units = self.form.unit_count();
        for i in 0..len {
            // what survives trial by primes below √hi is 1 or a single prime
            if rest[i] > 1 {
                match self.form.classify(rest[i]) {
                    PrimeKind::Split => product[i] *= 2,
                    PrimeKind::Inert => product[i] = 0,
                    PrimeKind::Ramified => {}
                }
            }
            product[i] *= units;
        }
        product
    }

    fn bounds(&self, segment: u64) -> (u64, u64) {
        let lo = (segment * SEGMENT).max(1);
        let hi = ((segment + 1) * SEGMENT).min(self.limit + 1);
        (lo, hi)
    }

    /// Smallest non-excluded `k ≤ limit` whose count equals `target`.
    pub fn lowest(&self, target: u64, exclude: &(dyn Fn(u64) -> bool + Sync)) -> Option<u64> {
        (0..self.segments()).into_par_iter().find_map_first(|s| {
            let (lo, hi) = self.bounds(s);
            self.segment_counts(lo, hi)
                .into_iter()
                .zip(lo..hi)
                .find(|&(c, k)| c == target && !exclude(k))
                .map(|(_, k)| k)
        })
    }

    /// First non-excluded occurrence of every count value seen in `[1, limit]`.
    pub fn first_occurrences(&self, exclude: &(dyn Fn(u64) -> bool + Sync)) -> BTreeMap<u64, u64> {
        let partial: Vec<BTreeMap<u64, u64>> = (0..self.segments())
            .into_par_iter()
            .map(|s| {
                let (lo, hi) = self.bounds(s);
                let mut firsts = BTreeMap::new();
                for (c, k) in self.segment_counts(lo, hi).into_iter().zip(lo..hi) {
                    if !exclude(k) {
                        firsts.entry(c).or_insert(k);
                    }
                }
                firsts
            })
            .collect();
        let mut merged = BTreeMap::new();
        for map in partial {
            for (c, k) in map {
                merged.entry(c).or_insert(k);
            }
        }
        merged
    }
}

fn small_primes(bound: u64) -> Vec<u64> {
    let n = bound as usize + 1;
    let mut composite = vec![false; n];
    let mut primes = Vec::new();
    for i in 2..n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j < n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

/// Smallest non-excluded `k ≤ limit` whose representation count under
/// `form` equals `target_count`; `None` when no such `k` is below `limit`.
pub fn lowest_k(
    target_count: u64,
    form: Form,
    exclude: &(dyn Fn(u64) -> bool + Sync),
    limit: u64,
) -> Option<u64> {
    if target_count == 0 || target_count % form.unit_count() != 0 {
        // counts are always multiples of the unit count; nothing to scan for
        return None;
    }
    CountSieve::new(form, limit).lowest(target_count, exclude)
}

/// Residue modulus of the split primes for `form` (3 or 4).
pub fn split_modulus(form: Form) -> u64 {
    form.modulus()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_hex(n: i64) -> BTreeSet<(i64, i64)> {
        let b = 2 * ((n as f64).sqrt() as i64) + 2;
        let mut out = BTreeSet::new();
        for x in -b..=b {
            for y in -b..=b {
                if x * x + x * y + y * y == n {
                    out.insert((x, y));
                }
            }
        }
        out
    }

    fn brute_square(n: i64) -> BTreeSet<(i64, i64)> {
        let b = (n as f64).sqrt() as i64 + 1;
        let mut out = BTreeSet::new();
        for x in -b..=b {
            for y in -b..=b {
                if x * x + y * y == n {
                    out.insert((x, y));
                }
            }
        }
        out
    }

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize(637).factors(), &[(7, 2), (13, 1)]);
        assert_eq!(
            factorize(13_882_141).factors(),
            &[(7, 2), (13, 1), (19, 1), (31, 1), (37, 1)]
        );
        assert!(factorize(1).is_empty());
    }

    #[test]
    fn factorize_beyond_trial_bound() {
        // two primes above 10⁶ force the rho path
        let p = 1_000_003u64;
        let q = 1_000_033u64;
        assert_eq!(factorize(p * q).factors(), &[(p, 1), (q, 1)]);
        assert_eq!(factorize(p * p).factors(), &[(p, 2)]);
        let big_prime = 18_446_744_073_709_551_557u64;
        assert_eq!(factorize(big_prime).factors(), &[(big_prime, 1)]);
        let n = 2u64.pow(5) * 3 * 4_294_967_291;
        assert_eq!(factorize(n).value(), Some(n));
    }

    #[test]
    fn miller_rabin_matches_trial_division() {
        for n in 0..20_000u64 {
            let trial = n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0);
            assert_eq!(is_prime(n), trial, "n = {n}");
        }
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2, 3, 5, 7
    }

    #[test]
    fn hex_rep_examples() {
        let one = hex_reps(1);
        let expected: BTreeSet<_> = [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)].into();
        assert_eq!(one.solutions, expected);
        let three = hex_reps(3);
        assert_eq!(three.len(), 6);
        assert!(three.contains(1, 1) && three.contains(2, -1));
        assert!(hex_reps(2).is_empty());
        let four: BTreeSet<_> = [(2, 0), (-2, 0), (0, 2), (0, -2), (2, -2), (-2, 2)].into();
        assert_eq!(hex_reps(4).solutions, four);
        assert_eq!(hex_reps(0).len(), 1);
    }

    #[test]
    fn square_rep_examples() {
        assert_eq!(square_reps(1).len(), 4);
        let two: BTreeSet<_> = [(1, 1), (1, -1), (-1, 1), (-1, -1)].into();
        assert_eq!(square_reps(2).solutions, two);
        assert!(square_reps(3).is_empty());
    }

    #[test]
    fn reps_match_brute_force() {
        for n in 0..400 {
            assert_eq!(hex_reps(n as u64).solutions, brute_hex(n), "hex n = {n}");
            assert_eq!(square_reps(n as u64).solutions, brute_square(n), "square n = {n}");
        }
    }

    #[test]
    fn count_examples() {
        assert_eq!(u_of_k(3), 6);
        assert_eq!(u_of_k(637), 36);
        assert_eq!(u_of_k(2), 0);
        assert_eq!(u_of_k(13_882_141), 288);
        assert_eq!(u_divisor_form(13), 12);
        assert_eq!(u_divisor_form(4), 6);
        assert_eq!(u_divisor_form(1), 6);
        assert_eq!(v_of_k(25), 12);
        assert_eq!(v_of_k(1105), 32);
        assert_eq!(v_of_k(9), 4);
        assert_eq!(v_divisor_form(5), 8);
        assert_eq!(v_divisor_form(3), 0);
        assert_eq!(v_divisor_form(65), 16);
    }

    #[test]
    fn formulas_agree_with_reps() {
        for n in 1..=2000u64 {
            let h = hex_reps(n).len() as u64;
            assert_eq!(h, u_of_k(n), "n = {n}");
            assert_eq!(h, u_divisor_form(n), "n = {n}");
            let s = square_reps(n).len() as u64;
            assert_eq!(s, v_of_k(n), "n = {n}");
            assert_eq!(s, v_divisor_form(n), "n = {n}");
        }
    }

    #[test]
    fn multiplicativity() {
        for m in 1..=500u64 {
            for n in (1..=500u64).step_by(7) {
                if gcd(m, n) != 1 {
                    continue;
                }
                let (um, un, umn) = (u_of_k(m), u_of_k(n), u_of_k(m * n));
                if um != 0 && un != 0 && umn != 0 {
                    assert_eq!(umn * 6, um * un, "u({m}·{n})");
                }
                let (vm, vn, vmn) = (v_of_k(m), v_of_k(n), v_of_k(m * n));
                if vm != 0 && vn != 0 && vmn != 0 {
                    assert_eq!(vmn * 4, vm * vn, "v({m}·{n})");
                }
            }
        }
    }

    #[test]
    fn doubling_keeps_square_count() {
        for n in 1..=10_000u64 {
            assert_eq!(v_of_k(2 * n), v_of_k(n), "n = {n}");
        }
    }

    #[test]
    fn odd_power_of_two_kills_hex() {
        for m in 0..=10_000u64 {
            assert!(hex_reps(2 * (2 * m + 1)).is_empty(), "m = {m}");
        }
    }

    #[test]
    fn rep_sets_closed_under_symmetries() {
        for n in 0..300u64 {
            let h = hex_reps(n);
            for &(a, b) in &h.solutions {
                assert!(h.contains(-a, -b) && h.contains(b, a) && h.contains(a + b, -b));
            }
            let s = square_reps(n);
            for &(a, b) in &s.solutions {
                assert!(s.contains(-a, b) && s.contains(b, a));
            }
        }
    }

    #[test]
    fn sieve_matches_factorization() {
        for form in [Form::Hex, Form::Square] {
            let sieve = CountSieve::new(form, 200_000);
            for s in [0u64, 1, 2] {
                let (lo, hi) = sieve.bounds(s);
                let counts = sieve.segment_counts(lo, hi);
                for (c, k) in counts.into_iter().zip(lo..hi).step_by(97) {
                    assert_eq!(c, count(form, k), "{form} k = {k}");
                }
            }
        }
    }

    #[test]
    fn lowest_k_small() {
        let none = |_: u64| false;
        assert_eq!(lowest_k(6, Form::Hex, &none, 100), Some(1));
        assert_eq!(lowest_k(12, Form::Hex, &none, 100), Some(7));
        assert_eq!(lowest_k(8, Form::Square, &none, 100), Some(5));
        assert_eq!(lowest_k(13, Form::Square, &none, 100), None);
        assert_eq!(lowest_k(4 * 7, Form::Square, &none, 1000), None);
        let odd_only = |k: u64| k % 2 == 0;
        assert_eq!(lowest_k(4, Form::Square, &odd_only, 100), Some(1));
    }

    #[test]
    fn worker_count_does_not_change_result() {
        let none = |_: u64| false;
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let single = pool.install(|| lowest_k(36, Form::Hex, &none, 1_000_000));
        assert_eq!(single, lowest_k(36, Form::Hex, &none, 1_000_000));
        assert_eq!(single, Some(637));
    }
}

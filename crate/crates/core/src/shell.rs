//! Exact shell enumeration and unit-vector classification.
//!
//! The real Gram matrix of four plane vectors is singular, so the search
//! runs on the rational trace form `T(v) = (|v|² + |v|²')/2`, which is
//! positive definite. `|v|² = t` for rational `t` forces the `√D` part to
//! vanish, hence `T(v) = t`, so enumerating `T(v) ≤ t` and then testing
//! `|v|² = t` exactly is complete.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::Rational;
use crate::lattice::{CoeffVec, FamilyTag, LatticeSpec};
use crate::repcount::square_reps;

/// Triangular decomposition `T(v) = Σᵢ qᵢ (vᵢ + Σⱼ₍ⱼ₎ μᵢⱼ vⱼ)²` (j > i).
#[derive(Clone, Debug)]
pub struct TraceDecomposition {
    pub diag: [Rational; 4],
    pub mu: [[Rational; 4]; 4],
}

impl TraceDecomposition {
    pub fn new(spec: &LatticeSpec) -> Self {
        let a = spec.trace_gram();
        let mut diag: [Rational; 4] = Default::default();
        let mut mu: [[Rational; 4]; 4] = Default::default();
        for i in 0..4 {
            let mut q = a[i][i].clone();
            for k in 0..i {
                q = &q - &(&diag[k] * &(&mu[k][i] * &mu[k][i]));
            }
            assert!(q.signum() > 0, "trace form of {} is not positive definite", spec.family());
            diag[i] = q;
            mu[i][i] = Rational::one();
            for j in i + 1..4 {
                let mut x = a[i][j].clone();
                for k in 0..i {
                    x = &x - &(&diag[k] * &(&mu[k][i] * &mu[k][j]));
                }
                mu[i][j] = &x / &diag[i];
            }
        }
        TraceDecomposition { diag, mu }
    }

    /// Diagonal of the inverse trace Gram matrix, from `U⁻¹` and `1/qₖ`.
    pub fn inverse_diagonal(&self) -> [Rational; 4] {
        // invert the unit upper-triangular U by back substitution
        let mut inv: [[Rational; 4]; 4] = Default::default();
        for col in 0..4 {
            for row in (0..=col).rev() {
                if row == col {
                    inv[row][col] = Rational::one();
                    continue;
                }
                let mut acc = Rational::zero();
                for k in row + 1..=col {
                    acc = &acc + &(&self.mu[row][k] * &inv[k][col]);
                }
                inv[row][col] = -acc;
            }
        }
        std::array::from_fn(|i| {
            (i..4).fold(Rational::zero(), |acc, k| &acc + &(&(&inv[i][k] * &inv[i][k]) / &self.diag[k]))
        })
    }
}

/// Per-coordinate bounds `|vᵢ| ≤ ⌈√(t·(T⁻¹)ᵢᵢ)⌉` for every `v` with `T(v) ≤ t`.
pub fn coordinate_bounds(spec: &LatticeSpec, target: &Rational) -> [i64; 4] {
    let inv = TraceDecomposition::new(spec).inverse_diagonal();
    inv.map(|x| (&x * target).sqrt_ceil().to_i64().expect("coordinate bound fits i64"))
}

fn walk(
    dec: &TraceDecomposition,
    level: usize,
    prefix: &mut [i64; 4],
    budget: &Rational,
    visit: &mut dyn FnMut(&CoeffVec),
) {
    let mut center = Rational::zero();
    for j in level + 1..4 {
        center = &center - &(&dec.mu[level][j] * &Rational::from(prefix[j]));
    }
    let ratio = budget / &dec.diag[level];
    let reach = ratio.sqrt_ceil();
    let lo = center.floor() - &reach;
    let hi = center.ceil() + &reach;
    let (lo, hi) = (lo.to_i64().expect("range fits i64"), hi.to_i64().expect("range fits i64"));
    for x in lo..=hi {
        let off = &Rational::from(x) - &center;
        let used = &dec.diag[level] * &(&off * &off);
        let rest = budget - &used;
        if rest.signum() < 0 {
            continue;
        }
        prefix[level] = x;
        if level == 0 {
            visit(&CoeffVec(*prefix));
        } else {
            walk(dec, level - 1, prefix, &rest, visit);
        }
    }
    prefix[level] = 0;
}

/// Every `v` with trace form `T(v) ≤ bound`, in sorted order.
pub fn enumerate_trace_ball(spec: &LatticeSpec, bound: &Rational) -> Vec<CoeffVec> {
    enumerate_filtered(spec, bound, &|_| true)
}

fn enumerate_filtered(
    spec: &LatticeSpec,
    bound: &Rational,
    keep: &(dyn Fn(&CoeffVec) -> bool + Sync),
) -> Vec<CoeffVec> {
    if bound.signum() < 0 {
        return Vec::new();
    }
    let dec = TraceDecomposition::new(spec);
    // split the outermost coordinate across workers; merge is order-free
    let reach = (bound / &dec.diag[3]).sqrt_ceil().to_i64().expect("range fits i64");
    let found: BTreeSet<CoeffVec> = (-reach..=reach)
        .into_par_iter()
        .flat_map_iter(|top| {
            let mut out = Vec::new();
            let used = &dec.diag[3] * &Rational::from(top * top);
            let rest = bound - &used;
            if rest.signum() >= 0 {
                let mut prefix = [0, 0, 0, top];
                walk(&dec, 2, &mut prefix, &rest, &mut |v| {
                    if keep(v) {
                        out.push(*v);
                    }
                });
            }
            out
        })
        .collect();
    found.into_iter().collect()
}

/// All `v` with `|v|² = target` exactly.
pub fn enumerate_shell(spec: &LatticeSpec, target: &Rational) -> BTreeSet<CoeffVec> {
    assert!(target.signum() > 0, "shell target must be positive");
    enumerate_filtered(spec, target, &|v| spec.has_sq_length(v, target))
        .into_iter()
        .collect()
}

/// All `v` with `|v|² ≤ r²` and conjugate length `≤ r²`; finite, unlike
/// the plain disc, because the lattice is dense in the plane.
pub fn enumerate_disc(spec: &LatticeSpec, radius_sq: &Rational) -> Vec<CoeffVec> {
    enumerate_filtered(spec, radius_sq, &|v| {
        let len = spec.sq_length(v);
        let r = crate::arith::QuadExt::rational_in(spec.radicand(), radius_sq.clone());
        (&r - &len).sign() >= 0 && (&r - &len.conjugate()).sign() >= 0
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum UnitClass {
    TrivialFirstPlane,
    TrivialSecondPlane,
    Diagonal,
    Other,
}

impl UnitClass {
    pub const ALL: [UnitClass; 4] = [
        UnitClass::TrivialFirstPlane,
        UnitClass::TrivialSecondPlane,
        UnitClass::Diagonal,
        UnitClass::Other,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            UnitClass::TrivialFirstPlane => "trivial-first-plane",
            UnitClass::TrivialSecondPlane => "trivial-second-plane",
            UnitClass::Diagonal => "diagonal",
            UnitClass::Other => "other",
        }
    }
}

impl fmt::Display for UnitClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

pub fn classify(v: &CoeffVec) -> UnitClass {
    match v.0 {
        [_, _, 0, 0] => UnitClass::TrivialFirstPlane,
        [0, 0, _, _] => UnitClass::TrivialSecondPlane,
        [a, b, c, d] if c == -a && d == -b => UnitClass::Diagonal,
        _ => UnitClass::Other,
    }
}

#[derive(Clone, Debug)]
pub struct UnitVectorReport {
    pub spec: LatticeSpec,
    pub units: BTreeSet<CoeffVec>,
    pub classes: BTreeMap<CoeffVec, UnitClass>,
    pub predicted: u64,
    pub enumerated: u64,
}

impl UnitVectorReport {
    pub fn family(&self) -> FamilyTag {
        self.spec.family()
    }

    pub fn count(&self, class: UnitClass) -> usize {
        self.classes.values().filter(|&&c| c == class).count()
    }

    pub fn trivial(&self) -> usize {
        self.count(UnitClass::TrivialFirstPlane) + self.count(UnitClass::TrivialSecondPlane)
    }

    /// Predicted count reached and every unit is trivial or diagonal.
    pub fn is_consistent(&self) -> bool {
        self.predicted == self.enumerated && self.count(UnitClass::Other) == 0
    }
}

/// Enumerates and classifies the unit vectors of `spec`.
pub fn unit_vectors(spec: &LatticeSpec) -> UnitVectorReport {
    // the scaled Gram matrix already carries 1/scale², so target 1 is the
    // integer shell of squared length 4 for MHALF
    let units = enumerate_shell(spec, &Rational::one());
    let classes = units.iter().map(|v| (*v, classify(v))).collect();
    UnitVectorReport {
        spec: spec.clone(),
        enumerated: units.len() as u64,
        predicted: spec.predicted_units(),
        units,
        classes,
    }
}

/// `(a, b, −a, −b) ↦ (a*, b*, −a*, −b*)` with `a* = (a+b)/2`, `b* = (a−b)/2`.
pub fn halving_map(v: &CoeffVec) -> Option<CoeffVec> {
    let [a, b, c, d] = v.0;
    if c != -a || d != -b {
        return None;
    }
    let (sum, diff) = (a + b, a - b);
    if sum % 2 != 0 || diff % 2 != 0 {
        return None;
    }
    let (x, y) = (sum / 2, diff / 2);
    Some(CoeffVec::new(x, y, -x, -y))
}

/// Checks that [`halving_map`] is a bijection from the representations of
/// `2n` by `a² + b²` onto those of `n`.
pub fn verify_same_count(n: u64) -> bool {
    let source = square_reps(2 * n);
    let target = square_reps(n);
    let mut image = BTreeSet::new();
    for &(a, b) in &source.solutions {
        let Some(h) = halving_map(&CoeffVec::new(a, b, -a, -b)) else {
            return false;
        };
        let (x, y) = (h.0[0], h.0[1]);
        if x * x + y * y != n as i64 || !image.insert((x, y)) {
            return false;
        }
    }
    image == target.solutions
}

/// Plain box scan of `[-B, B]⁴` using only the squared-length test; the
/// oracle for [`enumerate_shell`].
pub fn box_scan(spec: &LatticeSpec, target: &Rational, bounds: [i64; 4]) -> BTreeSet<CoeffVec> {
    let [ba, bb, bc, bd] = bounds;
    (-ba..=ba)
        .into_par_iter()
        .flat_map_iter(|a| {
            let mut out = Vec::new();
            for b in -bb..=bb {
                for c in -bc..=bc {
                    for d in -bd..=bd {
                        let v = CoeffVec::new(a, b, c, d);
                        if spec.has_sq_length(&v, target) {
                            out.push(v);
                        }
                    }
                }
            }
            out
        })
        .collect()
}

pub fn target_from(n: i64) -> Rational {
    Rational::from_int(BigInt::from(n))
}

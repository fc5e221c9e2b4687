//! Integer-matrix symmetries acting on coefficient vectors.
//!
//! Generators are derived, not tabulated: each is the coefficient matrix
//! of a length-preserving map of the plane (multiplication by a root of
//! unity, a twisted conjugation) obtained by re-expressing the images of
//! the four basis vectors in the basis. A derived matrix is only returned
//! after it passes the exact Gram-invariance check.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::ops::Mul;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::arith::Rational;
use crate::lattice::{CoeffVec, FamilyTag, LatticeSpec, SymComplex};

/// 4×4 integer matrix acting on column coefficient vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntMatrix4(pub [[i64; 4]; 4]);

impl IntMatrix4 {
    pub const IDENTITY: IntMatrix4 =
        IntMatrix4([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]);

    /// The coefficient permutation `(a d)(b c)`.
    pub const REFLECTION: IntMatrix4 =
        IntMatrix4([[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]]);

    pub fn diag(d: [i64; 4]) -> Self {
        let mut m = [[0; 4]; 4];
        for i in 0..4 {
            m[i][i] = d[i];
        }
        IntMatrix4(m)
    }

    /// Same 2×2 block on both coefficient planes.
    pub fn block(b: [[i64; 2]; 2]) -> Self {
        let mut m = [[0; 4]; 4];
        for (off, _) in [(0, ()), (2, ())] {
            for i in 0..2 {
                for j in 0..2 {
                    m[off + i][off + j] = b[i][j];
                }
            }
        }
        IntMatrix4(m)
    }

    pub fn apply(&self, v: &CoeffVec) -> CoeffVec {
        CoeffVec(std::array::from_fn(|i| (0..4).map(|j| self.0[i][j] * v.0[j]).sum()))
    }

    pub fn transpose(&self) -> Self {
        IntMatrix4(std::array::from_fn(|i| std::array::from_fn(|j| self.0[j][i])))
    }

    pub fn det(&self) -> i64 {
        let m = &self.0;
        let minor = |r: [usize; 3], c: [usize; 3]| {
            m[r[0]][c[0]] * (m[r[1]][c[1]] * m[r[2]][c[2]] - m[r[1]][c[2]] * m[r[2]][c[1]])
                - m[r[0]][c[1]] * (m[r[1]][c[0]] * m[r[2]][c[2]] - m[r[1]][c[2]] * m[r[2]][c[0]])
                + m[r[0]][c[2]] * (m[r[1]][c[0]] * m[r[2]][c[1]] - m[r[1]][c[1]] * m[r[2]][c[0]])
        };
        (0..4)
            .map(|j| {
                let cols: Vec<usize> = (0..4).filter(|&c| c != j).collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * minor([1, 2, 3], [cols[0], cols[1], cols[2]])
            })
            .sum()
    }

    /// Smallest `n ≥ 1` with `selfⁿ = I`, if at most `cap`.
    pub fn order(&self, cap: usize) -> Option<usize> {
        let mut acc = *self;
        for n in 1..=cap {
            if acc == Self::IDENTITY {
                return Some(n);
            }
            acc = acc * *self;
        }
        None
    }
}

impl Mul for IntMatrix4 {
    type Output = IntMatrix4;
    fn mul(self, rhs: IntMatrix4) -> IntMatrix4 {
        IntMatrix4(std::array::from_fn(|i| {
            std::array::from_fn(|j| (0..4).map(|k| self.0[i][k] * rhs.0[k][j]).sum())
        }))
    }
}

impl fmt::Display for IntMatrix4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .0
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub matrix: IntMatrix4,
}

/// Solves `Σ xⱼ·basisⱼ = z` over `Q`; the basis is independent over `Q`,
/// so the solution is unique when it exists.
fn express(basis: &[SymComplex; 4], z: &SymComplex) -> Option<[Rational; 4]> {
    let cols: Vec<Vec<Rational>> = basis.iter().map(|e| e.coords().cloned().collect()).collect();
    let rhs: Vec<Rational> = z.coords().cloned().collect();
    let rows = rhs.len();
    let mut m: Vec<Vec<Rational>> =
        (0..rows).map(|r| (0..4).map(|c| cols[c][r].clone()).chain([rhs[r].clone()]).collect()).collect();
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for col in 0..4 {
        let Some(p) = (pivot_row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(pivot_row, p);
        let inv = m[pivot_row][col].recip().ok()?;
        for x in m[pivot_row].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..rows {
            if r != pivot_row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..=4 {
                    let delta = &f * &m[pivot_row][c];
                    m[r][c] = &m[r][c] - &delta;
                }
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    if pivots.len() != 4 || m[pivot_row..].iter().any(|row| !row[4].is_zero()) {
        return None;
    }
    Some(std::array::from_fn(|i| m[i][4].clone()))
}

/// Coefficient matrix of a map sending basis vector `j` to `images[j]`,
/// when all images lie in the lattice.
fn matrix_from_images(spec: &LatticeSpec, images: &[SymComplex; 4]) -> Option<IntMatrix4> {
    let mut m = [[0i64; 4]; 4];
    for (j, img) in images.iter().enumerate() {
        let coords = express(spec.basis(), img)?;
        for i in 0..4 {
            if !coords[i].is_integer() {
                return None;
            }
            m[i][j] = coords[i].numer().to_i64()?;
        }
    }
    Some(IntMatrix4(m))
}

/// Matrix of `z ↦ u·z` (in units of the lattice scale), if it maps the
/// lattice into itself.
pub(crate) fn multiplication_matrix(spec: &LatticeSpec, unit: &SymComplex) -> Option<IntMatrix4> {
    let images = spec.basis().clone().map(|e| e.mul(unit));
    matrix_from_images(spec, &images)
}

/// Matrix of complex conjugation, if the lattice is self-conjugate.
pub fn conjugation_matrix(spec: &LatticeSpec) -> Option<IntMatrix4> {
    let images = spec.basis().clone().map(|e| e.conj());
    matrix_from_images(spec, &images)
}

/// Matrix of `z ↦ conj(z)·w·ω`, the reflection that swaps the two
/// coefficient planes.
fn twisted_conjugation_matrix(spec: &LatticeSpec) -> Option<IntMatrix4> {
    let b = spec.basis();
    // e₃ = scale·w·ω
    let w_omega = b[3].scale(&spec.scale().recip().ok()?);
    let images = b.clone().map(|e| e.conj().mul(&w_omega));
    matrix_from_images(spec, &images)
}

/// Length-preserving generators for `spec`, each verified against the
/// exact Gram matrix.
pub fn named_generators(spec: &LatticeSpec) -> Vec<Generator> {
    let units = crate::lattice::rotation_units(spec);
    let mut gens = Vec::new();
    for (name, unit) in units {
        if let Some(m) = multiplication_matrix(spec, &unit) {
            gens.push(Generator { name, matrix: m });
        }
    }
    if let Some(m) = twisted_conjugation_matrix(spec) {
        gens.push(Generator { name: "reflection (a d)(b c)".into(), matrix: m });
    }
    gens.retain(|g| preserves_gram(spec, &g.matrix));
    gens
}

pub fn generators(spec: &LatticeSpec) -> Vec<IntMatrix4> {
    named_generators(spec).into_iter().map(|g| g.matrix).collect()
}

/// `mᵀ·G·m = G` with exact equality in `Q(√D)`.
pub fn preserves_gram(spec: &LatticeSpec, m: &IntMatrix4) -> bool {
    let g = spec.gram();
    for i in 0..4 {
        for j in i..4 {
            let mut acc = crate::arith::QuadExt::zero(spec.radicand());
            for k in 0..4 {
                for l in 0..4 {
                    let c = m.0[k][i] * m.0[l][j];
                    if c != 0 {
                        acc = &acc + &g[k][l].scale(&Rational::from(c));
                    }
                }
            }
            if acc != g[i][j] {
                return false;
            }
        }
    }
    true
}

/// All products of `gens` (identity included), or `None` past `cap`.
pub fn closure(gens: &[IntMatrix4], cap: usize) -> Option<BTreeSet<IntMatrix4>> {
    let mut seen = BTreeSet::from([IntMatrix4::IDENTITY]);
    let mut queue = VecDeque::from([IntMatrix4::IDENTITY]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x * *g;
            if seen.insert(y) {
                if seen.len() > cap {
                    return None;
                }
                queue.push_back(y);
            }
        }
    }
    Some(seen)
}

pub fn group_order(gens: &[IntMatrix4], cap: usize) -> Option<usize> {
    closure(gens, cap).map(|s| s.len())
}

/// Every element maps `set` onto itself.
pub fn permutes(elements: &BTreeSet<IntMatrix4>, set: &BTreeSet<CoeffVec>) -> bool {
    elements.iter().all(|m| {
        let image: BTreeSet<CoeffVec> = set.iter().map(|v| m.apply(v)).collect();
        &image == set
    })
}

/// Whether the family is the exceptional lattice with 12-fold symmetry.
pub fn is_exceptional(family: FamilyTag) -> bool {
    family == FamilyTag::M(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::make_lattice;
    use crate::shell::unit_vectors;

    fn spec(f: FamilyTag) -> LatticeSpec {
        make_lattice(f).unwrap()
    }

    #[test]
    fn hex_rotation_block() {
        let gens = named_generators(&spec(FamilyTag::L(3)));
        assert_eq!(gens[0].matrix, IntMatrix4::block([[0, -1], [1, 1]]));
        assert_eq!(gens.last().unwrap().matrix, IntMatrix4::REFLECTION);
    }

    #[test]
    fn square_rotation_block() {
        let gens = named_generators(&spec(FamilyTag::M(2)));
        assert_eq!(gens[0].matrix, IntMatrix4::block([[0, -1], [1, 0]]));
        assert_eq!(gens.last().unwrap().matrix, IntMatrix4::REFLECTION);
    }

    #[test]
    fn gram_invariance_examples() {
        let l3 = spec(FamilyTag::L(3));
        assert!(preserves_gram(&l3, &IntMatrix4::block([[0, -1], [1, 1]])));
        assert!(preserves_gram(&l3, &IntMatrix4::IDENTITY));
        assert!(!preserves_gram(&l3, &IntMatrix4::diag([2, 1, 1, 1])));
    }

    #[test]
    fn group_orders() {
        assert_eq!(group_order(&generators(&spec(FamilyTag::L(3))), 1000), Some(12));
        assert_eq!(group_order(&generators(&spec(FamilyTag::M(2))), 1000), Some(8));
        assert_eq!(group_order(&generators(&spec(FamilyTag::M(1))), 1000), Some(24));
        assert_eq!(group_order(&generators(&spec(FamilyTag::MHalf(9))), 1000), Some(8));
        assert_eq!(group_order(&[IntMatrix4::diag([2, 1, 1, 1])], 50), None);
    }

    #[test]
    fn generator_orders_and_determinants() {
        let l = named_generators(&spec(FamilyTag::L(3)));
        assert_eq!(l[0].matrix.order(100), Some(6));
        assert_eq!(l[1].matrix.order(100), Some(2));
        let m = named_generators(&spec(FamilyTag::M(1)));
        let orders: Vec<_> = m.iter().map(|g| g.matrix.order(100)).collect();
        assert!(orders.contains(&Some(12)) && orders.contains(&Some(4)) && orders.contains(&Some(2)));
        for g in l.iter().chain(&m) {
            assert_eq!(g.matrix.det().abs(), 1);
        }
    }

    #[test]
    fn twelfth_root_rotation_float_check() {
        let s = spec(FamilyTag::M(1));
        let gens = named_generators(&s);
        let rot = gens.iter().find(|g| g.matrix.order(100) == Some(12)).unwrap().matrix;
        let (c, si) = ((std::f64::consts::PI / 6.0).cos(), (std::f64::consts::PI / 6.0).sin());
        for v in [CoeffVec::new(1, 0, 0, 0), CoeffVec::new(2, -1, 3, 5), CoeffVec::new(0, 0, 0, 1)] {
            let (x, y) = s.point(&v);
            let (rx, ry) = s.point(&rot.apply(&v));
            assert!((rx - (c * x - si * y)).abs() < 1e-9 && (ry - (si * x + c * y)).abs() < 1e-9);
        }
    }

    #[test]
    fn conjugation_only_for_m1() {
        let m1 = spec(FamilyTag::M(1));
        let conj = conjugation_matrix(&m1).unwrap();
        assert!(preserves_gram(&m1, &conj));
        let group = closure(&generators(&m1), 100).unwrap();
        assert!(group.contains(&conj));
        let v = CoeffVec::new(1, 2, 3, 4);
        let (x, y) = m1.point(&v);
        let (cx, cy) = m1.point(&conj.apply(&v));
        assert!((cx - x).abs() < 1e-9 && (cy + y).abs() < 1e-9);
        assert!(conjugation_matrix(&spec(FamilyTag::L(3))).is_none());
        assert!(conjugation_matrix(&spec(FamilyTag::M(2))).is_none());
    }

    #[test]
    fn unit_sets_are_permuted() {
        for f in [FamilyTag::L(3), FamilyTag::L(13), FamilyTag::M(1), FamilyTag::M(5), FamilyTag::MHalf(9)] {
            let s = spec(f);
            let group = closure(&generators(&s), 1000).unwrap();
            assert!(group.iter().all(|m| m.det().abs() == 1));
            assert!(permutes(&group, &unit_vectors(&s).units), "{f}");
        }
    }
}

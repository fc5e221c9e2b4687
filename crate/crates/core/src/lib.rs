//! Exact unit-vector enumeration for the rank-4 planar lattice families
//! `L(k)`, `M(k)` and `M(k)/2`.
//!
//! The pieces, bottom-up:
//!
//! - [`arith`]: arbitrary-precision rationals and `Q(√D)` arithmetic
//! - [`repcount`]: factorization, representation counts of `a² + ab + b²`
//!   and `a² + b²`, the divisor formulas and the lowest-k sieve
//! - [`lattice`]: family definitions, degeneracy, Gram matrices and the
//!   closed-form squared length
//! - [`shell`]: exact shell enumeration and unit-vector classification
//! - [`symmetry`]: generator matrices, Gram invariance and group closure
//! - [`oeis`]: b-file parsing, caching and cross-checks
//! - [`tables`], [`report`], [`cli`]: the command-line surface

pub mod arith;
pub mod cli;
pub mod lattice;
pub mod oeis;
pub mod plot;
pub mod repcount;
pub mod report;
pub mod shell;
pub mod symmetry;
pub mod tables;

pub use arith::{is_perfect_square, quad_add, quad_mul, quad_sign, ArithError, QuadExt, Rational};
pub use lattice::{is_degenerate, make_lattice, one_minus_omega_norm, sq_length, CoeffVec, FamilyTag, LatticeError, LatticeSpec};
pub use repcount::{
    factorize, hex_reps, lowest_k, square_reps, u_divisor_form, u_of_k, v_divisor_form, v_of_k, FactorMap, Form,
    RepSolutionSet,
};
pub use shell::{enumerate_shell, halving_map, unit_vectors, verify_same_count, UnitClass, UnitVectorReport};
pub use symmetry::{generators, group_order, preserves_gram, IntMatrix4};

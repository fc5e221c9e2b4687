//! C ABI for `lattice-units`.
//!
//! Lattices and unit-vector sets are opaque handles created by `lu_*_new`
//! style functions and released with the matching `*_free`. Every
//! fallible function returns an [`LuStatus`]; on failure a message is
//! available from [`lu_last_error`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use lattice_units::lattice::{make_lattice, CoeffVec, FamilyTag, LatticeError, LatticeSpec};
use lattice_units::repcount;
use lattice_units::shell::{unit_vectors, UnitClass};
use lattice_units::symmetry;
use lattice_units::tables;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LuStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Degenerate = 3,
    NotFound = 4,
    OutOfRange = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LuFamily {
    L = 0,
    M = 1,
    /// Parameter is the odd integer `2k`.
    Mhalf = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LuUnitClass {
    TrivialFirstPlane = 0,
    TrivialSecondPlane = 1,
    Diagonal = 2,
    Other = 3,
}

/// Opaque lattice handle.
pub struct LuLattice {
    spec: LatticeSpec,
}

/// Opaque, immutable list of classified unit vectors.
pub struct LuUnitSet {
    units: Vec<([i64; 4], LuUnitClass)>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn fail(status: LuStatus, msg: impl Into<String>) -> LuStatus {
    set_error(msg);
    status
}

/// Runs `f`, converting a panic into [`LuStatus::Panic`].
fn guard(f: impl FnOnce() -> LuStatus) -> LuStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(LuStatus::Panic, "internal panic"),
    }
}

fn family_tag(family: LuFamily, param: u64) -> FamilyTag {
    match family {
        LuFamily::L => FamilyTag::L(param),
        LuFamily::M => FamilyTag::M(param),
        LuFamily::Mhalf => FamilyTag::MHalf(param),
    }
}

fn class_code(c: UnitClass) -> LuUnitClass {
    match c {
        UnitClass::TrivialFirstPlane => LuUnitClass::TrivialFirstPlane,
        UnitClass::TrivialSecondPlane => LuUnitClass::TrivialSecondPlane,
        UnitClass::Diagonal => LuUnitClass::Diagonal,
        UnitClass::Other => LuUnitClass::Other,
    }
}

/// Message of the last failed call on this thread, or an empty string.
/// The pointer stays valid until the next failing call on this thread.
#[no_mangle]
pub extern "C" fn lu_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Creates a lattice. Degenerate parameters yield `LU_STATUS_DEGENERATE`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn lu_lattice_new(family: LuFamily, param: u64, out: *mut *mut LuLattice) -> LuStatus {
    guard(|| {
        if out.is_null() {
            return fail(LuStatus::NullPointer, "out is null");
        }
        match make_lattice(family_tag(family, param)) {
            Ok(spec) => {
                *out = Box::into_raw(Box::new(LuLattice { spec }));
                LuStatus::Ok
            }
            Err(e @ LatticeError::Degenerate { .. }) => fail(LuStatus::Degenerate, e.to_string()),
            Err(e) => fail(LuStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// # Safety
/// `lattice` must be null or a handle from [`lu_lattice_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lu_lattice_free(lattice: *mut LuLattice) {
    if !lattice.is_null() {
        drop(Box::from_raw(lattice));
    }
}

/// Radicand `D` of the field `Q(√D)` holding all inner products.
///
/// # Safety
/// `lattice` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lu_lattice_radicand(lattice: *const LuLattice, out: *mut u64) -> LuStatus {
    guard(|| match (lattice.as_ref(), out.is_null()) {
        (Some(l), false) => {
            *out = l.spec.radicand();
            LuStatus::Ok
        }
        _ => fail(LuStatus::NullPointer, "lattice or out is null"),
    })
}

/// Unit-vector count predicted by the divisor formula.
///
/// # Safety
/// `lattice` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lu_lattice_predicted_units(lattice: *const LuLattice, out: *mut u64) -> LuStatus {
    guard(|| match (lattice.as_ref(), out.is_null()) {
        (Some(l), false) => {
            *out = l.spec.predicted_units();
            LuStatus::Ok
        }
        _ => fail(LuStatus::NullPointer, "lattice or out is null"),
    })
}

/// Whether the coefficient vector `coeffs[0..4]` has length exactly 1.
///
/// # Safety
/// `lattice` must be a live handle, `coeffs` must point to 4 readable
/// `int64_t` and `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lu_lattice_is_unit(lattice: *const LuLattice, coeffs: *const i64, out: *mut bool) -> LuStatus {
    guard(|| {
        let Some(l) = lattice.as_ref() else {
            return fail(LuStatus::NullPointer, "lattice is null");
        };
        if coeffs.is_null() || out.is_null() {
            return fail(LuStatus::NullPointer, "coeffs or out is null");
        }
        let mut v = [0i64; 4];
        ptr::copy_nonoverlapping(coeffs, v.as_mut_ptr(), 4);
        *out = l.spec.is_unit(&CoeffVec(v));
        LuStatus::Ok
    })
}

/// Order of the symmetry group generated by the verified generators.
///
/// # Safety
/// `lattice` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lu_lattice_group_order(lattice: *const LuLattice, out: *mut u64) -> LuStatus {
    guard(|| {
        let (Some(l), false) = (lattice.as_ref(), out.is_null()) else {
            return fail(LuStatus::NullPointer, "lattice or out is null");
        };
        match symmetry::group_order(&symmetry::generators(&l.spec), 1024) {
            Some(n) => {
                *out = n as u64;
                LuStatus::Ok
            }
            None => fail(LuStatus::OutOfRange, "group closure exceeded 1024 elements"),
        }
    })
}

/// Enumerates and classifies the unit vectors.
///
/// # Safety
/// `lattice` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lu_unit_vectors(lattice: *const LuLattice, out: *mut *mut LuUnitSet) -> LuStatus {
    guard(|| {
        let (Some(l), false) = (lattice.as_ref(), out.is_null()) else {
            return fail(LuStatus::NullPointer, "lattice or out is null");
        };
        let report = unit_vectors(&l.spec);
        let units = report.classes.iter().map(|(v, c)| (v.0, class_code(*c))).collect();
        *out = Box::into_raw(Box::new(LuUnitSet { units }));
        LuStatus::Ok
    })
}

/// Number of vectors in `set`; 0 for null.
///
/// # Safety
/// `set` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lu_unit_set_len(set: *const LuUnitSet) -> usize {
    set.as_ref().map_or(0, |s| s.units.len())
}

/// Copies vector `index` into `coeffs[0..4]` and its class into `class`
/// (which may be null).
///
/// # Safety
/// `set` must be a live handle and `coeffs` must point to 4 writable
/// `int64_t`.
#[no_mangle]
pub unsafe extern "C" fn lu_unit_set_get(
    set: *const LuUnitSet,
    index: usize,
    coeffs: *mut i64,
    class: *mut LuUnitClass,
) -> LuStatus {
    guard(|| {
        let (Some(s), false) = (set.as_ref(), coeffs.is_null()) else {
            return fail(LuStatus::NullPointer, "set or coeffs is null");
        };
        let Some((v, c)) = s.units.get(index) else {
            return fail(LuStatus::OutOfRange, format!("index {index} out of range 0..{}", s.units.len()));
        };
        ptr::copy_nonoverlapping(v.as_ptr(), coeffs, 4);
        if !class.is_null() {
            *class = *c;
        }
        LuStatus::Ok
    })
}

/// # Safety
/// `set` must be null or a handle from [`lu_unit_vectors`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lu_unit_set_free(set: *mut LuUnitSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

/// Number of solutions of `a² + ab + b² = n`, `n ≥ 1`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lu_u_of_k(n: u64, out: *mut u64) -> LuStatus {
    count(n, out, repcount::u_of_k)
}

/// Number of solutions of `a² + b² = n`, `n ≥ 1`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lu_v_of_k(n: u64, out: *mut u64) -> LuStatus {
    count(n, out, repcount::v_of_k)
}

unsafe fn count(n: u64, out: *mut u64, f: fn(u64) -> u64) -> LuStatus {
    guard(|| {
        if out.is_null() {
            return fail(LuStatus::NullPointer, "out is null");
        }
        if n == 0 {
            return fail(LuStatus::InvalidArgument, "n must be positive");
        }
        *out = f(n);
        LuStatus::Ok
    })
}

/// Smallest admissible parameter of `family` whose lattice has exactly
/// `units` unit vectors, searching up to `limit`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lu_lowest_param(family: LuFamily, units: u64, limit: u64, out: *mut u64) -> LuStatus {
    guard(|| {
        if out.is_null() {
            return fail(LuStatus::NullPointer, "out is null");
        }
        if limit == 0 {
            return fail(LuStatus::InvalidArgument, "limit must be positive");
        }
        match tables::lowest_param(family_tag(family, 1), units, limit) {
            Some(p) => {
                *out = p;
                LuStatus::Ok
            }
            None => fail(LuStatus::NotFound, format!("no parameter up to {limit} has {units} unit vectors")),
        }
    })
}

#ifndef LATTICE_UNITS_H
#define LATTICE_UNITS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  LU_FAMILY_L = 0,
  LU_FAMILY_M = 1,
  /**
   * Parameter is the odd integer `2k`.
   */
  LU_FAMILY_MHALF = 2,
} LuFamily;

typedef enum {
  LU_STATUS_OK = 0,
  LU_STATUS_NULL_POINTER = 1,
  LU_STATUS_INVALID_ARGUMENT = 2,
  LU_STATUS_DEGENERATE = 3,
  LU_STATUS_NOT_FOUND = 4,
  LU_STATUS_OUT_OF_RANGE = 5,
  LU_STATUS_PANIC = 6,
} LuStatus;

typedef enum {
  LU_UNIT_CLASS_TRIVIAL_FIRST_PLANE = 0,
  LU_UNIT_CLASS_TRIVIAL_SECOND_PLANE = 1,
  LU_UNIT_CLASS_DIAGONAL = 2,
  LU_UNIT_CLASS_OTHER = 3,
} LuUnitClass;

/**
 * Opaque lattice handle.
 */
typedef struct LuLattice LuLattice;

/**
 * Opaque, immutable list of classified unit vectors.
 */
typedef struct LuUnitSet LuUnitSet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or an empty string.
 * The pointer stays valid until the next failing call on this thread.
 */
const char *lu_last_error(void);

/**
 * Creates a lattice. Degenerate parameters yield `LU_STATUS_DEGENERATE`.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one pointer.
 */
LuStatus lu_lattice_new(LuFamily family, uint64_t param, LuLattice **out);

/**
 * # Safety
 * `lattice` must be null or a handle from [`lu_lattice_new`] not yet freed.
 */
void lu_lattice_free(LuLattice *lattice);

/**
 * Radicand `D` of the field `Q(√D)` holding all inner products.
 *
 * # Safety
 * `lattice` must be a live handle and `out` a valid pointer.
 */
LuStatus lu_lattice_radicand(const LuLattice *lattice, uint64_t *out);

/**
 * Unit-vector count predicted by the divisor formula.
 *
 * # Safety
 * `lattice` must be a live handle and `out` a valid pointer.
 */
LuStatus lu_lattice_predicted_units(const LuLattice *lattice, uint64_t *out);

/**
 * Whether the coefficient vector `coeffs[0..4]` has length exactly 1.
 *
 * # Safety
 * `lattice` must be a live handle, `coeffs` must point to 4 readable
 * `int64_t` and `out` must be a valid pointer.
 */
LuStatus lu_lattice_is_unit(const LuLattice *lattice, const int64_t *coeffs, bool *out);

/**
 * Order of the symmetry group generated by the verified generators.
 *
 * # Safety
 * `lattice` must be a live handle and `out` a valid pointer.
 */
LuStatus lu_lattice_group_order(const LuLattice *lattice, uint64_t *out);

/**
 * Enumerates and classifies the unit vectors.
 *
 * # Safety
 * `lattice` must be a live handle and `out` a valid pointer.
 */
LuStatus lu_unit_vectors(const LuLattice *lattice, LuUnitSet **out);

/**
 * Number of vectors in `set`; 0 for null.
 *
 * # Safety
 * `set` must be null or a live handle.
 */
size_t lu_unit_set_len(const LuUnitSet *set);

/**
 * Copies vector `index` into `coeffs[0..4]` and its class into `class`
 * (which may be null).
 *
 * # Safety
 * `set` must be a live handle and `coeffs` must point to 4 writable
 * `int64_t`.
 */
LuStatus lu_unit_set_get(const LuUnitSet *set, size_t index, int64_t *coeffs, LuUnitClass *class_);

/**
 * # Safety
 * `set` must be null or a handle from [`lu_unit_vectors`] not yet freed.
 */
void lu_unit_set_free(LuUnitSet *set);

/**
 * Number of solutions of `a² + ab + b² = n`, `n ≥ 1`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
LuStatus lu_u_of_k(uint64_t n, uint64_t *out);

/**
 * Number of solutions of `a² + b² = n`, `n ≥ 1`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
LuStatus lu_v_of_k(uint64_t n, uint64_t *out);

/**
 * Smallest admissible parameter of `family` whose lattice has exactly
 * `units` unit vectors, searching up to `limit`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
LuStatus lu_lowest_param(LuFamily family, uint64_t units, uint64_t limit, uint64_t *out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* LATTICE_UNITS_H */

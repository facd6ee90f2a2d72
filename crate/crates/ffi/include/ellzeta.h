#ifndef ELLZETA_H
#define ELLZETA_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum EzStatus {
  EZ_STATUS_OK = 0,
  EZ_STATUS_NULL_POINTER = 1,
  EZ_STATUS_DEGENERATE_LATTICE = 2,
  EZ_STATUS_WRONG_ORIENTATION = 3,
  EZ_STATUS_SHELL_TOO_LARGE = 4,
  EZ_STATUS_TOO_CLOSE_TO_POLE = 5,
  EZ_STATUS_TOLERANCE_NOT_REACHED = 6,
  EZ_STATUS_BAD_MODULUS = 7,
  EZ_STATUS_CONSISTENCY_FAILURE = 8,
  EZ_STATUS_SLOW_CONVERGENCE = 9,
  EZ_STATUS_OUTSIDE_STRIP = 10,
  EZ_STATUS_INVALID_ARGUMENT = 11,
  EZ_STATUS_PANIC = 12,
} EzStatus;

/**
 * Opaque lattice handle. Quasi-periods are computed on first use.
 */
typedef struct EzLattice EzLattice;

typedef struct EzComplex {
  double re;
  double im;
} EzComplex;

typedef struct EzQuasiPeriods {
  struct EzComplex eta1;
  struct EzComplex eta2;
  struct EzComplex c;
} EzQuasiPeriods;

typedef struct EzEvalResult {
  struct EzComplex value;
  double abs_error_estimate;
  size_t terms_used;
  double radius;
} EzEvalResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates the lattice `Z*omega1 + Z*omega2`; requires `Im(conj(omega1)*omega2) > 0`.
 * On failure `*out` is set to NULL.
 *
 * # Safety
 * `out` must be NULL or valid for writes.
 */
enum EzStatus ez_lattice_new(struct EzComplex omega1,
                             struct EzComplex omega2,
                             struct EzLattice **out);

/**
 * Creates the lattice `Z + Z*tau`; requires `Im(tau) > 0`.
 *
 * # Safety
 * `out` must be NULL or valid for writes.
 */
enum EzStatus ez_lattice_from_tau(struct EzComplex tau, struct EzLattice **out);

/**
 * Releases a handle. NULL is ignored.
 *
 * # Safety
 * `lattice` must be NULL or a handle not yet freed.
 */
void ez_lattice_free(struct EzLattice *lattice);

/**
 * # Safety
 * `lattice` must be a live handle and `out` valid for writes (NULL is reported).
 */
enum EzStatus ez_lattice_area(const struct EzLattice *lattice, double *out);

/**
 * Quasi-periods `eta1`, `eta2` and the constant `c`.
 *
 * # Safety
 * `lattice` must be a live handle and `out` valid for writes (NULL is reported).
 */
enum EzStatus ez_quasi_periods(const struct EzLattice *lattice, struct EzQuasiPeriods *out);

/**
 * Weierstrass zeta.
 *
 * # Safety
 * `lattice` must be a live handle and `out` valid for writes (NULL is reported).
 */
enum EzStatus ez_zeta(const struct EzLattice *lattice,
                      struct EzComplex x,
                      double tol,
                      struct EzEvalResult *out);

/**
 * Hecke's non-holomorphic Z.
 *
 * # Safety
 * `lattice` must be a live handle and `out` valid for writes (NULL is reported).
 */
enum EzStatus ez_hecke_z(const struct EzLattice *lattice,
                         struct EzComplex x,
                         double tol,
                         struct EzEvalResult *out);

/**
 * Weierstrass p.
 *
 * # Safety
 * `lattice` must be a live handle and `out` valid for writes (NULL is reported).
 */
enum EzStatus ez_wp(const struct EzLattice *lattice,
                    struct EzComplex x,
                    double tol,
                    struct EzEvalResult *out);

/**
 * Derivative of Weierstrass p.
 *
 * # Safety
 * `lattice` must be a live handle and `out` valid for writes (NULL is reported).
 */
enum EzStatus ez_wp_prime(const struct EzLattice *lattice,
                          struct EzComplex x,
                          double tol,
                          struct EzEvalResult *out);

/**
 * Kronecker function `F(x, y)` on `Z + Z*tau`.
 *
 * # Safety
 * `out` must be NULL or valid for writes.
 */
enum EzStatus ez_kronecker_f(struct EzComplex tau,
                             struct EzComplex x,
                             struct EzComplex y,
                             double tol,
                             struct EzEvalResult *out);

/**
 * Static description of a status code; never NULL, never freed by the caller.
 */
const char *ez_status_message(enum EzStatus status);

/**
 * Message for the most recent failure on this thread, or NULL if none.
 * Valid until the next failing call on the same thread.
 */
const char *ez_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ELLZETA_H */

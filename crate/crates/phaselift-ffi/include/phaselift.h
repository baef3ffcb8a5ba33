#ifndef PHASELIFT_H
#define PHASELIFT_H

/* Generated by cbindgen from the phaselift-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Measurement distributions exposed through the C ABI.
typedef enum PlEnsembleKind {
  PL_ENSEMBLE_KIND_GAUSSIAN_REAL = 0,
  PL_ENSEMBLE_KIND_GAUSSIAN_COMPLEX = 1,
  PL_ENSEMBLE_KIND_RADEMACHER = 2,
  PL_ENSEMBLE_KIND_STEINHAUS = 3,
  PL_ENSEMBLE_KIND_COMPLEX_BERNOULLI = 4,
  // Uses the `phase_re`/`phase_im` arguments of the call.
  PL_ENSEMBLE_KIND_ROTATED_REAL = 5,
} PlEnsembleKind;

// Status codes returned by every fallible call.
typedef enum PlStatus {
  PL_STATUS_OK = 0,
  PL_STATUS_NULL_POINTER = 1,
  PL_STATUS_INVALID_ARGUMENT = 2,
  PL_STATUS_DIMENSION_MISMATCH = 3,
  PL_STATUS_NOT_HERMITIAN = 4,
  PL_STATUS_NUMERICAL_FAILURE = 5,
  PL_STATUS_IO_FAILURE = 6,
  PL_STATUS_BUFFER_TOO_SMALL = 7,
  PL_STATUS_INVALID_UTF8 = 8,
  PL_STATUS_PANIC = 9,
} PlStatus;

// Opaque Hermitian matrix handle.
typedef struct PlMatrix PlMatrix;

// Opaque measurement-set handle.
typedef struct PlMeasurementSet PlMeasurementSet;

// Opaque solve-result handle.
typedef struct PlSolveResult PlSolveResult;

// Solver options (mirror of the library defaults via
// `pl_solver_options_default`).
typedef struct PlSolverOptions {
  size_t max_iters;
  double tol;
  double step_ratio;
  bool real_restriction;
  size_t opnorm_iters;
} PlSolverOptions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message describing the most recent failure on this thread.
//
// The pointer stays valid until the next failing call on the same
// thread; never free it.
const char *pl_last_error_message(void);

// Creates an `n x n` Hermitian matrix from `2 n^2` interleaved doubles
// (row-major `re, im` pairs). The input must be Hermitian to 1e-12.
//
// # Safety
// `entries` must point to `2 n^2` readable doubles; `out` must be a
// valid location for one pointer.
enum PlStatus pl_matrix_create(size_t n, const double *entries, struct PlMatrix **out);

// Frees a matrix handle; accepts null.
//
// # Safety
// `m` must be a pointer returned by this library, freed at most once.
void pl_matrix_free(struct PlMatrix *m);

// Dimension of a matrix handle (0 for null).
//
// # Safety
// `m` must be a live handle from this library or null.
size_t pl_matrix_dim(const struct PlMatrix *m);

// Copies the entries into `out` as `2 n^2` interleaved doubles.
//
// # Safety
// `out` must hold at least `len` doubles; `m` must be a live handle.
enum PlStatus pl_matrix_entries(const struct PlMatrix *m, double *out, size_t len);

// Writes the eigenvalues in decreasing order into `out` (`n` doubles).
//
// # Safety
// `out` must hold at least `len` doubles; `m` must be a live handle.
enum PlStatus pl_matrix_eigenvalues(const struct PlMatrix *m, double *out, size_t len);

// Projects onto the PSD cone; the caller owns the new handle.
//
// # Safety
// `m` must be a live handle; `out` must be a valid location.
enum PlStatus pl_matrix_project_psd(const struct PlMatrix *m, struct PlMatrix **out);

// Schatten-1, Hilbert-Schmidt, operator, and diagonal-HS norms.
//
// # Safety
// All pointers must be valid; `m` must be a live handle.
enum PlStatus pl_matrix_norms(const struct PlMatrix *m,
                              double *schatten1,
                              double *hs,
                              double *operator_norm,
                              double *diag_hs);

// Samples an `m x n` measurement matrix from the ensemble and builds the
// intensities `y_i = |<xi_i, x0>|^2 + w_i`.
//
// `x0` is `2 n` interleaved doubles; `noise` is `m` doubles or null for
// the noiseless model. `phase_re`/`phase_im` are read only for the
// rotated-real kind.
//
// # Safety
// Pointers must reference buffers of the stated sizes; `out` must be a
// valid location for one pointer.
enum PlStatus pl_measurement_set_generate(enum PlEnsembleKind kind,
                                          double phase_re,
                                          double phase_im,
                                          uint64_t seed,
                                          size_t m,
                                          size_t n,
                                          const double *x0,
                                          const double *noise,
                                          struct PlMeasurementSet **out);

// Parses a measurement set from its JSON form.
//
// # Safety
// `json` must be a NUL-terminated string; `out` a valid location.
enum PlStatus pl_measurement_set_from_json(const char *json, struct PlMeasurementSet **out);

// Serializes a measurement set to JSON; free with `pl_string_free`.
//
// # Safety
// `ms` must be a live handle; `out` a valid location for one pointer.
enum PlStatus pl_measurement_set_to_json(const struct PlMeasurementSet *ms, char **out);

// Frees a string returned by this library; accepts null.
//
// # Safety
// `s` must come from this library, freed at most once.
void pl_string_free(char *s);

// Frees a measurement-set handle; accepts null.
//
// # Safety
// `ms` must come from this library, freed at most once.
void pl_measurement_set_free(struct PlMeasurementSet *ms);

// Number of measurements (0 for null).
//
// # Safety
// `ms` must be a live handle or null.
size_t pl_measurement_set_len(const struct PlMeasurementSet *ms);

// Signal dimension (0 for null).
//
// # Safety
// `ms` must be a live handle or null.
size_t pl_measurement_set_dim(const struct PlMeasurementSet *ms);

// Copies the observed intensities into `out` (`m` doubles).
//
// # Safety
// `ms` must be a live handle; `out` must hold `len` doubles.
enum PlStatus pl_measurement_set_intensities(const struct PlMeasurementSet *ms,
                                             double *out,
                                             size_t len);

// Applies the lifted operator: `out[i] = xi_i* Z xi_i`.
//
// # Safety
// `ms` and `z` must be live handles; `out` must hold `len` doubles.
enum PlStatus pl_apply_lifted(const struct PlMeasurementSet *ms,
                              const struct PlMatrix *z,
                              double *out,
                              size_t len);

// Adjoint of the lifted operator: `sum_i weights[i] xi_i xi_i*`.
//
// # Safety
// `ms` must be a live handle; `weights` must hold `len` doubles; `out`
// must be a valid location.
enum PlStatus pl_adjoint_lifted(const struct PlMeasurementSet *ms,
                                const double *weights,
                                size_t len,
                                struct PlMatrix **out);

// Fills `out` with the library-default solver options.
//
// # Safety
// `out` must be a valid location for one `PlSolverOptions`.
enum PlStatus pl_solver_options_default(struct PlSolverOptions *out);

// Runs the primal-dual solver on a measurement set.
//
// # Safety
// `ms` must be a live handle; `options` may be null for defaults; `out`
// must be a valid location for one pointer.
enum PlStatus pl_solve(const struct PlMeasurementSet *ms,
                       const struct PlSolverOptions *options,
                       struct PlSolveResult **out);

// Frees a solve-result handle; accepts null.
//
// # Safety
// `r` must come from this library, freed at most once.
void pl_solve_result_free(struct PlSolveResult *r);

// `||A(X_hat) - y||_1` of the returned iterate (NaN for null).
//
// # Safety
// `r` must be a live handle or null.
double pl_solve_result_objective(const struct PlSolveResult *r);

// Iterations performed (0 for null).
//
// # Safety
// `r` must be a live handle or null.
size_t pl_solve_result_iterations(const struct PlSolveResult *r);

// Whether the joint relative-change criterion was met.
//
// # Safety
// `r` must be a live handle or null.
bool pl_solve_result_converged(const struct PlSolveResult *r);

// Clones the recovered matrix out of a solve result.
//
// # Safety
// `r` must be a live handle; `out` a valid location.
enum PlStatus pl_solve_result_matrix(const struct PlSolveResult *r, struct PlMatrix **out);

// Best rank-1 signal estimate from the recovered matrix, written as
// `2 n` interleaved doubles.
//
// # Safety
// `r` must be a live handle; `out` must hold `len` doubles.
enum PlStatus pl_solve_result_extract_signal(const struct PlSolveResult *r,
                                             double *out,
                                             size_t len);

// Matrix and phase-aligned signal errors of `x_hat` against a
// ground-truth signal (`2 n` interleaved doubles).
//
// # Safety
// `x_hat` must be a live handle; `x0` must hold `2 n` doubles; the
// output pointers must be valid.
enum PlStatus pl_recovery_error(const struct PlMatrix *x_hat,
                                const double *x0,
                                size_t n,
                                double *schatten1,
                                double *hs,
                                double *signal,
                                double *conj_signal);

// Exact second moment `E |xi* A xi|^2` of the lifted form under the
// given ensemble.
//
// # Safety
// `a` must be a live handle; `out` a valid location.
enum PlStatus pl_second_moment_exact(const struct PlMatrix *a,
                                     enum PlEnsembleKind kind,
                                     double phase_re,
                                     double phase_im,
                                     double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PHASELIFT_H */

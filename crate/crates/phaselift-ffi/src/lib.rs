//! C ABI for the recovery library.
//!
//! Conventions:
//! - Opaque handles (`PlMatrix`, `PlMeasurementSet`, `PlSolveResult`)
//!   own their data; every `pl_*_create`/`pl_*_generate`/`pl_solve`
//!   success must be paired with the matching `pl_*_free`.
//! - Every fallible call returns a [`PlStatus`]; `PL_STATUS_OK` is 0.
//!   On failure, `pl_last_error_message` returns a thread-local,
//!   NUL-terminated description valid until the next failure.
//! - Complex buffers are interleaved doubles `re0, im0, re1, im1, ...`
//!   in row-major order.
//!
//! The header `include/phaselift.h` is regenerated by the build script.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use phaselift_core::ensembles::{EnsembleKind, EnsembleSpec};
use phaselift_core::error::Error;
use phaselift_core::lifted::MeasurementSet;
use phaselift_core::solver::{
    extract_signal, recovery_error, solve_phaselift, SolveResult, SolverConfig,
};
use phaselift_core::{Complex64, HermitianMatrix};

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DimensionMismatch = 3,
    NotHermitian = 4,
    NumericalFailure = 5,
    IoFailure = 6,
    BufferTooSmall = 7,
    InvalidUtf8 = 8,
    Panic = 9,
}

/// Measurement distributions exposed through the C ABI.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlEnsembleKind {
    GaussianReal = 0,
    GaussianComplex = 1,
    Rademacher = 2,
    Steinhaus = 3,
    ComplexBernoulli = 4,
    /// Uses the `phase_re`/`phase_im` arguments of the call.
    RotatedReal = 5,
}

/// Solver options (mirror of the library defaults via
/// `pl_solver_options_default`).
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct PlSolverOptions {
    pub max_iters: usize,
    pub tol: f64,
    pub step_ratio: f64,
    pub real_restriction: bool,
    pub opnorm_iters: usize,
}

/// Opaque Hermitian matrix handle.
pub struct PlMatrix(HermitianMatrix);

/// Opaque measurement-set handle.
pub struct PlMeasurementSet(MeasurementSet);

/// Opaque solve-result handle.
pub struct PlSolveResult(SolveResult);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let sanitized = msg.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn status_of(err: &Error) -> PlStatus {
    match err {
        Error::InvalidInput(_) | Error::Precondition(_) => PlStatus::InvalidArgument,
        Error::DimensionMismatch(_) => PlStatus::DimensionMismatch,
        Error::NotHermitian { .. } => PlStatus::NotHermitian,
        Error::NonFinite(_) | Error::EigNonConvergence { .. } | Error::Numerical(_) => {
            PlStatus::NumericalFailure
        }
        Error::Io(_) => PlStatus::IoFailure,
        Error::Serialization(_) => PlStatus::InvalidArgument,
    }
}

fn fail(err: Error) -> PlStatus {
    let status = status_of(&err);
    set_error(&err.to_string());
    status
}

fn guard(f: impl FnOnce() -> PlStatus) -> PlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic crossed the C boundary");
            PlStatus::Panic
        }
    }
}

/// Message describing the most recent failure on this thread.
///
/// The pointer stays valid until the next failing call on the same
/// thread; never free it.
#[no_mangle]
pub extern "C" fn pl_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

unsafe fn slice_from<'a, T>(ptr: *const T, len: usize) -> Option<&'a [T]> {
    if ptr.is_null() {
        None
    } else {
        Some(std::slice::from_raw_parts(ptr, len))
    }
}

fn interleaved_to_complex(data: &[f64]) -> Vec<Complex64> {
    data.chunks_exact(2)
        .map(|p| Complex64::new(p[0], p[1]))
        .collect()
}

fn kind_from_c(kind: PlEnsembleKind, phase_re: f64, phase_im: f64) -> EnsembleKind {
    match kind {
        PlEnsembleKind::GaussianReal => EnsembleKind::GaussianReal,
        PlEnsembleKind::GaussianComplex => EnsembleKind::GaussianComplex,
        PlEnsembleKind::Rademacher => EnsembleKind::Rademacher,
        PlEnsembleKind::Steinhaus => EnsembleKind::Steinhaus,
        PlEnsembleKind::ComplexBernoulli => EnsembleKind::ComplexBernoulli,
        PlEnsembleKind::RotatedReal => EnsembleKind::RotatedReal {
            phase: Complex64::new(phase_re, phase_im),
        },
    }
}

// ---------------------------------------------------------------------------
// Hermitian matrices
// ---------------------------------------------------------------------------

/// Creates an `n x n` Hermitian matrix from `2 n^2` interleaved doubles
/// (row-major `re, im` pairs). The input must be Hermitian to 1e-12.
///
/// # Safety
/// `entries` must point to `2 n^2` readable doubles; `out` must be a
/// valid location for one pointer.
#[no_mangle]
pub unsafe extern "C" fn pl_matrix_create(
    n: usize,
    entries: *const f64,
    out: *mut *mut PlMatrix,
) -> PlStatus {
    guard(|| {
        if out.is_null() {
            set_error("out pointer is null");
            return PlStatus::NullPointer;
        }
        let Some(data) = slice_from(entries, 2 * n * n) else {
            set_error("entries pointer is null");
            return PlStatus::NullPointer;
        };
        match HermitianMatrix::from_entries(n, interleaved_to_complex(data)) {
            Ok(m) => {
                *out = Box::into_raw(Box::new(PlMatrix(m)));
                PlStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Frees a matrix handle; accepts null.
///
/// # Safety
/// `m` must be a pointer returned by this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn pl_matrix_free(m: *mut PlMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Dimension of a matrix handle (0 for null).
///
/// # Safety
/// `m` must be a live handle from this library or null.
#[no_mangle]
pub unsafe extern "C" fn pl_matrix_dim(m: *const PlMatrix) -> usize {
    if m.is_null() {
        0
    } else {
        (*m).0.dim()
    }
}

/// Copies the entries into `out` as `2 n^2` interleaved doubles.
///
/// # Safety
/// `out` must hold at least `len` doubles; `m` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn pl_matrix_entries(
    m: *const PlMatrix,
    out: *mut f64,
    len: usize,
) -> PlStatus {
    guard(|| {
        if m.is_null() || out.is_null() {
            set_error("null pointer");
            return PlStatus::NullPointer;
        }
        let matrix = &(*m).0;
        let needed = 2 * matrix.dim() * matrix.dim();
        if len < needed {
            set_error("entry buffer too small");
            return PlStatus::BufferTooSmall;
        }
        let out = std::slice::from_raw_parts_mut(out, needed);
        for (i, z) in matrix.data().iter().enumerate() {
            out[2 * i] = z.re;
            out[2 * i + 1] = z.im;
        }
        PlStatus::Ok
    })
}

/// Writes the eigenvalues in decreasing order into `out` (`n` doubles).
///
/// # Safety
/// `out` must hold at least `len` doubles; `m` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn pl_matrix_eigenvalues(
    m: *const PlMatrix,
    out: *mut f64,
    len: usize,
) -> PlStatus {
    guard(|| {
        if m.is_null() || out.is_null() {
            set_error("null pointer");
            return PlStatus::NullPointer;
        }
        let matrix = &(*m).0;
        if len < matrix.dim() {
            set_error("eigenvalue buffer too small");
            return PlStatus::BufferTooSmall;
        }
        match matrix.eig() {
            Ok(dec) => {
                let out = std::slice::from_raw_parts_mut(out, matrix.dim());
                out.copy_from_slice(&dec.eigenvalues);
                PlStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Projects onto the PSD cone; the caller owns the new handle.
///
/// # Safety
/// `m` must be a live handle; `out` must be a valid location.
#[no_mangle]
pub unsafe extern "C" fn pl_matrix_project_psd(
    m: *const PlMatrix,
    out: *mut *mut PlMatrix,
) -> PlStatus {
    guard(|| {
        if m.is_null() || out.is_null() {
            set_error("null pointer");
            return PlStatus::NullPointer;
        }
        match (*m).0.project_psd() {
            Ok(p) => {
                *out = Box::into_raw(Box::new(PlMatrix(p)));
                PlStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Schatten-1, Hilbert-Schmidt, operator, and diagonal-HS norms.
///
/// # Safety
/// All pointers must be valid; `m` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn pl_matrix_norms(
    m: *const PlMatrix,
    schatten1: *mut f64,
    hs: *mut f64,
    operator_norm: *mut f64,
    diag_hs: *mut f64,
) -> PlStatus {
    guard(|| {
        if m.is_null()
            || schatten1.is_null()
            || hs.is_null()
            || operator_norm.is_null()
            || diag_hs.is_null()
        {
            set_error("null pointer");
            return PlStatus::NullPointer;
        }
        match (*m).0.norms() {
            Ok(norms) => {
                *schatten1 = norms.schatten1;
                *hs = norms.hs;
                *operator_norm = norms.operator;
                *diag_hs = norms.diag_hs;
                PlStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

// ---------------------------------------------------------------------------
// Measurement sets
// ---------------------------------------------------------------------------

/// Samples an `m x n` measurement matrix from the ensemble and builds the
/// intensities `y_i = |<xi_i, x0>|^2 + w_i`.
///
/// `x0` is `2 n` interleaved doubles; `noise` is `m` doubles or null for
/// the noiseless model. `phase_re`/`phase_im` are read only for the
/// rotated-real kind.
///
/// # Safety
/// Pointers must reference buffers of the stated sizes; `out` must be a
/// valid location for one pointer.
#[no_mangle]
pub unsafe extern "C" fn pl_measurement_set_generate(
    kind: PlEnsembleKind,
    phase_re: f64,
    phase_im: f64,
    seed: u64,
    m: usize,
    n: usize,
    x0: *const f64,
    noise: *const f64,
    out: *mut *mut PlMeasurementSet,
) -> PlStatus {
    guard(|| {
        if out.is_null() {
            set_error("out pointer is null");
            return PlStatus::NullPointer;
        }
        let Some(x0) = slice_from(x0, 2 * n) else {
            set_error("x0 pointer is null");
            return PlStatus::NullPointer;
        };
        let signal = interleaved_to_complex(x0);
        let noise_vec = match slice_from(noise, m) {
            Some(w) => w.to_vec(),
            None => vec![0.0; m],
        };
        let result = EnsembleSpec::new(kind_from_c(kind, phase_re, phase_im), seed)
            .and_then(|spec| spec.sample_matrix(m, n))
            .and_then(|matrix| MeasurementSet::forward_intensities(matrix, &signal, &noise_vec));
        match result {
            Ok(ms) => {
                *out = Box::into_raw(Box::new(PlMeasurementSet(ms)));
                PlStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Parses a measurement set from its JSON form.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` a valid location.
#[no_mangle]
pub unsafe extern "C" fn pl_measurement_set_from_json(
    json: *const c_char,
    out: *mut *mut PlMeasurementSet,
) -> PlStatus {
    guard(|| {
        if json.is_null() || out.is_null() {
            set_error("null pointer");
            return PlStatus::NullPointer;
        }
        let Ok(text) = CStr::from_ptr(json).to_str() else {
            set_error("json is not valid UTF-8");
            return PlStatus::InvalidUtf8;
        };
        match serde_json::from_str::<MeasurementSet>(text) {
            Ok(ms) => {
                *out = Box::into_raw(Box::new(PlMeasurementSet(ms)));
                PlStatus::Ok
            }
            Err(e) => {
                set_error(&e.to_string());
                PlStatus::InvalidArgument
            }
        }
    })
}

/// Serializes a measurement set to JSON; free with `pl_string_free`.
///
/// # Safety
/// `ms` must be a live handle; `out` a valid location for one pointer.
#[no_mangle]
pub unsafe extern "C" fn pl_measurement_set_to_json(
    ms: *const PlMeasurementSet,
    out: *mut *mut c_char,
) -> PlStatus {
    guard(|| {
        if ms.is_null() || out.is_null() {
            set_error("null pointer");
            return PlStatus::NullPointer;
        }
        match serde_json::to_string(&(*ms).0) {
            Ok(json) => match CString::new(json) {
                Ok(cstr) => {
                    *out = cstr.into_raw();
                    PlStatus::Ok
                }
                Err(_) => {
                    set_error("serialized JSON contained a NUL byte");
                    PlStatus::NumericalFailure
                }
            },
            Err(e) => {
                set_error(&e.to_string());
                PlStatus::NumericalFailure
            }
        }
    })
}

/// Frees a string returned by this library; accepts null.
///
/// # Safety
/// `s` must come from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn pl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Frees a measurement-set handle; accepts null.
///
/// # Safety
/// `ms` must come from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn pl_measurement_set_free(ms: *mut PlMeasurementSet) {
    if !ms.is_null() {
        drop(Box::from_raw(ms));
    }
}

/// Number of measurements (0 for null).
///
/// # Safety
/// `ms` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn pl_measurement_set_len(ms: *const PlMeasurementSet) -> usize {
    if ms.is_null() {
        0
    } else {
        (*ms).0.num_measurements()
    }
}

/// Signal dimension (0 for null).
///
/// # Safety
/// `ms` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn pl_measurement_set_dim(ms: *const PlMeasurementSet) -> usize {
    if ms.is_null() {
        0
    } else {
        (*ms).0.dim()
    }
}

/// Copies the observed intensities into `out` (`m` doubles).
///
/// # Safety
/// `ms` must be a live handle; `out` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn pl_measurement_set_intensities(
    ms: *const PlMeasurementSet,
    out: *mut f64,
    len: usize,
) -> PlStatus {
    guard(|| {
        if ms.is_null() || out.is_null() {
            set_error("null pointer");
            return PlStatus::NullPointer;
        }
        let y = (*ms).0.intensities();
        if len < y.len() {
            set_error("intensity buffer too small");
            return PlStatus::BufferTooSmall;
        }
        std::slice::from_raw_parts_mut(out, y.len()).copy_from_slice(y);
        PlStatus::Ok
    })
}

/// Applies the lifted operator: `out[i] = xi_i* Z xi_i`.
///
/// # Safety
/// `ms` and `z` must be live handles; `out` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn pl_apply_lifted(
    ms: *const PlMeasurementSet,
    z: *const PlMatrix,
    out: *mut f64,
    len: usize,
) -> PlStatus {
    guard(|| {
        if ms.is_null() || z.is_null() || out.is_null() {
            set_error("null pointer");
            return PlStatus::NullPointer;
        }
        let set = &(*ms).0;
        if len < set.num_measurements() {
            set_error("output buffer too small");
            return PlStatus::BufferTooSmall;
        }
        match set.apply(&(*z).0) {
            Ok(values) => {
                std::slice::from_raw_parts_mut(out, values.len()).copy_from_slice(&values);
                PlStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Adjoint of the lifted operator: `sum_i weights[i] xi_i xi_i*`.
///
/// # Safety
/// `ms` must be a live handle; `weights` must hold `len` doubles; `out`
/// must be a valid location.
#[no_mangle]
pub unsafe extern "C" fn pl_adjoint_lifted(
    ms: *const PlMeasurementSet,
    weights: *const f64,
    len: usize,
    out: *mut *mut PlMatrix,
) -> PlStatus {
    guard(|| {
        if ms.is_null() || out.is_null() {
            set_error("null pointer");
            return PlStatus::NullPointer;
        }
        let Some(w) = slice_from(weights, len) else {
            set_error("weights pointer is null");
            return PlStatus::NullPointer;
        };
        match (*ms).0.adjoint(w) {
            Ok(m) => {
                *out = Box::into_raw(Box::new(PlMatrix(m)));
                PlStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

// ---------------------------------------------------------------------------
// Solver
// ---------------------------------------------------------------------------

/// Fills `out` with the library-default solver options.
///
/// # Safety
/// `out` must be a valid location for one `PlSolverOptions`.
#[no_mangle]
pub unsafe extern "C" fn pl_solver_options_default(out: *mut PlSolverOptions) -> PlStatus {
    guard(|| {
        if out.is_null() {
            set_error("out pointer is null");
            return PlStatus::NullPointer;
        }
        let d = SolverConfig::default();
        *out = PlSolverOptions {
            max_iters: d.max_iters,
            tol: d.tol,
            step_ratio: d.step_ratio,
            real_restriction: d.real_restriction,
            opnorm_iters: d.opnorm_iters,
        };
        PlStatus::Ok
    })
}

/// Runs the primal-dual solver on a measurement set.
///
/// # Safety
/// `ms` must be a live handle; `options` may be null for defaults; `out`
/// must be a valid location for one pointer.
#[no_mangle]
pub unsafe extern "C" fn pl_solve(
    ms: *const PlMeasurementSet,
    options: *const PlSolverOptions,
    out: *mut *mut PlSolveResult,
) -> PlStatus {
    guard(|| {
        if ms.is_null() || out.is_null() {
            set_error("null pointer");
            return PlStatus::NullPointer;
        }
        let cfg = if options.is_null() {
            SolverConfig::default()
        } else {
            let o = &*options;
            SolverConfig {
                max_iters: o.max_iters,
                tol: o.tol,
                step_ratio: o.step_ratio,
                real_restriction: o.real_restriction,
                opnorm_iters: o.opnorm_iters,
            }
        };
        match solve_phaselift(&(*ms).0, &cfg) {
            Ok(result) => {
                *out = Box::into_raw(Box::new(PlSolveResult(result)));
                PlStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Frees a solve-result handle; accepts null.
///
/// # Safety
/// `r` must come from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn pl_solve_result_free(r: *mut PlSolveResult) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// `||A(X_hat) - y||_1` of the returned iterate (NaN for null).
///
/// # Safety
/// `r` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn pl_solve_result_objective(r: *const PlSolveResult) -> f64 {
    if r.is_null() {
        f64::NAN
    } else {
        (*r).0.objective
    }
}

/// Iterations performed (0 for null).
///
/// # Safety
/// `r` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn pl_solve_result_iterations(r: *const PlSolveResult) -> usize {
    if r.is_null() {
        0
    } else {
        (*r).0.iterations
    }
}

/// Whether the joint relative-change criterion was met.
///
/// # Safety
/// `r` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn pl_solve_result_converged(r: *const PlSolveResult) -> bool {
    if r.is_null() {
        false
    } else {
        (*r).0.converged
    }
}

/// Clones the recovered matrix out of a solve result.
///
/// # Safety
/// `r` must be a live handle; `out` a valid location.
#[no_mangle]
pub unsafe extern "C" fn pl_solve_result_matrix(
    r: *const PlSolveResult,
    out: *mut *mut PlMatrix,
) -> PlStatus {
    guard(|| {
        if r.is_null() || out.is_null() {
            set_error("null pointer");
            return PlStatus::NullPointer;
        }
        *out = Box::into_raw(Box::new(PlMatrix((*r).0.x_hat.clone())));
        PlStatus::Ok
    })
}

/// Best rank-1 signal estimate from the recovered matrix, written as
/// `2 n` interleaved doubles.
///
/// # Safety
/// `r` must be a live handle; `out` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn pl_solve_result_extract_signal(
    r: *const PlSolveResult,
    out: *mut f64,
    len: usize,
) -> PlStatus {
    guard(|| {
        if r.is_null() || out.is_null() {
            set_error("null pointer");
            return PlStatus::NullPointer;
        }
        let x_hat = &(*r).0.x_hat;
        if len < 2 * x_hat.dim() {
            set_error("signal buffer too small");
            return PlStatus::BufferTooSmall;
        }
        match extract_signal(x_hat) {
            Ok(signal) => {
                let out = std::slice::from_raw_parts_mut(out, 2 * signal.len());
                for (i, z) in signal.iter().enumerate() {
                    out[2 * i] = z.re;
                    out[2 * i + 1] = z.im;
                }
                PlStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Matrix and phase-aligned signal errors of `x_hat` against a
/// ground-truth signal (`2 n` interleaved doubles).
///
/// # Safety
/// `x_hat` must be a live handle; `x0` must hold `2 n` doubles; the
/// output pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn pl_recovery_error(
    x_hat: *const PlMatrix,
    x0: *const f64,
    n: usize,
    schatten1: *mut f64,
    hs: *mut f64,
    signal: *mut f64,
    conj_signal: *mut f64,
) -> PlStatus {
    guard(|| {
        if x_hat.is_null()
            || schatten1.is_null()
            || hs.is_null()
            || signal.is_null()
            || conj_signal.is_null()
        {
            set_error("null pointer");
            return PlStatus::NullPointer;
        }
        let Some(x0) = slice_from(x0, 2 * n) else {
            set_error("x0 pointer is null");
            return PlStatus::NullPointer;
        };
        match recovery_error(&(*x_hat).0, &interleaved_to_complex(x0)) {
            Ok(err) => {
                *schatten1 = err.schatten1;
                *hs = err.hs;
                *signal = err.signal;
                *conj_signal = err.conj_signal;
                PlStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Exact second moment `E |xi* A xi|^2` of the lifted form under the
/// given ensemble.
///
/// # Safety
/// `a` must be a live handle; `out` a valid location.
#[no_mangle]
pub unsafe extern "C" fn pl_second_moment_exact(
    a: *const PlMatrix,
    kind: PlEnsembleKind,
    phase_re: f64,
    phase_im: f64,
    out: *mut f64,
) -> PlStatus {
    guard(|| {
        if a.is_null() || out.is_null() {
            set_error("null pointer");
            return PlStatus::NullPointer;
        }
        match EnsembleSpec::new(kind_from_c(kind, phase_re, phase_im), 0) {
            Ok(spec) => {
                *out = phaselift_core::theory::quadratic_form_second_moment(
                    &(*a).0,
                    &spec.analytic_moments(),
                );
                PlStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

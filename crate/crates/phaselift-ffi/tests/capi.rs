//! Exercises the C ABI through the exported extern functions.

use std::ffi::CStr;
use std::ptr;

use phaselift_ffi::*;

fn interleave(pairs: &[(f64, f64)]) -> Vec<f64> {
    pairs.iter().flat_map(|&(re, im)| [re, im]).collect()
}

#[test]
fn matrix_lifecycle_and_eigenvalues() {
    // [[0, i], [-i, 0]]: eigenvalues (1, -1).
    let entries = interleave(&[(0.0, 0.0), (0.0, 1.0), (0.0, -1.0), (0.0, 0.0)]);
    let mut m: *mut PlMatrix = ptr::null_mut();
    unsafe {
        assert_eq!(pl_matrix_create(2, entries.as_ptr(), &mut m), PlStatus::Ok);
        assert_eq!(pl_matrix_dim(m), 2);

        let mut eigs = [0.0f64; 2];
        assert_eq!(pl_matrix_eigenvalues(m, eigs.as_mut_ptr(), 2), PlStatus::Ok);
        assert!((eigs[0] - 1.0).abs() < 1e-12 && (eigs[1] + 1.0).abs() < 1e-12);

        let mut proj: *mut PlMatrix = ptr::null_mut();
        assert_eq!(pl_matrix_project_psd(m, &mut proj), PlStatus::Ok);
        let mut out = [0.0f64; 8];
        assert_eq!(pl_matrix_entries(proj, out.as_mut_ptr(), 8), PlStatus::Ok);
        // (1/2) [[1, i], [-i, 1]].
        assert!((out[0] - 0.5).abs() < 1e-12);
        assert!((out[3] - 0.5).abs() < 1e-12);

        let (mut s1, mut hs, mut op, mut dg) = (0.0, 0.0, 0.0, 0.0);
        assert_eq!(
            pl_matrix_norms(m, &mut s1, &mut hs, &mut op, &mut dg),
            PlStatus::Ok
        );
        assert!((s1 - 2.0).abs() < 1e-12);
        assert!((hs - 2.0f64.sqrt()).abs() < 1e-12);
        assert!((op - 1.0).abs() < 1e-12);
        assert_eq!(dg, 0.0);

        pl_matrix_free(proj);
        pl_matrix_free(m);
    }
}

#[test]
fn rejects_non_hermitian_and_reports_error() {
    let entries = interleave(&[(1.0, 0.0), (2.0, 0.0), (3.0, 0.0), (4.0, 0.0)]);
    let mut m: *mut PlMatrix = ptr::null_mut();
    unsafe {
        let status = pl_matrix_create(2, entries.as_ptr(), &mut m);
        assert_eq!(status, PlStatus::NotHermitian);
        let msg = CStr::from_ptr(pl_last_error_message());
        assert!(msg.to_string_lossy().contains("Hermitian"));
    }
}

#[test]
fn null_arguments_are_rejected() {
    unsafe {
        assert_eq!(
            pl_matrix_create(2, ptr::null(), &mut ptr::null_mut()),
            PlStatus::NullPointer
        );
        let mut out = [0.0f64; 4];
        assert_eq!(
            pl_matrix_eigenvalues(ptr::null(), out.as_mut_ptr(), 4),
            PlStatus::NullPointer
        );
        assert_eq!(pl_matrix_dim(ptr::null()), 0);
        pl_matrix_free(ptr::null_mut());
        pl_measurement_set_free(ptr::null_mut());
        pl_solve_result_free(ptr::null_mut());
        pl_string_free(ptr::null_mut());
    }
}

#[test]
fn end_to_end_recovery_through_the_c_surface() {
    // Flat signal, complex Gaussian measurements, noiseless solve.
    let n = 4usize;
    let m = 48usize;
    let scale = 0.5f64;
    let x0 = interleave(&[(scale, 0.0), (0.0, scale), (-scale, 0.0), (0.0, -scale)]);
    unsafe {
        let mut ms: *mut PlMeasurementSet = ptr::null_mut();
        let status = pl_measurement_set_generate(
            PlEnsembleKind::GaussianComplex,
            0.0,
            0.0,
            1234,
            m,
            n,
            x0.as_ptr(),
            ptr::null(),
            &mut ms,
        );
        assert_eq!(status, PlStatus::Ok);
        assert_eq!(pl_measurement_set_len(ms), m);
        assert_eq!(pl_measurement_set_dim(ms), n);

        let mut y = vec![0.0f64; m];
        assert_eq!(
            pl_measurement_set_intensities(ms, y.as_mut_ptr(), m),
            PlStatus::Ok
        );
        assert!(y.iter().all(|v| *v >= 0.0));

        let mut opts = PlSolverOptions {
            max_iters: 0,
            tol: 0.0,
            step_ratio: 0.0,
            real_restriction: false,
            opnorm_iters: 0,
        };
        assert_eq!(pl_solver_options_default(&mut opts), PlStatus::Ok);
        assert_eq!(opts.max_iters, 20_000);

        let mut result: *mut PlSolveResult = ptr::null_mut();
        assert_eq!(pl_solve(ms, &opts, &mut result), PlStatus::Ok);
        assert!(pl_solve_result_converged(result));
        assert!(pl_solve_result_objective(result) <= 1e-5);
        assert!(pl_solve_result_iterations(result) > 0);

        let mut x_hat: *mut PlMatrix = ptr::null_mut();
        assert_eq!(pl_solve_result_matrix(result, &mut x_hat), PlStatus::Ok);
        let (mut s1, mut hs, mut sig, mut conj) = (0.0, 0.0, 0.0, 0.0);
        assert_eq!(
            pl_recovery_error(x_hat, x0.as_ptr(), n, &mut s1, &mut hs, &mut sig, &mut conj),
            PlStatus::Ok
        );
        assert!(hs <= 1e-3, "hs error {hs}");
        assert!(sig <= 1e-3, "signal error {sig}");

        let mut signal = vec![0.0f64; 2 * n];
        assert_eq!(
            pl_solve_result_extract_signal(result, signal.as_mut_ptr(), 2 * n),
            PlStatus::Ok
        );
        let norm: f64 = signal.iter().map(|v| v * v).sum::<f64>();
        assert!((norm.sqrt() - 1.0).abs() < 1e-3);

        // JSON round trip through the C string interface.
        let mut json: *mut std::ffi::c_char = ptr::null_mut();
        assert_eq!(pl_measurement_set_to_json(ms, &mut json), PlStatus::Ok);
        let mut back: *mut PlMeasurementSet = ptr::null_mut();
        assert_eq!(pl_measurement_set_from_json(json, &mut back), PlStatus::Ok);
        assert_eq!(pl_measurement_set_len(back), m);
        let mut y2 = vec![0.0f64; m];
        assert_eq!(
            pl_measurement_set_intensities(back, y2.as_mut_ptr(), m),
            PlStatus::Ok
        );
        assert_eq!(y, y2);

        pl_string_free(json);
        pl_measurement_set_free(back);
        pl_matrix_free(x_hat);
        pl_solve_result_free(result);
        pl_measurement_set_free(ms);
    }
}

#[test]
fn lifted_operator_round_trip() {
    let n = 3usize;
    let m = 5usize;
    let x0 = interleave(&[(1.0, 0.0), (0.0, 0.0), (0.0, 0.0)]);
    unsafe {
        let mut ms: *mut PlMeasurementSet = ptr::null_mut();
        assert_eq!(
            pl_measurement_set_generate(
                PlEnsembleKind::Steinhaus,
                0.0,
                0.0,
                9,
                m,
                n,
                x0.as_ptr(),
                ptr::null(),
                &mut ms,
            ),
            PlStatus::Ok
        );
        // Identity maps to exactly n for unit-modulus rows.
        let eye = interleave(&[
            (1.0, 0.0),
            (0.0, 0.0),
            (0.0, 0.0),
            (0.0, 0.0),
            (1.0, 0.0),
            (0.0, 0.0),
            (0.0, 0.0),
            (0.0, 0.0),
            (1.0, 0.0),
        ]);
        let mut z: *mut PlMatrix = ptr::null_mut();
        assert_eq!(pl_matrix_create(n, eye.as_ptr(), &mut z), PlStatus::Ok);
        let mut out = vec![0.0f64; m];
        assert_eq!(pl_apply_lifted(ms, z, out.as_mut_ptr(), m), PlStatus::Ok);
        assert!(out.iter().all(|v| *v == n as f64));

        // Adjoint of e1 is the rank-1 lift of the first row.
        let mut weights = vec![0.0f64; m];
        weights[0] = 1.0;
        let mut adj: *mut PlMatrix = ptr::null_mut();
        assert_eq!(
            pl_adjoint_lifted(ms, weights.as_ptr(), m, &mut adj),
            PlStatus::Ok
        );
        let mut eigs = vec![0.0f64; n];
        assert_eq!(
            pl_matrix_eigenvalues(adj, eigs.as_mut_ptr(), n),
            PlStatus::Ok
        );
        assert!((eigs[0] - n as f64).abs() < 1e-9);
        assert!(eigs[1].abs() < 1e-9);

        pl_matrix_free(adj);
        pl_matrix_free(z);
        pl_measurement_set_free(ms);
    }
}

#[test]
fn second_moment_through_c_surface() {
    // [[1, 1], [1, 0]] with real Gaussians: 7.
    let entries = interleave(&[(1.0, 0.0), (1.0, 0.0), (1.0, 0.0), (0.0, 0.0)]);
    unsafe {
        let mut a: *mut PlMatrix = ptr::null_mut();
        assert_eq!(pl_matrix_create(2, entries.as_ptr(), &mut a), PlStatus::Ok);
        let mut value = 0.0f64;
        assert_eq!(
            pl_second_moment_exact(a, PlEnsembleKind::GaussianReal, 0.0, 0.0, &mut value),
            PlStatus::Ok
        );
        assert!((value - 7.0).abs() < 1e-12);
        pl_matrix_free(a);
    }
}

#[test]
fn buffer_too_small_is_reported() {
    let entries = interleave(&[(1.0, 0.0), (0.0, 0.0), (0.0, 0.0), (2.0, 0.0)]);
    unsafe {
        let mut m: *mut PlMatrix = ptr::null_mut();
        assert_eq!(pl_matrix_create(2, entries.as_ptr(), &mut m), PlStatus::Ok);
        let mut out = [0.0f64; 1];
        assert_eq!(
            pl_matrix_eigenvalues(m, out.as_mut_ptr(), 1),
            PlStatus::BufferTooSmall
        );
        pl_matrix_free(m);
    }
}

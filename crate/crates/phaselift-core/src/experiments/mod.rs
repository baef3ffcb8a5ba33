//! Reproducible experiment runners.
//!
//! Every trial is a pure function of `(master_seed, cell, trial)`: trial
//! seeds are derived by key mixing, rows are computed in parallel up to
//! the configured worker count, and reports are assembled in `(cell,
//! trial)` order, so identical configurations reproduce identical rows
//! regardless of parallelism (wall-time fields aside).

mod report;

pub use report::{CheckRow, CsvRow, ExperimentReport, TrialRow};

use num_complex::Complex;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cmatrix::l1_norm;
use crate::cone::{
    diagnose, sample_admissible_direction, sign_flat_witness, unimodular_witness, ConeClass,
    ConeParams, SampleStyle,
};
use crate::ensembles::{EnsembleKind, EnsembleSpec};
use crate::error::{Error, Result};
use crate::hermitian::HermitianMatrix;
use crate::lifted::MeasurementSet;
use crate::rng::{derive_key, CounterRng};
use crate::solver::{recovery_error, solve_phaselift, SolverConfig};
use crate::theory;

pub type Complex64 = Complex<f64>;

/// Relative HS error below which a trial counts as a successful recovery.
pub const SUCCESS_THRESHOLD: f64 = 1e-2;

/// Master seed and worker count shared by all experiments.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct RunContext {
    pub master_seed: u64,
    /// 0 uses the process-default thread count.
    pub workers: usize,
}

impl Default for RunContext {
    fn default() -> Self {
        Self {
            master_seed: 1,
            workers: 0,
        }
    }
}

fn now_ms() -> f64 {
    use std::time::{SystemTime, UNIX_EPOCH};
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs_f64() * 1e3)
        .unwrap_or(0.0)
}

fn run_pooled<T: Send>(workers: usize, job: impl FnOnce() -> T + Send) -> Result<T> {
    if workers == 0 {
        Ok(job())
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::Numerical(format!("failed to build thread pool: {e}")))?;
        Ok(pool.install(job))
    }
}

/// Ground-truth signal families used in the sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignalClass {
    /// Spectrally flat: unimodular phases, or sign-flat (real) when the
    /// ensemble cannot separate a signal from its conjugate.
    Flat,
    /// First standard basis vector.
    Sparse,
    /// Uniform on the complex unit sphere.
    RandomComplex,
    /// Uniform on the real unit sphere.
    RandomReal,
}

impl SignalClass {
    pub fn name(&self) -> &'static str {
        match self {
            SignalClass::Flat => "flat",
            SignalClass::Sparse => "sparse",
            SignalClass::RandomComplex => "random_complex",
            SignalClass::RandomReal => "random_real",
        }
    }

    /// Unit-norm signal for this class.
    pub fn generate(&self, n: usize, seed: u64, conj_ambiguous: bool) -> Vec<Complex64> {
        match self {
            SignalClass::Flat => {
                if conj_ambiguous {
                    sign_flat_witness(n, seed)
                } else {
                    unimodular_witness(n, seed)
                }
            }
            SignalClass::Sparse => {
                let mut v = vec![Complex64::new(0.0, 0.0); n];
                v[0] = Complex64::new(1.0, 0.0);
                v
            }
            SignalClass::RandomComplex => {
                let mut rng = CounterRng::from_key(seed, &[0x516E, n as u64]);
                let mut v: Vec<Complex64> = (0..n)
                    .map(|_| {
                        let (a, b) = rng.next_gaussian_pair();
                        Complex64::new(a, b)
                    })
                    .collect();
                let norm = crate::cmatrix::vec_norm(&v);
                for z in &mut v {
                    *z /= norm;
                }
                v
            }
            SignalClass::RandomReal => {
                let mut rng = CounterRng::from_key(seed, &[0x516F, n as u64]);
                let mut v: Vec<Complex64> = (0..n)
                    .map(|_| Complex64::new(rng.next_gaussian_pair().0, 0.0))
                    .collect();
                let norm = crate::cmatrix::vec_norm(&v);
                for z in &mut v {
                    *z /= norm;
                }
                v
            }
        }
    }
}

/// Runs one solve and packs the outcome row. `x0` must have unit norm.
#[allow(clippy::too_many_arguments)]
fn solve_trial(
    cell: usize,
    trial: usize,
    spec: &EnsembleSpec,
    signal_class: &str,
    x0: &[Complex64],
    m: usize,
    noise: &[f64],
    solver: &SolverConfig,
    trial_seed: u64,
) -> Result<TrialRow> {
    let n = x0.len();
    let matrix = spec.sample_matrix(m, n)?;
    let ms = MeasurementSet::forward_intensities(matrix, x0, noise)?;
    let start = now_ms();
    let solved = solve_phaselift(&ms, solver)?;
    let wall = now_ms() - start;
    let err = recovery_error(&solved.x_hat, x0)?;
    let conj_ambiguous = spec.is_conjugate_ambiguous();
    // The lift has unit HS norm for unit-norm signals.
    let hs_err_rel = err.hs;
    let success = if conj_ambiguous {
        err.signal.min(err.conj_signal) <= SUCCESS_THRESHOLD
    } else {
        hs_err_rel <= SUCCESS_THRESHOLD
    };
    Ok(TrialRow {
        cell,
        trial,
        n,
        m,
        ensemble: spec.kind().name().to_string(),
        signal_class: signal_class.to_string(),
        trial_seed,
        noise_l1_over_m: l1_norm(noise) / m as f64,
        hs_err_rel,
        schatten1_err: err.schatten1,
        signal_err: err.signal,
        conj_signal_err: err.conj_signal,
        objective: solved.objective,
        iterations: solved.iterations,
        converged: solved.converged,
        success,
        wall_time_ms: wall,
    })
}

// ---------------------------------------------------------------------------
// Phase transition sweep
// ---------------------------------------------------------------------------

/// Grid sweep over dimension, oversampling, ensembles, and signal class.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct PhaseTransitionConfig {
    pub n_list: Vec<usize>,
    pub m_over_n_list: Vec<usize>,
    pub ensembles: Vec<EnsembleSpec>,
    pub signal_classes: Vec<SignalClass>,
    pub trials: usize,
    pub solver: SolverConfig,
}

impl Default for PhaseTransitionConfig {
    fn default() -> Self {
        Self {
            n_list: vec![8],
            m_over_n_list: vec![3, 6, 10, 14],
            ensembles: vec![
                EnsembleSpec::new(EnsembleKind::GaussianComplex, 0).expect("valid kind")
            ],
            signal_classes: vec![SignalClass::Flat],
            trials: 10,
            solver: SolverConfig::default(),
        }
    }
}

/// One grid cell of the sweep.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct CellSummary {
    cell: usize,
    n: usize,
    m: usize,
    ensemble: String,
    signal_class: String,
    success_rate: f64,
    median_hs_err_rel: f64,
}

fn median(values: &mut [f64]) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    values.sort_by(|a, b| a.partial_cmp(b).expect("finite values"));
    let k = values.len();
    if k % 2 == 1 {
        values[k / 2]
    } else {
        0.5 * (values[k / 2 - 1] + values[k / 2])
    }
}

/// Runs the sweep; success per cell follows the recovery threshold with
/// the conjugate-aware metric for conjugate-ambiguous ensembles.
pub fn run_phase_transition(
    cfg: &PhaseTransitionConfig,
    ctx: &RunContext,
) -> Result<ExperimentReport<TrialRow>> {
    if cfg.trials == 0 || cfg.n_list.is_empty() || cfg.m_over_n_list.is_empty() {
        return Err(Error::InvalidInput("empty phase-transition grid".into()));
    }
    let mut cells = Vec::new();
    for &n in &cfg.n_list {
        for &ratio in &cfg.m_over_n_list {
            for spec in &cfg.ensembles {
                for class in &cfg.signal_classes {
                    cells.push((n, n * ratio, *spec, *class));
                }
            }
        }
    }
    let master = ctx.master_seed;
    let solver = cfg.solver;
    let jobs: Vec<(usize, usize)> = (0..cells.len())
        .flat_map(|c| (0..cfg.trials).map(move |t| (c, t)))
        .collect();
    let rows: Result<Vec<TrialRow>> = run_pooled(ctx.workers, || {
        jobs.par_iter()
            .map(|&(cell, trial)| {
                let (n, m, spec, class) = cells[cell];
                let trial_seed = derive_key(master, &[0x9A5E, cell as u64, trial as u64]);
                let spec = spec.with_seed(derive_key(trial_seed, &[1]));
                let x0 = class.generate(
                    n,
                    derive_key(trial_seed, &[2]),
                    spec.is_conjugate_ambiguous(),
                );
                solve_trial(
                    cell,
                    trial,
                    &spec,
                    class.name(),
                    &x0,
                    m,
                    &vec![0.0; m],
                    &solver,
                    trial_seed,
                )
            })
            .collect()
    })?;
    let mut rows = rows?;
    rows.sort_by_key(|r| (r.cell, r.trial));

    let mut summaries = Vec::new();
    for (cell, &(n, m, ref spec, class)) in cells.iter().enumerate() {
        let cell_rows: Vec<&TrialRow> = rows.iter().filter(|r| r.cell == cell).collect();
        let successes = cell_rows.iter().filter(|r| r.success).count();
        let mut errs: Vec<f64> = cell_rows.iter().map(|r| r.hs_err_rel).collect();
        summaries.push(CellSummary {
            cell,
            n,
            m,
            ensemble: spec.kind().name().to_string(),
            signal_class: class.name().to_string(),
            success_rate: successes as f64 / cell_rows.len() as f64,
            median_hs_err_rel: median(&mut errs),
        });
    }

    Ok(ExperimentReport {
        experiment: "phase_transition".to_string(),
        config: serde_json::json!({ "context": ctx, "phase_transition": cfg }),
        rows,
        summary: serde_json::json!({ "cells": summaries }),
    })
}

// ---------------------------------------------------------------------------
// Ambiguity demos
// ---------------------------------------------------------------------------

/// Configuration of the three ambiguity demonstrations.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct AmbiguityConfig {
    /// Measurements for the observation-gap demos.
    pub gap_m: usize,
    /// Rotation phase for the conjugate-pair demos.
    pub phase: [f64; 2],
    /// Solve size for the conjugate-recovery demo.
    pub conj_n: usize,
    pub conj_m: usize,
    /// Size and trial count for the real-restricted recovery demo.
    pub real_n: usize,
    pub real_m: usize,
    pub real_trials: usize,
    pub solver: SolverConfig,
}

impl Default for AmbiguityConfig {
    fn default() -> Self {
        Self {
            gap_m: 1000,
            phase: [0.0, 1.0],
            conj_n: 4,
            conj_m: 64,
            real_n: 8,
            real_m: 400,
            real_trials: 10,
            solver: SolverConfig::default(),
        }
    }
}

/// Runs the three ambiguity demonstrations:
///
/// (a) Rademacher measurements cannot distinguish `e1` from `e2`
///     (observation gap exactly zero);
/// (b) rotated-real measurements cannot distinguish a complex signal
///     from its conjugate (gap exactly zero), and the unrestricted
///     solver is checked against the conjugate-aware recovery metric;
/// (c) the real-restricted program recovers flat real signals from the
///     same rotated-real measurements.
pub fn run_ambiguity_demos(
    cfg: &AmbiguityConfig,
    ctx: &RunContext,
) -> Result<ExperimentReport<CheckRow>> {
    let mut rows = Vec::new();
    let phase = Complex64::new(cfg.phase[0], cfg.phase[1]);

    // (a) Rademacher e1 vs e2.
    {
        let spec = EnsembleSpec::new(
            EnsembleKind::Rademacher,
            derive_key(ctx.master_seed, &[0xA1]),
        )?;
        let n = 4;
        let matrix = spec.sample_matrix(cfg.gap_m, n)?;
        let mut e1 = vec![Complex64::new(0.0, 0.0); n];
        e1[0] = Complex64::new(1.0, 0.0);
        let mut e2 = vec![Complex64::new(0.0, 0.0); n];
        e2[1] = Complex64::new(1.0, 0.0);
        let w = vec![0.0; cfg.gap_m];
        let ya = MeasurementSet::forward_intensities(matrix.clone(), &e1, &w)?;
        let yb = MeasurementSet::forward_intensities(matrix, &e2, &w)?;
        let gap = max_abs_gap(ya.intensities(), yb.intensities());
        rows.push(CheckRow {
            check: "rademacher_basis_pair_observation_gap".into(),
            inputs: format!("{{\"m\":{},\"n\":{n}}}", cfg.gap_m),
            value: gap,
            tolerance: 0.0,
            pass: gap == 0.0,
        });
    }

    // (b) Rotated-real conjugate pair: exact gap, then recovery metrics.
    {
        let spec = EnsembleSpec::new(
            EnsembleKind::RotatedReal { phase },
            derive_key(ctx.master_seed, &[0xB2]),
        )?;
        let x0 = vec![
            Complex64::new(0.5, 0.0),
            Complex64::new(0.0, 0.5),
            Complex64::new(0.5, 0.0),
            Complex64::new(0.0, -0.5),
        ];
        let conj: Vec<Complex64> = x0.iter().map(|z| z.conj()).collect();
        let w = vec![0.0; cfg.gap_m];
        let matrix = spec.sample_matrix(cfg.gap_m, x0.len())?;
        let ya = MeasurementSet::forward_intensities(matrix.clone(), &x0, &w)?;
        let yb = MeasurementSet::forward_intensities(matrix, &conj, &w)?;
        let gap = max_abs_gap(ya.intensities(), yb.intensities());
        rows.push(CheckRow {
            check: "rotated_real_conjugate_observation_gap".into(),
            inputs: format!("{{\"m\":{},\"n\":{}}}", cfg.gap_m, x0.len()),
            value: gap,
            tolerance: 0.0,
            pass: gap == 0.0,
        });

        // Unrestricted solve on the conjugate-ambiguous instance. The
        // optimal face contains the lifts of both the signal and its
        // conjugate along with their blends, so this recovery check
        // documents how close the returned iterate is to either vertex.
        let spec = spec.with_seed(derive_key(ctx.master_seed, &[0xB3]));
        let x0n: Vec<Complex64> = x0.iter().map(|z| z * 2.0 / x0.len() as f64 * 2.0).collect();
        let x0n: Vec<Complex64> = {
            let norm = crate::cmatrix::vec_norm(&x0n);
            x0n.iter().map(|z| z / norm).collect()
        };
        let matrix = spec.sample_matrix(cfg.conj_m, cfg.conj_n.min(x0n.len()))?;
        let x0n = x0n[..cfg.conj_n.min(x0n.len())].to_vec();
        let x0n = {
            let norm = crate::cmatrix::vec_norm(&x0n);
            x0n.iter().map(|z| z / norm).collect::<Vec<_>>()
        };
        let ms = MeasurementSet::forward_intensities(matrix, &x0n, &vec![0.0; cfg.conj_m])?;
        let solved = solve_phaselift(&ms, &cfg.solver)?;
        let err = recovery_error(&solved.x_hat, &x0n)?;
        let min_err = err.signal.min(err.conj_signal);
        rows.push(CheckRow {
            check: "rotated_real_conjugate_recovery_min_err".into(),
            inputs: format!(
                "{{\"m\":{},\"n\":{},\"signal_err\":{},\"conj_signal_err\":{}}}",
                cfg.conj_m, cfg.conj_n, err.signal, err.conj_signal
            ),
            value: min_err,
            tolerance: SUCCESS_THRESHOLD,
            pass: min_err <= SUCCESS_THRESHOLD,
        });
    }

    // (c) Real restriction recovers flat real signals.
    {
        let solver = SolverConfig {
            real_restriction: true,
            ..cfg.solver
        };
        let master = ctx.master_seed;
        let trials: Vec<usize> = (0..cfg.real_trials).collect();
        let outcomes: Result<Vec<TrialRow>> = run_pooled(ctx.workers, || {
            trials
                .par_iter()
                .map(|&t| {
                    let trial_seed = derive_key(master, &[0xC3, t as u64]);
                    let spec = EnsembleSpec::new(
                        EnsembleKind::RotatedReal { phase },
                        derive_key(trial_seed, &[1]),
                    )?;
                    let x0 = sign_flat_witness(cfg.real_n, derive_key(trial_seed, &[2]));
                    solve_trial(
                        0,
                        t,
                        &spec,
                        "flat",
                        &x0,
                        cfg.real_m,
                        &vec![0.0; cfg.real_m],
                        &solver,
                        trial_seed,
                    )
                })
                .collect()
        })?;
        let outcomes = outcomes?;
        let successes = outcomes
            .iter()
            .filter(|r| r.hs_err_rel <= SUCCESS_THRESHOLD)
            .count();
        let needed = cfg.real_trials - cfg.real_trials / 10;
        rows.push(CheckRow {
            check: "real_restricted_flat_recovery".into(),
            inputs: format!(
                "{{\"n\":{},\"m\":{},\"trials\":{}}}",
                cfg.real_n, cfg.real_m, cfg.real_trials
            ),
            value: successes as f64,
            tolerance: needed as f64,
            pass: successes >= needed,
        });
    }

    let all_pass = rows.iter().all(|r| r.pass);
    Ok(ExperimentReport {
        experiment: "ambiguity".to_string(),
        config: serde_json::json!({ "context": ctx, "ambiguity": cfg }),
        rows,
        summary: serde_json::json!({ "all_pass": all_pass }),
    })
}

fn max_abs_gap(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

// ---------------------------------------------------------------------------
// Noise scaling
// ---------------------------------------------------------------------------

/// Noise sweep at fixed `(n, m)` over a geometric grid of noise levels.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct NoiseScalingConfig {
    pub n: usize,
    pub m_over_n: usize,
    pub ensemble: EnsembleSpec,
    /// Geometric grid of `||w||_1 / m` levels.
    pub level_min: f64,
    pub level_max: f64,
    pub num_levels: usize,
    /// Prepend a zero-noise level (excluded from the log-log fit).
    pub include_zero: bool,
    pub trials: usize,
    pub solver: SolverConfig,
}

impl Default for NoiseScalingConfig {
    fn default() -> Self {
        Self {
            n: 16,
            m_over_n: 50,
            ensemble: EnsembleSpec::new(EnsembleKind::GaussianComplex, 0).expect("valid kind"),
            level_min: 3e-4,
            level_max: 3e-2,
            num_levels: 8,
            include_zero: true,
            trials: 10,
            solver: SolverConfig {
                max_iters: 2500,
                ..SolverConfig::default()
            },
        }
    }
}

/// Runs the sweep and fits the log-log slope of median Schatten-1 error
/// against the noise level.
pub fn run_noise_scaling(
    cfg: &NoiseScalingConfig,
    ctx: &RunContext,
) -> Result<ExperimentReport<TrialRow>> {
    if cfg.num_levels < 2 || cfg.trials == 0 {
        return Err(Error::InvalidInput(
            "noise scaling needs at least 2 levels and 1 trial".into(),
        ));
    }
    if !(cfg.level_min > 0.0 && cfg.level_max > cfg.level_min) {
        return Err(Error::InvalidInput(
            "noise levels must be positive and increasing".into(),
        ));
    }
    let mut levels = Vec::new();
    if cfg.include_zero {
        levels.push(0.0);
    }
    let log_step = (cfg.level_max / cfg.level_min).ln() / (cfg.num_levels - 1) as f64;
    for k in 0..cfg.num_levels {
        levels.push(cfg.level_min * (log_step * k as f64).exp());
    }

    let m = cfg.n * cfg.m_over_n;
    let master = ctx.master_seed;
    let solver = cfg.solver;
    let ensemble = cfg.ensemble;
    let n = cfg.n;
    let jobs: Vec<(usize, usize)> = (0..levels.len())
        .flat_map(|c| (0..cfg.trials).map(move |t| (c, t)))
        .collect();
    let levels_ref = &levels;
    let rows: Result<Vec<TrialRow>> = run_pooled(ctx.workers, || {
        jobs.par_iter()
            .map(|&(cell, trial)| {
                let level = levels_ref[cell];
                let trial_seed = derive_key(master, &[0x401E, cell as u64, trial as u64]);
                let spec = ensemble.with_seed(derive_key(trial_seed, &[1]));
                let x0 = unimodular_witness(n, derive_key(trial_seed, &[2]));
                let w = uniform_noise(m, level, derive_key(trial_seed, &[3]));
                solve_trial(cell, trial, &spec, "flat", &x0, m, &w, &solver, trial_seed)
            })
            .collect()
    })?;
    let mut rows = rows?;
    rows.sort_by_key(|r| (r.cell, r.trial));

    // Per-level medians, then the log-log fit over positive levels.
    let mut level_rows = Vec::new();
    let mut fit_points = Vec::new();
    for (cell, &level) in levels.iter().enumerate() {
        let mut errs: Vec<f64> = rows
            .iter()
            .filter(|r| r.cell == cell)
            .map(|r| r.schatten1_err)
            .collect();
        let med = median(&mut errs);
        level_rows.push(serde_json::json!({
            "cell": cell,
            "noise_l1_over_m": level,
            "median_schatten1_err": med,
        }));
        if level > 0.0 && med > 0.0 {
            fit_points.push((level.ln(), med.ln()));
        }
    }
    let (slope, r2) = linear_fit(&fit_points);

    Ok(ExperimentReport {
        experiment: "noise_scaling".to_string(),
        config: serde_json::json!({ "context": ctx, "noise_scaling": cfg }),
        rows,
        summary: serde_json::json!({
            "levels": level_rows,
            "loglog_slope": slope,
            "r_squared": r2,
        }),
    })
}

/// Nonnegative i.i.d. uniform noise rescaled so `||w||_1 / m = level`.
pub fn uniform_noise(m: usize, level: f64, seed: u64) -> Vec<f64> {
    if level == 0.0 {
        return vec![0.0; m];
    }
    let mut rng = CounterRng::from_key(seed, &[0x4F15]);
    let mut w: Vec<f64> = (0..m).map(|_| rng.next_f64_open()).collect();
    let sum: f64 = w.iter().sum();
    let scale = level * m as f64 / sum;
    for v in &mut w {
        *v *= scale;
    }
    w
}

/// Least squares `y = a + b x`; returns `(b, R^2)`.
fn linear_fit(points: &[(f64, f64)]) -> (f64, f64) {
    let n = points.len() as f64;
    if points.len() < 2 {
        return (f64::NAN, f64::NAN);
    }
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    let mut syy = 0.0;
    for &(x, y) in points {
        sxx += (x - mean_x) * (x - mean_x);
        sxy += (x - mean_x) * (y - mean_y);
        syy += (y - mean_y) * (y - mean_y);
    }
    let slope = sxy / sxx;
    let r2 = if syy > 0.0 {
        sxy * sxy / (sxx * syy)
    } else {
        1.0
    };
    (slope, r2)
}

// ---------------------------------------------------------------------------
// Theory suite
// ---------------------------------------------------------------------------

/// Configuration of the verification suite.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(default)]
pub struct TheorySuiteConfig {
    /// Run only checks whose name contains this substring.
    pub check: Option<String>,
}

/// Executes the oracle-equivalence, identity, and bound checks with
/// pass/fail rows.
pub fn run_theory_suite(
    cfg: &TheorySuiteConfig,
    ctx: &RunContext,
) -> Result<ExperimentReport<CheckRow>> {
    let seed = ctx.master_seed;
    let mut rows: Vec<CheckRow> = Vec::new();
    let wanted = |name: &str| cfg.check.as_ref().is_none_or(|f| name.contains(f.as_str()));

    // Second-moment formula against exhaustive enumeration.
    for kind in [EnsembleKind::Rademacher, EnsembleKind::ComplexBernoulli] {
        let name = format!("second_moment_oracle_{}", kind.name());
        if !wanted(&name) {
            continue;
        }
        let spec = EnsembleSpec::new(kind, seed)?;
        let mp = spec.analytic_moments();
        let mut worst = 0.0f64;
        for i in 0..50u64 {
            let n = 2 + (i % 5) as usize; // n <= 6
            let a = random_matrix_for_suite(n, derive_key(seed, &[0x2ed, i]));
            let exact = theory::quadratic_form_second_moment(&a, &mp);
            let brute = theory::quadratic_form_second_moment_enumerated(&a, &spec)?;
            worst = worst.max((exact - brute).abs() / exact.abs().max(1.0));
        }
        rows.push(CheckRow {
            check: name,
            inputs: "{\"matrices\":50,\"n_max\":6}".into(),
            value: worst,
            tolerance: 1e-10,
            pass: worst <= 1e-10,
        });
    }

    // Second-moment formula against Monte Carlo for continuous kinds.
    for kind in [
        EnsembleKind::GaussianReal,
        EnsembleKind::GaussianComplex,
        EnsembleKind::Steinhaus,
    ] {
        let name = format!("second_moment_monte_carlo_{}", kind.name());
        if !wanted(&name) {
            continue;
        }
        let spec = EnsembleSpec::new(kind, derive_key(seed, &[0x3CA]))?;
        let mp = spec.analytic_moments();
        let n = 6;
        let a = random_matrix_for_suite(n, derive_key(seed, &[0x3CB]));
        let exact = theory::quadratic_form_second_moment(&a, &mp);
        let trials = 1_000_000usize;
        let mut sum = 0.0;
        let mut sum_sq = 0.0;
        for t in 0..trials {
            let xi = spec.sample_vector(0x3CC, t as u64, n);
            let q = a.quadratic_form(&xi);
            sum += q * q;
            sum_sq += (q * q) * (q * q);
        }
        let nt = trials as f64;
        let mean = sum / nt;
        let se = ((sum_sq / nt - mean * mean).max(0.0) / nt).sqrt();
        let dev = (mean - exact).abs();
        rows.push(CheckRow {
            check: name,
            inputs: format!("{{\"n\":{n},\"trials\":{trials},\"exact\":{exact}}}"),
            value: dev,
            tolerance: 5.0 * se,
            pass: dev <= 5.0 * se,
        });
    }

    // Paley-Zygmund inequality across ensembles and matrices.
    if wanted("paley_zygmund") {
        let kinds = [
            EnsembleKind::GaussianReal,
            EnsembleKind::GaussianComplex,
            EnsembleKind::Rademacher,
            EnsembleKind::Steinhaus,
            EnsembleKind::ComplexBernoulli,
            EnsembleKind::RotatedReal {
                phase: Complex64::new(0.0, 1.0),
            },
        ];
        let mut idx = 0;
        'outer: for round in 0..10u64 {
            for kind in kinds {
                if idx >= 30 {
                    break 'outer;
                }
                let spec = EnsembleSpec::new(kind, derive_key(seed, &[0x7A1, round]))?;
                let mp = spec.analytic_moments();
                let n = 2 + (round % 4) as usize;
                let a = random_matrix_for_suite(n, derive_key(seed, &[0x7A2, round, idx]));
                let report = theory::paley_zygmund_lower(&a, &mp, &spec, 20_000)?;
                if report.vacuous {
                    continue;
                }
                let margin = report.lhs_prob - (report.pz_ratio - 5.0 * report.stderr);
                rows.push(CheckRow {
                    check: format!("paley_zygmund_{}_{idx}", kind.name()),
                    inputs: format!(
                        "{{\"n\":{n},\"lhs\":{},\"ratio\":{},\"stderr\":{}}}",
                        report.lhs_prob, report.pz_ratio, report.stderr
                    ),
                    value: margin,
                    tolerance: 0.0,
                    pass: margin >= 0.0,
                });
                idx += 1;
            }
        }
    }

    // Kernel witness: the Rademacher ambiguity direction maps to zero.
    if wanted("kernel_witness") {
        let mut worst = 0.0f64;
        for (i, m) in [1usize, 10, 100, 1000].iter().enumerate() {
            let spec = EnsembleSpec::new(
                EnsembleKind::Rademacher,
                derive_key(seed, &[0x6B, i as u64]),
            )?;
            let matrix = spec.sample_matrix(*m, 4)?;
            let ms = MeasurementSet::new(matrix, vec![0.0; *m], vec![0.0; *m])?;
            let z = HermitianMatrix::from_diag(&[-1.0, 1.0, 0.0, 0.0]);
            let image = ms.apply(&z)?;
            worst = worst.max(image.iter().fold(0.0f64, |acc, v| acc.max(v.abs())));
        }
        rows.push(CheckRow {
            check: "kernel_witness_rademacher".into(),
            inputs: "{\"directions\":\"e2e2*-e1e1*\",\"m\":[1,10,100,1000]}".into(),
            value: worst,
            tolerance: 0.0,
            pass: worst == 0.0,
        });
    }

    // At most one strictly negative eigenvalue over admissible samples.
    if wanted("one_negative_eigenvalue") {
        let params = ConeParams::default();
        let mut max_count = 0usize;
        for i in 0..500u64 {
            let n = 2 + (i % 19) as usize;
            let x0 = unimodular_witness(n, derive_key(seed, &[0x1e9, i]));
            let style = SampleStyle::ALL[(i % 3) as usize];
            let z = sample_admissible_direction(&x0, derive_key(seed, &[0x1ea, i]), style)?;
            if z.hs_norm() == 0.0 {
                continue;
            }
            let d = diagnose(&z, &params, Some(&x0))?;
            max_count = max_count.max(d.negative_eigencount);
        }
        rows.push(CheckRow {
            check: "one_negative_eigenvalue".into(),
            inputs: "{\"samples\":500,\"n_max\":20}".into(),
            value: max_count as f64,
            tolerance: 1.0,
            pass: max_count <= 1,
        });
    }

    // Norm bounds on class M2 with flat witnesses.
    if wanted("m2_norm_bounds") {
        let params = ConeParams::default();
        let mut min_slack1 = f64::INFINITY;
        let mut min_slack2 = f64::INFINITY;
        let mut threshold2 = 0.0;
        let mut count = 0;
        let mut i = 0u64;
        while count < 200 {
            let n = 8 + (i % 13) as usize; // 8..=20
            let x0 = unimodular_witness(n, derive_key(seed, &[0x30, i]));
            let style = if i.is_multiple_of(3) {
                SampleStyle::Mixed
            } else {
                SampleStyle::Rank1Descent
            };
            let z = sample_admissible_direction(&x0, derive_key(seed, &[0x31, i]), style)?;
            i += 1;
            if z.hs_norm() == 0.0 {
                continue;
            }
            if diagnose(&z, &params, Some(&x0))?.cone_class != ConeClass::M2 {
                continue;
            }
            let report = crate::cone::verify_m2_norm_bounds(&z, &params)?;
            min_slack1 = min_slack1.min(report.bound1_slack);
            min_slack2 = min_slack2.min(report.bound2_slack);
            threshold2 = report.bound2_threshold;
            count += 1;
        }
        rows.push(CheckRow {
            check: "m2_trace_norm_bound".into(),
            inputs: "{\"samples\":200}".into(),
            value: min_slack1,
            tolerance: 0.0,
            pass: min_slack1 >= 0.0,
        });
        rows.push(CheckRow {
            check: "m2_diagonal_mass_bound".into(),
            inputs: format!("{{\"samples\":200,\"threshold\":{threshold2}}}"),
            value: min_slack2,
            tolerance: 0.0,
            pass: min_slack2 >= 0.0 && threshold2 <= 0.99,
        });
    }

    // Rank-1 l1-isometry deviation shrinks with oversampling.
    if wanted("rank1_rip_trend") {
        for kind in [
            EnsembleKind::GaussianReal,
            EnsembleKind::GaussianComplex,
            EnsembleKind::Rademacher,
            EnsembleKind::Steinhaus,
            EnsembleKind::ComplexBernoulli,
        ] {
            let n = 10;
            let mut medians = Vec::new();
            for &ratio in &[25usize, 100, 400] {
                let mut deltas = Vec::new();
                for s in 0..10u64 {
                    let spec = EnsembleSpec::new(kind, derive_key(seed, &[0x41, s]))?;
                    deltas.push(theory::rank1_rip_probe(&spec, ratio * n, n, 100)?.delta_hat);
                }
                medians.push(median(&mut deltas));
            }
            let pass = medians[0] > medians[1] && medians[1] > medians[2];
            rows.push(CheckRow {
                check: format!("rank1_rip_trend_{}", kind.name()),
                inputs: format!(
                    "{{\"n\":{n},\"m_over_n\":[25,100,400],\"medians\":[{},{},{}]}}",
                    medians[0], medians[1], medians[2]
                ),
                value: medians[2],
                tolerance: medians[0],
                pass,
            });
        }
    }

    // sqrt(mn)-normalized operator norms stay within a 2x band.
    if wanted("opnorm_scaling") {
        for kind in [EnsembleKind::GaussianComplex, EnsembleKind::Rademacher] {
            let spec = EnsembleSpec::new(kind, derive_key(seed, &[0x51]))?;
            let grid = [(100, 10), (300, 10), (200, 20), (600, 20)];
            let table = theory::rademacher_opnorm_scaling(&spec, &grid, 10)?;
            let ratios: Vec<f64> = table.iter().map(|r| r.ratio).collect();
            let max = ratios.iter().cloned().fold(0.0f64, f64::max);
            let min = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
            let spread = max / min;
            rows.push(CheckRow {
                check: format!("opnorm_scaling_{}", kind.name()),
                inputs: format!(
                    "{{\"grid\":\"n in {{10,20}}, m in {{10n,30n}}\",\"ratios\":{ratios:?}}}"
                ),
                value: spread,
                tolerance: 2.0,
                pass: spread < 2.0,
            });
        }
    }

    // Conic ratio probes: positive without sparse witnesses, zero with.
    if wanted("conic_probe") {
        let spec = EnsembleSpec::new(EnsembleKind::GaussianComplex, derive_key(seed, &[0x61]))?;
        let report = theory::probe_min_conic_ratio(&spec, 200, 10, &ConeParams::default(), 500)?;
        rows.push(CheckRow {
            check: "conic_probe_gaussian_complex_positive".into(),
            inputs: "{\"m\":200,\"n\":10,\"samples\":500}".into(),
            value: report.min_ratio_over_m,
            tolerance: 0.0,
            pass: report.min_ratio_over_m > 0.0,
        });

        let spec = EnsembleSpec::new(EnsembleKind::Rademacher, derive_key(seed, &[0x62]))?;
        let params = ConeParams {
            mu: 1.0,
            ..ConeParams::default()
        };
        let report = theory::probe_min_conic_ratio(&spec, 100, 6, &params, 200)?;
        rows.push(CheckRow {
            check: "conic_probe_rademacher_kernel".into(),
            inputs: "{\"m\":100,\"n\":6,\"samples\":200,\"mu\":1.0}".into(),
            value: report.min_ratio,
            tolerance: 0.0,
            pass: report.min_ratio == 0.0,
        });
    }

    // Eigendecomposition and projection invariants.
    if wanted("hermitian_core") {
        let mut worst_recon = 0.0f64;
        let mut worst_gram = 0.0f64;
        let mut worst_trace = 0.0f64;
        for i in 0..100u64 {
            let n = 2 + (i % 11) as usize; // n <= 12
            let a = random_matrix_for_suite(n, derive_key(seed, &[0x71, i]));
            let dec = a.eig()?;
            worst_recon =
                worst_recon.max(dec.reconstruct().sub(&a).hs_norm() / a.hs_norm().max(1.0));
            worst_gram = worst_gram.max(dec.gram_deviation());
            let sum: f64 = dec.eigenvalues.iter().sum();
            worst_trace = worst_trace.max((a.trace() - sum).abs() / a.trace().abs().max(1.0));
        }
        rows.push(CheckRow {
            check: "hermitian_core_reconstruction".into(),
            inputs: "{\"matrices\":100,\"n_max\":12}".into(),
            value: worst_recon,
            tolerance: 1e-9,
            pass: worst_recon <= 1e-9,
        });
        rows.push(CheckRow {
            check: "hermitian_core_orthonormality".into(),
            inputs: "{\"matrices\":100,\"n_max\":12}".into(),
            value: worst_gram,
            tolerance: 1e-9,
            pass: worst_gram <= 1e-9,
        });
        rows.push(CheckRow {
            check: "hermitian_core_trace_identity".into(),
            inputs: "{\"matrices\":100,\"n_max\":12}".into(),
            value: worst_trace,
            tolerance: 1e-9,
            pass: worst_trace <= 1e-9,
        });
    }

    if rows.is_empty() {
        return Err(Error::InvalidInput(format!(
            "check filter {:?} matched no checks",
            cfg.check
        )));
    }
    let all_pass = rows.iter().all(|r| r.pass);
    Ok(ExperimentReport {
        experiment: "theory_suite".to_string(),
        config: serde_json::json!({ "context": ctx, "theory_suite": cfg }),
        rows,
        summary: serde_json::json!({ "all_pass": all_pass }),
    })
}

fn random_matrix_for_suite(n: usize, seed: u64) -> HermitianMatrix {
    let mut rng = CounterRng::from_key(seed, &[n as u64, 0x517E]);
    let mut m = HermitianMatrix::zeros(n);
    for j in 0..n {
        let (d, _) = rng.next_gaussian_pair();
        m.set_pair(j, j, Complex64::new(d, 0.0));
        for k in (j + 1)..n {
            let (re, im) = rng.next_gaussian_pair();
            m.set_pair(j, k, Complex64::new(re, im));
        }
    }
    m
}

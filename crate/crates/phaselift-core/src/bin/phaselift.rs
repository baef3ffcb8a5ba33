//! Command-line harness: generate measurement sets, solve single
//! instances, and run the reproducible experiment suites.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use phaselift_core::ensembles::{EnsembleKind, EnsembleSpec};
use phaselift_core::experiments::{
    run_ambiguity_demos, run_noise_scaling, run_phase_transition, run_theory_suite,
    AmbiguityConfig, NoiseScalingConfig, PhaseTransitionConfig, RunContext, SignalClass,
    TheorySuiteConfig,
};
use phaselift_core::io;
use phaselift_core::lifted::MeasurementSet;
use phaselift_core::rng::derive_key;
use phaselift_core::solver::{recovery_error, solve_phaselift, SolverConfig};
use phaselift_core::Complex64;

/// PhaseLift recovery from intensity measurements, with reproducible
/// experiments and verification suites.
#[derive(Parser)]
#[command(name = "phaselift", version, about)]
struct Cli {
    /// Master seed for all randomness (default 1; an explicit flag wins
    /// over the config file).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads for experiment trials (0 = library default; an
    /// explicit flag wins over the config file).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Directory for experiment reports (JSON + CSV).
    #[arg(long, global = true, default_value = "reports")]
    out_dir: PathBuf,
    /// JSON config file; sections override built-in defaults.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a measurement set file from an ensemble and a signal.
    Gen(GenArgs),
    /// Solve one instance from a measurement set file.
    Solve(SolveArgs),
    /// Success-rate sweep over (n, m/n, ensemble, signal class).
    PhaseTransition {
        /// Trials per grid cell.
        #[arg(long)]
        trials: Option<usize>,
    },
    /// Indistinguishable-pair demonstrations with machine-checked rows.
    Ambiguity,
    /// Median recovery error against noise level, with a log-log fit.
    NoiseScaling {
        /// Trials per noise level.
        #[arg(long)]
        trials: Option<usize>,
    },
    /// Oracle-equivalence and bound checks; nonzero exit on any failure.
    TheorySuite {
        /// Run only checks whose name contains this substring.
        #[arg(long)]
        check: Option<String>,
    },
}

#[derive(Args)]
struct GenArgs {
    /// Ensemble kind: gaussian_real, gaussian_complex, rademacher,
    /// steinhaus, complex_bernoulli, rotated_real.
    #[arg(long)]
    ensemble: String,
    /// Phase for rotated_real as "re,im" (default the quarter rotation).
    #[arg(long)]
    phase: Option<String>,
    /// Signal dimension.
    #[arg(long)]
    n: usize,
    /// Number of measurements.
    #[arg(long)]
    m: usize,
    /// Signal class: flat, sparse, random_complex, random_real.
    #[arg(long, default_value = "flat")]
    signal: String,
    /// Noise mass per measurement, ||w||_1 / m.
    #[arg(long, default_value_t = 0.0)]
    noise_level: f64,
    /// Output path for the measurement set JSON.
    #[arg(long)]
    out: PathBuf,
    /// Optional output path for the ground-truth signal JSON.
    #[arg(long)]
    x0_out: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    /// Measurement set JSON file.
    #[arg(long)]
    input: PathBuf,
    /// Optional ground-truth signal JSON for error reporting.
    #[arg(long)]
    x0: Option<PathBuf>,
    /// Restrict the search space to real symmetric matrices.
    #[arg(long)]
    real_restriction: bool,
    #[arg(long, default_value_t = 1e-7)]
    tol: f64,
    #[arg(long, default_value_t = 20_000)]
    max_iters: usize,
    #[arg(long, default_value_t = 1.0)]
    step_ratio: f64,
    /// Output path for the solve result JSON (stdout summary otherwise).
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Config file sections; any subset may be present.
#[derive(Default, Deserialize)]
#[serde(default)]
struct FileConfig {
    seed: Option<u64>,
    workers: Option<usize>,
    phase_transition: Option<PhaseTransitionConfig>,
    ambiguity: Option<AmbiguityConfig>,
    noise_scaling: Option<NoiseScalingConfig>,
    theory_suite: Option<TheorySuiteConfig>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(all_pass) => {
            if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> phaselift_core::Result<bool> {
    let file: FileConfig = match &cli.config {
        Some(path) => io::load_json(path)?,
        None => FileConfig::default(),
    };
    let ctx = RunContext {
        master_seed: cli.seed.or(file.seed).unwrap_or(1),
        workers: cli.workers.or(file.workers).unwrap_or(0),
    };

    match cli.command {
        Command::Gen(args) => {
            cmd_gen(&args, ctx.master_seed)?;
            Ok(true)
        }
        Command::Solve(args) => {
            cmd_solve(&args)?;
            Ok(true)
        }
        Command::PhaseTransition { trials } => {
            let mut cfg = file.phase_transition.unwrap_or_default();
            if let Some(t) = trials {
                cfg.trials = t;
            }
            let report = run_phase_transition(&cfg, &ctx)?;
            let path = report.write_to_dir(&cli.out_dir)?;
            let cells = report.summary["cells"]
                .as_array()
                .map(|c| c.len())
                .unwrap_or(0);
            println!(
                "phase transition: {} rows over {cells} cells -> {}",
                report.rows.len(),
                path.display()
            );
            Ok(true)
        }
        Command::Ambiguity => {
            let cfg = file.ambiguity.unwrap_or_default();
            let report = run_ambiguity_demos(&cfg, &ctx)?;
            let path = report.write_to_dir(&cli.out_dir)?;
            let mut all_pass = true;
            for row in &report.rows {
                println!(
                    "{} {}: value={:.6e} tolerance={:.6e}",
                    if row.pass { "PASS" } else { "FAIL" },
                    row.check,
                    row.value,
                    row.tolerance
                );
                all_pass &= row.pass;
            }
            println!("ambiguity report -> {}", path.display());
            Ok(all_pass)
        }
        Command::NoiseScaling { trials } => {
            let mut cfg = file.noise_scaling.unwrap_or_default();
            if let Some(t) = trials {
                cfg.trials = t;
            }
            let report = run_noise_scaling(&cfg, &ctx)?;
            let path = report.write_to_dir(&cli.out_dir)?;
            println!(
                "noise scaling: slope={:.4} R^2={:.4} -> {}",
                report.summary["loglog_slope"].as_f64().unwrap_or(f64::NAN),
                report.summary["r_squared"].as_f64().unwrap_or(f64::NAN),
                path.display()
            );
            Ok(true)
        }
        Command::TheorySuite { check } => {
            let mut cfg = file.theory_suite.unwrap_or_default();
            if check.is_some() {
                cfg.check = check;
            }
            let report = run_theory_suite(&cfg, &ctx)?;
            let path = report.write_to_dir(&cli.out_dir)?;
            let mut all_pass = true;
            for row in &report.rows {
                println!(
                    "{} {}: value={:.6e} tolerance={:.6e}",
                    if row.pass { "PASS" } else { "FAIL" },
                    row.check,
                    row.value,
                    row.tolerance
                );
                all_pass &= row.pass;
            }
            println!("theory suite -> {}", path.display());
            Ok(all_pass)
        }
    }
}

fn parse_phase(s: &str) -> phaselift_core::Result<Complex64> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(phaselift_core::Error::InvalidInput(format!(
            "phase must be \"re,im\", got `{s}`"
        )));
    }
    let re: f64 = parts[0].trim().parse().map_err(|_| {
        phaselift_core::Error::InvalidInput(format!("bad phase component `{}`", parts[0]))
    })?;
    let im: f64 = parts[1].trim().parse().map_err(|_| {
        phaselift_core::Error::InvalidInput(format!("bad phase component `{}`", parts[1]))
    })?;
    Ok(Complex64::new(re, im))
}

fn parse_kind(name: &str, phase: Option<&str>) -> phaselift_core::Result<EnsembleKind> {
    Ok(match name {
        "gaussian_real" => EnsembleKind::GaussianReal,
        "gaussian_complex" => EnsembleKind::GaussianComplex,
        "rademacher" => EnsembleKind::Rademacher,
        "steinhaus" => EnsembleKind::Steinhaus,
        "complex_bernoulli" => EnsembleKind::ComplexBernoulli,
        "rotated_real" => EnsembleKind::RotatedReal {
            phase: match phase {
                Some(p) => parse_phase(p)?,
                None => Complex64::new(0.0, 1.0),
            },
        },
        other => {
            return Err(phaselift_core::Error::InvalidInput(format!(
                "unknown ensemble kind `{other}`"
            )))
        }
    })
}

fn parse_signal_class(name: &str) -> phaselift_core::Result<SignalClass> {
    Ok(match name {
        "flat" => SignalClass::Flat,
        "sparse" => SignalClass::Sparse,
        "random_complex" => SignalClass::RandomComplex,
        "random_real" => SignalClass::RandomReal,
        other => {
            return Err(phaselift_core::Error::InvalidInput(format!(
                "unknown signal class `{other}`"
            )))
        }
    })
}

fn cmd_gen(args: &GenArgs, seed: u64) -> phaselift_core::Result<()> {
    let kind = parse_kind(&args.ensemble, args.phase.as_deref())?;
    let spec = EnsembleSpec::new(kind, derive_key(seed, &[0x6E6]))?;
    let class = parse_signal_class(&args.signal)?;
    let x0 = class.generate(
        args.n,
        derive_key(seed, &[0x6E7]),
        spec.is_conjugate_ambiguous(),
    );
    let noise = phaselift_core::experiments::uniform_noise(
        args.m,
        args.noise_level,
        derive_key(seed, &[0x6E8]),
    );
    let matrix = spec.sample_matrix(args.m, args.n)?;
    let ms = MeasurementSet::forward_intensities(matrix, &x0, &noise)?;
    io::save_json(&args.out, &ms)?;
    println!(
        "wrote {} measurements of a {} '{}' signal (n={}) -> {}",
        args.m,
        spec.kind().name(),
        args.signal,
        args.n,
        args.out.display()
    );
    if let Some(path) = &args.x0_out {
        io::save_json(path, &io::vector_to_json(&x0))?;
        println!("wrote signal -> {}", path.display());
    }
    Ok(())
}

fn cmd_solve(args: &SolveArgs) -> phaselift_core::Result<()> {
    let ms: MeasurementSet = io::load_json(&args.input)?;
    let cfg = SolverConfig {
        max_iters: args.max_iters,
        tol: args.tol,
        step_ratio: args.step_ratio,
        real_restriction: args.real_restriction,
        ..SolverConfig::default()
    };
    let result = solve_phaselift(&ms, &cfg)?;
    println!(
        "objective={:.6e} iterations={} converged={} primal_residual={:.3e} dual_residual={:.3e}",
        result.objective,
        result.iterations,
        result.converged,
        result.primal_residual,
        result.dual_residual
    );
    let errors = match &args.x0 {
        Some(path) => {
            let value: serde_json::Value = io::load_json(path)?;
            let x0 = io::vector_from_json(&value)?;
            let err = recovery_error(&result.x_hat, &x0)?;
            println!(
                "schatten1_err={:.6e} hs_err={:.6e} signal_err={:.6e} conj_signal_err={:.6e}",
                err.schatten1, err.hs, err.signal, err.conj_signal
            );
            Some(err)
        }
        None => None,
    };
    if let Some(out) = &args.out {
        let payload = serde_json::json!({
            "result": result,
            "recovery_error": errors,
        });
        io::save_json(out, &payload)?;
        println!("wrote solve result -> {}", out.display());
    }
    Ok(())
}

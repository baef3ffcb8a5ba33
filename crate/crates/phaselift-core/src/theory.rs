//! Executable checks of the moment identities and concentration
//! quantities driving the recovery analysis: the exact second-moment
//! formula for lifted quadratic forms (with an enumeration oracle),
//! small-ball probability estimates, the Paley-Zygmund lower bound, the
//! rank-1 l1 isometry probe, operator-norm scaling of Rademacher-signed
//! lift sums, and upper-bound probes of the minimum conic ratio.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::cmatrix::{conj_dot, l1_norm};
use crate::cone::{
    diagnose, sample_admissible_direction, unimodular_witness, ConeDiagnostics, ConeParams,
    SampleStyle,
};
use crate::ensembles::{balanced_sqrt_half_pair, EnsembleKind, EnsembleSpec};
use crate::error::{Error, Result};
use crate::hermitian::HermitianMatrix;
use crate::lifted::MeasurementSet;
use crate::rng::{derive_key, CounterRng};

pub type Complex64 = Complex<f64>;

const SMALL_BALL_STREAM: u64 = 0x5B01;
const PZ_STREAM: u64 = 0x5B02;
const RIP_STREAM: u64 = 0x5B03;

/// Small-ball estimation parameters.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SmallBallConfig {
    /// Level `u > 0` in `P(|<xi xi*, Z>| >= u)`.
    pub u: f64,
    /// Monte Carlo trials (at least 10^3).
    pub trials: usize,
    /// Deviation parameter, recorded for reporting only.
    pub t: f64,
}

impl SmallBallConfig {
    fn validate(&self) -> Result<()> {
        if self.u.is_nan() || self.u <= 0.0 {
            return Err(Error::Precondition(
                "small-ball level u must be positive".into(),
            ));
        }
        if self.trials < 1000 {
            return Err(Error::Precondition(format!(
                "small-ball estimation needs at least 10^3 trials, got {}",
                self.trials
            )));
        }
        Ok(())
    }
}

/// Exact second moment of the lifted quadratic form:
/// `E |xi* A xi|^2 = (Tr A)^2 + (E|xi|^4 - 1) sum_i A_ii^2
///  + (1 + |E xi^2|^2) sum_{i != j} Re(A_ij)^2
///  + (1 - |E xi^2|^2) sum_{i != j} Im(A_ij)^2`.
pub fn quadratic_form_second_moment(
    a: &HermitianMatrix,
    moments: &crate::ensembles::MomentProfile,
) -> f64 {
    let n = a.dim();
    let tr = a.trace();
    let mut diag_sq = 0.0;
    let mut off_re_sq = 0.0;
    let mut off_im_sq = 0.0;
    for j in 0..n {
        let d = a.get(j, j).re;
        diag_sq += d * d;
        for k in 0..n {
            if k == j {
                continue;
            }
            let z = a.get(j, k);
            off_re_sq += z.re * z.re;
            off_im_sq += z.im * z.im;
        }
    }
    let m2_sq = moments.second_moment.norm_sqr();
    tr * tr
        + (moments.fourth_abs_moment - 1.0) * diag_sq
        + (1.0 + m2_sq) * off_re_sq
        + (1.0 - m2_sq) * off_im_sq
}

/// Independent oracle for the second moment: exact expectation by
/// enumeration over the product support.
///
/// Supported: Rademacher (2^n atoms) and complex Bernoulli (4^n) for
/// n <= 8, Steinhaus discretized to 8 phases (8^n) for n <= 5. The
/// 8-point phase set matches every moment entering the formula exactly.
pub fn quadratic_form_second_moment_enumerated(
    a: &HermitianMatrix,
    spec: &EnsembleSpec,
) -> Result<f64> {
    let n = a.dim();
    let atoms: Vec<Complex64> = match spec.kind() {
        EnsembleKind::Rademacher => {
            vec![Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)]
        }
        EnsembleKind::ComplexBernoulli => {
            let (p, q) = balanced_sqrt_half_pair();
            vec![
                Complex64::new(p, q),
                Complex64::new(p, -q),
                Complex64::new(-p, q),
                Complex64::new(-p, -q),
            ]
        }
        EnsembleKind::Steinhaus => {
            let a = std::f64::consts::FRAC_1_SQRT_2;
            vec![
                Complex64::new(1.0, 0.0),
                Complex64::new(a, a),
                Complex64::new(0.0, 1.0),
                Complex64::new(-a, a),
                Complex64::new(-1.0, 0.0),
                Complex64::new(-a, -a),
                Complex64::new(0.0, -1.0),
                Complex64::new(a, -a),
            ]
        }
        other => {
            return Err(Error::InvalidInput(format!(
                "enumeration oracle does not support `{}`",
                other.name()
            )))
        }
    };
    let k = atoms.len();
    let max_n = if k == 8 { 5 } else { 8 };
    if n > max_n {
        return Err(Error::InvalidInput(format!(
            "enumeration over {k}^n atoms is limited to n <= {max_n}, got n = {n}"
        )));
    }
    let total = k.pow(n as u32);
    let mut xi = vec![Complex64::new(0.0, 0.0); n];
    let mut acc = 0.0;
    for idx in 0..total {
        let mut rest = idx;
        for slot in xi.iter_mut() {
            *slot = atoms[rest % k];
            rest /= k;
        }
        let q = a.quadratic_form(&xi);
        acc += q * q;
    }
    Ok(acc / total as f64)
}

/// Small-ball frequency estimate for a fixed matrix.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SmallBallEstimate {
    /// Monte Carlo frequency of `|xi* A xi| >= u`.
    pub probability: f64,
    /// Wilson interval half-width at 95%.
    pub wilson_half_width: f64,
    pub u: f64,
    pub trials: usize,
}

/// Estimates `P(|xi* A xi| >= u)` for a single fixed `A` (the caller
/// normalizes `||A||_HS` when comparing against cone-level quantities).
pub fn estimate_small_ball(
    a: &HermitianMatrix,
    spec: &EnsembleSpec,
    cfg: &SmallBallConfig,
) -> Result<SmallBallEstimate> {
    cfg.validate()?;
    let n = a.dim();
    let mut hits = 0usize;
    for trial in 0..cfg.trials {
        let xi = spec.sample_vector(SMALL_BALL_STREAM, trial as u64, n);
        if a.quadratic_form(&xi).abs() >= cfg.u {
            hits += 1;
        }
    }
    let trials = cfg.trials as f64;
    let p_hat = hits as f64 / trials;
    let z = 1.96f64;
    let denom = 1.0 + z * z / trials;
    let half =
        z * (p_hat * (1.0 - p_hat) / trials + z * z / (4.0 * trials * trials)).sqrt() / denom;
    Ok(SmallBallEstimate {
        probability: p_hat,
        wilson_half_width: half,
        u: cfg.u,
        trials: cfg.trials,
    })
}

/// Empirical Paley-Zygmund comparison for `W = |xi* A xi|^2`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct PaleyZygmundReport {
    /// Monte Carlo estimate of `P(W >= E W / 2)`.
    pub lhs_prob: f64,
    /// `(E W)^2 / (4 E W^2)` with the exact numerator and empirical
    /// denominator.
    pub pz_ratio: f64,
    /// Combined standard error of `lhs_prob - pz_ratio`.
    pub stderr: f64,
    /// Exact `E W` from the second-moment formula.
    pub second_moment: f64,
    /// Empirical `E W^2` (the fourth moment of the form).
    pub fourth_moment: f64,
    /// Degenerate input: the quadratic form vanishes in second moment.
    pub vacuous: bool,
}

/// Checks the constant-free Paley-Zygmund inequality
/// `P(W >= E W / 2) >= (E W)^2 / (4 E W^2)` empirically.
pub fn paley_zygmund_lower(
    a: &HermitianMatrix,
    moments: &crate::ensembles::MomentProfile,
    spec: &EnsembleSpec,
    trials: usize,
) -> Result<PaleyZygmundReport> {
    if trials < 10_000 {
        return Err(Error::Precondition(format!(
            "Paley-Zygmund estimation needs at least 10^4 trials, got {trials}"
        )));
    }
    let second = quadratic_form_second_moment(a, moments);
    let hs = a.hs_norm();
    if second <= 1e-12 * hs.powi(4).max(1e-300) {
        return Ok(PaleyZygmundReport {
            lhs_prob: 0.0,
            pz_ratio: 0.0,
            stderr: 0.0,
            second_moment: second,
            fourth_moment: 0.0,
            vacuous: true,
        });
    }
    let n = a.dim();
    let threshold = second / 2.0;
    let mut hits = 0usize;
    let mut sum_w2 = 0.0;
    let mut sum_w4 = 0.0;
    for trial in 0..trials {
        let xi = spec.sample_vector(PZ_STREAM, trial as u64, n);
        let q = a.quadratic_form(&xi);
        let w = q * q;
        if w >= threshold {
            hits += 1;
        }
        sum_w2 += w * w;
        sum_w4 += (w * w) * (w * w);
    }
    let nt = trials as f64;
    let p_hat = hits as f64 / nt;
    let fourth = sum_w2 / nt;
    let var_fourth = (sum_w4 / nt - fourth * fourth).max(0.0);
    let se_fourth = (var_fourth / nt).sqrt();
    let pz_ratio = second * second / (4.0 * fourth);
    let se_ratio = second * second / (4.0 * fourth * fourth) * se_fourth;
    let se_lhs = (p_hat * (1.0 - p_hat) / nt).sqrt();
    Ok(PaleyZygmundReport {
        lhs_prob: p_hat,
        pz_ratio,
        stderr: (se_lhs * se_lhs + se_ratio * se_ratio).sqrt() + crate::ensembles::STDERR_FLOOR,
        second_moment: second,
        fourth_moment: fourth,
        vacuous: false,
    })
}

/// Max observed deviation of the normalized rank-1 image from isometry.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct RipReport {
    /// `max over probes |(1/m) ||A(z z*)||_1 / ||z||^2 - 1|`.
    pub delta_hat: f64,
    pub probes: usize,
    pub m: usize,
    pub n: usize,
}

/// Probes the rank-1 l1 isometry `(1/m) ||A(z z*)||_1 ~ ||z||^2` with
/// unit-sphere samples; uses `||A(z z*)||_1 = sum_i |<xi_i, z>|^2`.
pub fn rank1_rip_probe(
    spec: &EnsembleSpec,
    m: usize,
    n: usize,
    probes: usize,
) -> Result<RipReport> {
    if probes < 100 {
        return Err(Error::Precondition(format!(
            "the isometry probe needs at least 10^2 probe vectors, got {probes}"
        )));
    }
    let matrix = spec.sample_matrix(m, n)?;
    let mut delta_hat = 0.0f64;
    for p in 0..probes {
        let mut rng = CounterRng::from_key(spec.seed(), &[RIP_STREAM, p as u64]);
        let mut z: Vec<Complex64> = (0..n)
            .map(|_| {
                let (a, b) = rng.next_gaussian_pair();
                Complex64::new(a, b)
            })
            .collect();
        let norm = crate::cmatrix::vec_norm(&z);
        for v in &mut z {
            *v /= norm;
        }
        let mut sum = 0.0;
        for i in 0..m {
            sum += conj_dot(matrix.row(i), &z).norm_sqr();
        }
        let ratio = sum / m as f64;
        delta_hat = delta_hat.max((ratio - 1.0).abs());
    }
    Ok(RipReport {
        delta_hat,
        probes,
        m,
        n,
    })
}

/// One grid cell of the signed-sum operator-norm scaling table.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct OpnormScalingRow {
    pub m: usize,
    pub n: usize,
    /// Monte Carlo mean of `|| sum_i eps_i xi_i xi_i* ||`.
    pub mean_opnorm: f64,
    /// `mean_opnorm / sqrt(m n)` (0 when the product is 0).
    pub ratio: f64,
}

/// Estimates `E || sum_i eps_i xi_i xi_i* ||` over a grid of `(m, n)`
/// pairs, with independent Rademacher signs, and reports the
/// `sqrt(m n)`-normalized ratios.
pub fn rademacher_opnorm_scaling(
    spec: &EnsembleSpec,
    grid: &[(usize, usize)],
    reps: usize,
) -> Result<Vec<OpnormScalingRow>> {
    if reps < 10 {
        return Err(Error::Precondition(format!(
            "operator-norm scaling needs at least 10 repetitions, got {reps}"
        )));
    }
    let mut rows = Vec::with_capacity(grid.len());
    for (cell, &(m, n)) in grid.iter().enumerate() {
        if n == 0 {
            return Err(Error::InvalidInput("grid requires n >= 1".into()));
        }
        if m == 0 {
            rows.push(OpnormScalingRow {
                m,
                n,
                mean_opnorm: 0.0,
                ratio: 0.0,
            });
            continue;
        }
        let mut acc = 0.0;
        for rep in 0..reps {
            let sub = spec.with_seed(derive_key(spec.seed(), &[0x09C1, cell as u64, rep as u64]));
            let matrix = sub.sample_matrix(m, n)?;
            let ms = MeasurementSet::new(matrix, vec![0.0; m], vec![0.0; m])?;
            let mut rng = CounterRng::from_key(sub.seed(), &[0x09C2]);
            let signs: Vec<f64> = (0..m).map(|_| rng.next_sign()).collect();
            let s = ms.adjoint(&signs)?;
            acc += s.norms()?.operator;
        }
        let mean = acc / reps as f64;
        rows.push(OpnormScalingRow {
            m,
            n,
            mean_opnorm: mean,
            ratio: mean / ((m * n) as f64).sqrt(),
        });
    }
    Ok(rows)
}

/// Upper-bound probe of the minimum conic ratio.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConicProbeReport {
    /// Minimum of `||A(Z)||_1 / ||Z||_1` over the sampled directions;
    /// an upper bound on the true conic infimum.
    pub min_ratio: f64,
    /// The same normalized by `m`.
    pub min_ratio_over_m: f64,
    /// Diagnostics of the minimizing direction.
    pub argmin: ConeDiagnostics,
    pub samples: usize,
}

/// Samples admissible directions (all construction styles, seeded
/// witnesses) and reports the smallest observed `||A(Z)||_1 / ||Z||_1`.
///
/// Witnesses are spectrally flat; when `params.mu >= 1` sparse basis
/// witnesses are allowed too and the canonical kernel candidate
/// `e2 e2* - e1 e1*` joins the probe set.
pub fn probe_min_conic_ratio(
    spec: &EnsembleSpec,
    m: usize,
    n: usize,
    params: &ConeParams,
    samples: usize,
) -> Result<ConicProbeReport> {
    if samples < 100 {
        return Err(Error::Precondition(format!(
            "the conic probe needs at least 10^2 samples, got {samples}"
        )));
    }
    if n < 2 {
        return Err(Error::InvalidInput("the conic probe needs n >= 2".into()));
    }
    let matrix = spec.sample_matrix(m, n)?;
    let ms = MeasurementSet::new(matrix, vec![0.0; m], vec![0.0; m])?;
    let allow_sparse = params.mu >= 1.0;

    let mut best: Option<(f64, HermitianMatrix, Vec<Complex64>)> = None;
    let mut consider = |z: HermitianMatrix, witness: Vec<Complex64>| -> Result<()> {
        if z.hs_norm() == 0.0 {
            return Ok(());
        }
        let schatten1 = z.norms()?.schatten1;
        let image = l1_norm(&ms.apply(&z)?);
        let ratio = image / schatten1;
        if best.as_ref().is_none_or(|(r, _, _)| ratio < *r) {
            best = Some((ratio, z, witness));
        }
        Ok(())
    };

    if allow_sparse {
        // Canonical kernel candidate witnessed by e1.
        let mut d = vec![0.0; n];
        d[0] = -1.0;
        d[1] = 1.0;
        let mut e1 = vec![Complex64::new(0.0, 0.0); n];
        e1[0] = Complex64::new(1.0, 0.0);
        consider(HermitianMatrix::from_diag(&d), e1)?;
    }
    for s in 0..samples {
        let style = SampleStyle::ALL[s % 3];
        let wseed = derive_key(spec.seed(), &[0xC0DE, s as u64]);
        let witness = if allow_sparse && s % 5 == 4 {
            let mut e = vec![Complex64::new(0.0, 0.0); n];
            e[s % n] = Complex64::new(1.0, 0.0);
            e
        } else {
            unimodular_witness(n, wseed)
        };
        let z = sample_admissible_direction(&witness, wseed, style)?;
        consider(z, witness)?;
    }

    let (min_ratio, z, witness) = best.expect("at least one probe");
    let argmin = diagnose(&z, params, Some(&witness))?;
    Ok(ConicProbeReport {
        min_ratio,
        min_ratio_over_m: min_ratio / m as f64,
        argmin,
        samples,
    })
}

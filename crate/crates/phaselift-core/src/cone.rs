//! Cone of admissible directions: sampling, classification, and the norm
//! bounds satisfied by the dominant-negative-eigenvalue class.
//!
//! A Hermitian `Z` is an admissible direction when `x0 x0* + t Z` is PSD
//! for some witness signal `x0` and some `t > 0`. Admissible directions
//! have at most one strictly negative eigenvalue, and split into class M1
//! (`-lambda_n <= alpha * sum_{i<n} lambda_i`) and its strict complement
//! M2, whose members are approximately low rank and carry little mass on
//! the diagonal when the witness is spectrally flat.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::cmatrix::vec_norm;
use crate::error::{Error, Result};
use crate::hermitian::HermitianMatrix;
use crate::rng::CounterRng;

pub type Complex64 = Complex<f64>;

/// Eigenvalues below `-NEGATIVE_EIG_REL_TOL * ||Z||_HS` count as strictly
/// negative; separates true negativity from eigensolver round-off.
pub const NEGATIVE_EIG_REL_TOL: f64 = 1e-9;

/// Flatness bound and partition threshold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConeParams {
    /// Peak-to-average bound defining the witness class.
    pub mu: f64,
    /// Partition threshold between M1 and M2.
    pub alpha: f64,
}

impl Default for ConeParams {
    fn default() -> Self {
        Self {
            mu: 1.0 / 81.0,
            alpha: 4.0 / 5.0,
        }
    }
}

/// Partition class of an admissible direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConeClass {
    /// Negative part dominated: `-lambda_n <= alpha * sum_{i<n} lambda_i`.
    M1,
    /// Dominant negative eigenvalue (strict complement of M1).
    M2,
    /// Two or more strictly negative eigenvalues certify that the matrix
    /// is not an admissible direction for any witness.
    NotAdmissibleWitnessed,
}

/// Per-matrix cone facts.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConeDiagnostics {
    pub negative_eigencount: usize,
    pub cone_class: ConeClass,
    /// `||Z||_1 / ||Z||_HS`.
    pub trace_hs_ratio: f64,
    /// `||diag Z||_HS / ||Z||_HS`.
    pub diag_hs_ratio: f64,
    /// Witness used in the construction, when known.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness_x0: Option<Vec<[f64; 2]>>,
}

/// Construction style for admissible-direction samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleStyle {
    /// `Z = W` for a random PSD `W`; admissible at any `t`.
    PsdMove,
    /// `Z = w w* - x0 x0*`; `x0 x0* + Z` is the PSD matrix `w w*`.
    Rank1Descent,
    /// `Z = s W - x0 x0*` for random PSD `W` and scale `s`.
    Mixed,
}

impl SampleStyle {
    pub const ALL: [SampleStyle; 3] = [
        SampleStyle::PsdMove,
        SampleStyle::Rank1Descent,
        SampleStyle::Mixed,
    ];
}

/// Peak-to-average power ratio `||x||_inf / ||x||`.
pub fn peak_to_average(x: &[Complex64]) -> f64 {
    let peak = x.iter().map(|z| z.norm()).fold(0.0, f64::max);
    peak / vec_norm(x)
}

/// Whether `x` lies in the flatness class with parameter `mu`.
pub fn is_flat(x: &[Complex64], mu: f64) -> bool {
    !x.is_empty() && vec_norm(x) > 0.0 && peak_to_average(x) <= mu
}

/// Random unimodular witness: entries `exp(i theta_j) / sqrt(n)`, the
/// flattest available profile (`peak_to_average = 1/sqrt(n)`).
pub fn unimodular_witness(n: usize, seed: u64) -> Vec<Complex64> {
    let mut rng = CounterRng::from_key(seed, &[0x57A7, n as u64]);
    let scale = 1.0 / (n as f64).sqrt();
    (0..n)
        .map(|_| Complex64::from_polar(scale, std::f64::consts::TAU * rng.next_f64()))
        .collect()
}

/// Random real sign-flat witness: entries `+-1/sqrt(n)`.
pub fn sign_flat_witness(n: usize, seed: u64) -> Vec<Complex64> {
    let mut rng = CounterRng::from_key(seed, &[0x57A8, n as u64]);
    let scale = 1.0 / (n as f64).sqrt();
    (0..n)
        .map(|_| Complex64::new(rng.next_sign() * scale, 0.0))
        .collect()
}

fn random_unit(n: usize, rng: &mut CounterRng) -> Vec<Complex64> {
    let mut v: Vec<Complex64> = (0..n)
        .map(|_| {
            let (a, b) = rng.next_gaussian_pair();
            Complex64::new(a, b)
        })
        .collect();
    let norm = vec_norm(&v);
    for z in &mut v {
        *z /= norm;
    }
    v
}

fn random_psd(n: usize, rng: &mut CounterRng) -> HermitianMatrix {
    let mut g = vec![Complex64::new(0.0, 0.0); n * n];
    for z in &mut g {
        let (a, b) = rng.next_gaussian_pair();
        *z = Complex64::new(a, b);
    }
    // W = G G*.
    let mut data = vec![Complex64::new(0.0, 0.0); n * n];
    for j in 0..n {
        for k in j..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for l in 0..n {
                acc += g[j * n + l] * g[k * n + l].conj();
            }
            data[j * n + k] = acc;
        }
    }
    for j in 0..n {
        data[j * n + j] = Complex64::new(data[j * n + j].re, 0.0);
        for k in (j + 1)..n {
            data[k * n + j] = data[j * n + k].conj();
        }
    }
    HermitianMatrix::from_parts_unchecked(n, data)
}

/// Draws an admissible direction witnessed by `x0`.
///
/// The construction guarantees `x0 x0* + Z` is PSD (with the witness
/// normalized), which is verified to `-1e-10` on the smallest eigenvalue
/// before returning.
pub fn sample_admissible_direction(
    x0: &[Complex64],
    seed: u64,
    style: SampleStyle,
) -> Result<HermitianMatrix> {
    let n = x0.len();
    let norm = vec_norm(x0);
    if n == 0 || norm == 0.0 {
        return Err(Error::InvalidInput(
            "admissible directions require a nonzero witness".into(),
        ));
    }
    let unit: Vec<Complex64> = x0.iter().map(|z| z / norm).collect();
    let lift = HermitianMatrix::outer(&unit);
    let style_tag = match style {
        SampleStyle::PsdMove => 1u64,
        SampleStyle::Rank1Descent => 2,
        SampleStyle::Mixed => 3,
    };
    let mut rng = CounterRng::from_key(seed, &[0xAD31, style_tag, n as u64]);
    let z = match style {
        SampleStyle::PsdMove => {
            let w = random_psd(n, &mut rng);
            w.scale(1.0 / w.hs_norm().max(1e-300))
        }
        SampleStyle::Rank1Descent => {
            let w = random_unit(n, &mut rng);
            HermitianMatrix::outer(&w).sub(&lift)
        }
        SampleStyle::Mixed => {
            let w = random_psd(n, &mut rng);
            let s = (0.1 + 3.9 * rng.next_f64()) / w.trace().max(1e-300);
            w.scale(s).sub(&lift)
        }
    };
    // PSD check at the construction's t (t = 1 for the unnormalized Z).
    let shifted = lift.add(&z);
    let dec = shifted.eig()?;
    let min_eig = *dec.eigenvalues.last().unwrap();
    if min_eig < -1e-10 * shifted.hs_norm().max(1.0) {
        return Err(Error::Numerical(format!(
            "admissible construction failed its PSD check (min eigenvalue {min_eig:.3e})"
        )));
    }
    Ok(z)
}

/// Classifies a direction and reports its cone diagnostics.
pub fn diagnose(
    z: &HermitianMatrix,
    params: &ConeParams,
    witness_x0: Option<&[Complex64]>,
) -> Result<ConeDiagnostics> {
    let hs = z.hs_norm();
    if hs == 0.0 {
        return Err(Error::InvalidInput(
            "cone diagnostics are undefined for the zero matrix".into(),
        ));
    }
    let dec = z.eig()?;
    let neg_threshold = -NEGATIVE_EIG_REL_TOL * hs;
    let negative_eigencount = dec
        .eigenvalues
        .iter()
        .filter(|&&l| l < neg_threshold)
        .count();
    let n = dec.eigenvalues.len();
    let lam_n = dec.eigenvalues[n - 1].min(0.0);
    let sum_top: f64 = dec.eigenvalues[..n - 1].iter().sum();
    let cone_class = if negative_eigencount >= 2 {
        ConeClass::NotAdmissibleWitnessed
    } else if -lam_n <= params.alpha * sum_top {
        ConeClass::M1
    } else {
        ConeClass::M2
    };
    let schatten1: f64 = dec.eigenvalues.iter().map(|l| l.abs()).sum();
    Ok(ConeDiagnostics {
        negative_eigencount,
        cone_class,
        trace_hs_ratio: schatten1 / hs,
        diag_hs_ratio: z.diag_hs_norm() / hs,
        witness_x0: witness_x0.map(|w| w.iter().map(|z| [z.re, z.im]).collect()),
    })
}

/// The two norm bounds satisfied on class M2.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct M2BoundsReport {
    /// `||Z||_1 <= (1 + 1/alpha) ||Z||_HS`.
    pub bound1_ok: bool,
    /// `||diag Z||_HS <= (sqrt(1 - 1/(1 + 1/alpha)^2) + 3 mu) ||Z||_HS`.
    pub bound2_ok: bool,
    pub bound1_slack: f64,
    pub bound2_slack: f64,
    pub bound1_threshold: f64,
    pub bound2_threshold: f64,
}

/// Evaluates the M2 norm bounds; the input must classify as M2.
pub fn verify_m2_norm_bounds(z: &HermitianMatrix, params: &ConeParams) -> Result<M2BoundsReport> {
    let diag = diagnose(z, params, None)?;
    if diag.cone_class != ConeClass::M2 {
        return Err(Error::Precondition(format!(
            "the norm bounds apply to class M2 matrices; got {:?}",
            diag.cone_class
        )));
    }
    let inv_alpha = 1.0 / params.alpha;
    let bound1_threshold = 1.0 + inv_alpha;
    let bound2_threshold =
        (1.0 - 1.0 / ((1.0 + inv_alpha) * (1.0 + inv_alpha))).sqrt() + 3.0 * params.mu;
    let bound1_slack = bound1_threshold - diag.trace_hs_ratio;
    let bound2_slack = bound2_threshold - diag.diag_hs_ratio;
    Ok(M2BoundsReport {
        bound1_ok: bound1_slack >= 0.0,
        bound2_ok: bound2_slack >= 0.0,
        bound1_slack,
        bound2_slack,
        bound1_threshold,
        bound2_threshold,
    })
}

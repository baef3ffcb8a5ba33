//! Measurement ensembles: seeded samplers and moment profiles.
//!
//! Every kind is normalized to entrywise mean 0 and variance
//! `E|xi|^2 = 1`. Entries of the bounded kinds (Rademacher, Steinhaus,
//! complex Bernoulli, rotated real) are snapped onto the set of floating
//! point numbers whose computed squared modulus is exactly `1.0`, so
//! identities such as `A(I) = n` and the indistinguishability of
//! ambiguous signal pairs hold bitwise, not just to rounding error.

use num_complex::Complex;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cmatrix::ComplexMatrix;
use crate::error::{Error, Result};
use crate::rng::CounterRng;

pub type Complex64 = Complex<f64>;

/// Floating-point noise floor added to reported standard errors.
///
/// Constant-modulus kinds have zero sampling error; evaluation rounding
/// still perturbs derived quantities at this scale.
pub const STDERR_FLOOR: f64 = 1e-14;

/// The measurement distributions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EnsembleKind {
    /// Standard real Gaussian N(0, 1).
    GaussianReal,
    /// Standard complex Gaussian, `(g1 + i g2)/sqrt(2)`.
    GaussianComplex,
    /// Uniform on {+1, -1}.
    Rademacher,
    /// Uniform on the complex unit circle.
    Steinhaus,
    /// `(e1 + i e2)/sqrt(2)` with independent signs.
    ComplexBernoulli,
    /// `lambda * rho` with a fixed unit-modulus phase and a Rademacher
    /// sign; realizes the conjugate-ambiguous family.
    RotatedReal { phase: Complex64 },
}

impl EnsembleKind {
    pub fn name(&self) -> &'static str {
        match self {
            EnsembleKind::GaussianReal => "gaussian_real",
            EnsembleKind::GaussianComplex => "gaussian_complex",
            EnsembleKind::Rademacher => "rademacher",
            EnsembleKind::Steinhaus => "steinhaus",
            EnsembleKind::ComplexBernoulli => "complex_bernoulli",
            EnsembleKind::RotatedReal { .. } => "rotated_real",
        }
    }

    fn from_name(name: &str, phase: Option<Complex64>) -> Result<Self> {
        match name {
            "gaussian_real" => Ok(EnsembleKind::GaussianReal),
            "gaussian_complex" => Ok(EnsembleKind::GaussianComplex),
            "rademacher" => Ok(EnsembleKind::Rademacher),
            "steinhaus" => Ok(EnsembleKind::Steinhaus),
            "complex_bernoulli" => Ok(EnsembleKind::ComplexBernoulli),
            "rotated_real" => Ok(EnsembleKind::RotatedReal {
                phase: phase.unwrap_or(Complex64::new(0.0, 1.0)),
            }),
            other => Err(Error::InvalidInput(format!(
                "unknown ensemble kind `{other}`"
            ))),
        }
    }
}

/// A measurement distribution plus the seed of its sample stream.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnsembleSpec {
    kind: EnsembleKind,
    seed: u64,
}

/// Analytic or estimated moments of a single entry `xi_1`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct MomentProfile {
    /// `E|xi_1|^2`; normalized to 1 for every kind.
    pub variance: f64,
    /// `E[xi_1^2]` (complex).
    #[serde(with = "crate::io::complex_pair")]
    pub second_moment: Complex64,
    /// `E|xi_1|^4`.
    pub fourth_abs_moment: f64,
    /// `1 - |E[xi_1^2]|^2`, the non-degeneracy margin.
    pub beta: f64,
    /// psi_2 parameter: `inf { t > 0 : E exp(|xi|^2/t^2) <= 2 }`.
    pub k_psi2: f64,
}

/// Monte Carlo moment estimates with standard errors.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct EmpiricalMoments {
    pub profile: MomentProfile,
    pub stderr_variance: f64,
    /// Combined standard error of the complex second moment.
    pub stderr_second_moment: f64,
    pub stderr_fourth: f64,
    pub samples: usize,
}

impl EnsembleSpec {
    /// Validates the kind (unit-modulus phase for `rotated_real`, snapped
    /// onto the exact fp unit circle) and fixes the seed.
    pub fn new(kind: EnsembleKind, seed: u64) -> Result<Self> {
        let kind = match kind {
            EnsembleKind::RotatedReal { phase } => {
                let norm = phase.norm();
                if !(norm.is_finite()) || (norm - 1.0).abs() > 1e-9 {
                    return Err(Error::InvalidInput(format!(
                        "rotated_real phase must have unit modulus, got |phase| = {norm}"
                    )));
                }
                let snapped = unit_fixup(phase.re, phase.im).ok_or_else(|| {
                    Error::Numerical("could not snap phase onto the unit circle".into())
                })?;
                EnsembleKind::RotatedReal { phase: snapped }
            }
            k => k,
        };
        Ok(Self { kind, seed })
    }

    pub fn kind(&self) -> EnsembleKind {
        self.kind
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        Self {
            kind: self.kind,
            seed,
        }
    }

    /// Whether `x0` and `conj(x0)` always produce identical intensities
    /// (`|E[xi^2]| = 1`, i.e. beta = 0).
    pub fn is_conjugate_ambiguous(&self) -> bool {
        matches!(
            self.kind,
            EnsembleKind::GaussianReal
                | EnsembleKind::Rademacher
                | EnsembleKind::RotatedReal { .. }
        )
    }

    /// Entry `(row, col)` of the measurement matrix for this spec.
    ///
    /// Each entry has its own counter-based stream, so the value is
    /// independent of sampling order and thread count.
    pub fn sample_entry(&self, row: u64, col: u64) -> Complex64 {
        let mut rng = CounterRng::from_key(self.seed, &[row, col]);
        self.entry_from_rng(&mut rng)
    }

    fn entry_from_rng(&self, rng: &mut CounterRng) -> Complex64 {
        match self.kind {
            EnsembleKind::GaussianReal => {
                let (g, _) = rng.next_gaussian_pair();
                Complex64::new(g, 0.0)
            }
            EnsembleKind::GaussianComplex => {
                let (g1, g2) = rng.next_gaussian_pair();
                Complex64::new(
                    g1 * std::f64::consts::FRAC_1_SQRT_2,
                    g2 * std::f64::consts::FRAC_1_SQRT_2,
                )
            }
            EnsembleKind::Rademacher => Complex64::new(rng.next_sign(), 0.0),
            EnsembleKind::Steinhaus => {
                // Unit-circle point with computed |xi|^2 exactly 1.0.
                for _ in 0..32 {
                    let theta = std::f64::consts::TAU * rng.next_f64();
                    if let Some(z) = unit_fixup(theta.cos(), theta.sin()) {
                        return z;
                    }
                }
                Complex64::new(1.0, 0.0)
            }
            EnsembleKind::ComplexBernoulli => {
                let (a, b) = balanced_sqrt_half_pair();
                Complex64::new(rng.next_sign() * a, rng.next_sign() * b)
            }
            EnsembleKind::RotatedReal { phase } => phase * rng.next_sign(),
        }
    }

    /// Single random vector from a dedicated stream, for Monte Carlo
    /// loops that should not alias the matrix entry streams.
    pub fn sample_vector(&self, stream_tag: u64, index: u64, n: usize) -> Vec<Complex64> {
        let mut rng = CounterRng::from_key(self.seed, &[stream_tag, index]);
        (0..n).map(|_| self.entry_from_rng(&mut rng)).collect()
    }

    /// `m x n` matrix with i.i.d. entries; deterministic in
    /// `(seed, m, n)` and identical across thread counts.
    pub fn sample_matrix(&self, m: usize, n: usize) -> Result<ComplexMatrix> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidInput(format!(
                "measurement matrix requires m >= 1 and n >= 1, got {m}x{n}"
            )));
        }
        let mut out = ComplexMatrix::zeros(m, n);
        for r in 0..m {
            for c in 0..n {
                out.set(r, c, self.sample_entry(r as u64, c as u64));
            }
        }
        Ok(out)
    }

    /// Closed-form moment profile of the entry distribution.
    pub fn analytic_moments(&self) -> MomentProfile {
        let bounded_k = 1.0 / std::f64::consts::LN_2.sqrt();
        match self.kind {
            EnsembleKind::GaussianReal => MomentProfile {
                variance: 1.0,
                second_moment: Complex64::new(1.0, 0.0),
                fourth_abs_moment: 3.0,
                beta: 0.0,
                // E exp(X^2/t^2) = 1/sqrt(1 - 2/t^2) for t^2 > 2.
                k_psi2: psi2_root(|t| 1.0 / (1.0 - 2.0 / (t * t)).sqrt(), 1.5, 10.0),
            },
            EnsembleKind::GaussianComplex => MomentProfile {
                variance: 1.0,
                second_moment: Complex64::new(0.0, 0.0),
                fourth_abs_moment: 2.0,
                beta: 1.0,
                // |xi|^2 ~ Exp(1): E exp(W/t^2) = t^2/(t^2 - 1).
                k_psi2: psi2_root(|t| t * t / (t * t - 1.0), 1.1, 10.0),
            },
            EnsembleKind::Rademacher => MomentProfile {
                variance: 1.0,
                second_moment: Complex64::new(1.0, 0.0),
                fourth_abs_moment: 1.0,
                beta: 0.0,
                k_psi2: bounded_k,
            },
            EnsembleKind::Steinhaus => MomentProfile {
                variance: 1.0,
                second_moment: Complex64::new(0.0, 0.0),
                fourth_abs_moment: 1.0,
                beta: 1.0,
                k_psi2: bounded_k,
            },
            EnsembleKind::ComplexBernoulli => MomentProfile {
                variance: 1.0,
                second_moment: Complex64::new(0.0, 0.0),
                fourth_abs_moment: 1.0,
                beta: 1.0,
                k_psi2: bounded_k,
            },
            EnsembleKind::RotatedReal { phase } => MomentProfile {
                variance: 1.0,
                second_moment: phase * phase,
                fourth_abs_moment: 1.0,
                beta: 0.0,
                k_psi2: bounded_k,
            },
        }
    }

    /// Monte Carlo estimates of the moment profile.
    pub fn empirical_moments(&self, samples: usize) -> Result<EmpiricalMoments> {
        if samples < 1000 {
            return Err(Error::Precondition(format!(
                "empirical moments need at least 10^3 samples, got {samples}"
            )));
        }
        let n = samples as f64;
        let mut sum_sq = 0.0; // |xi|^2
        let mut sum_sq2 = 0.0; // |xi|^4 (also the 4th-moment estimator)
        let mut sum_sq4 = 0.0; // |xi|^8 for the 4th-moment stderr
        let mut sum_m2 = Complex64::new(0.0, 0.0); // xi^2
        let mut sum_m2_re2 = 0.0;
        let mut sum_m2_im2 = 0.0;
        let mut abs_sq = Vec::with_capacity(samples);
        for i in 0..samples {
            let mut rng = CounterRng::from_key(self.seed, &[0x4D4F_4D53, i as u64]);
            let x = self.entry_from_rng(&mut rng);
            let w = x.norm_sqr();
            let m2 = x * x;
            sum_sq += w;
            sum_sq2 += w * w;
            sum_sq4 += (w * w) * (w * w);
            sum_m2 += m2;
            sum_m2_re2 += m2.re * m2.re;
            sum_m2_im2 += m2.im * m2.im;
            abs_sq.push(w);
        }
        let variance = sum_sq / n;
        let fourth = sum_sq2 / n;
        let second = sum_m2 / n;
        let var_of_sq = (sum_sq2 / n - variance * variance).max(0.0);
        let var_of_fourth = (sum_sq4 / n - fourth * fourth).max(0.0);
        let var_m2 = (sum_m2_re2 / n - second.re * second.re).max(0.0)
            + (sum_m2_im2 / n - second.im * second.im).max(0.0);
        let beta = (1.0 - second.norm_sqr()).clamp(0.0, 1.0);
        let k_psi2 = empirical_psi2(&abs_sq);
        Ok(EmpiricalMoments {
            profile: MomentProfile {
                variance,
                second_moment: second,
                fourth_abs_moment: fourth,
                beta,
                k_psi2,
            },
            stderr_variance: (var_of_sq / n).sqrt() + STDERR_FLOOR,
            stderr_second_moment: (var_m2 / n).sqrt() + STDERR_FLOOR,
            stderr_fourth: (var_of_fourth / n).sqrt() + STDERR_FLOOR,
            samples,
        })
    }
}

/// Bisection for `inf { t : f(t) <= 2 }` of a decreasing `f`; 1e-6 tolerance.
fn psi2_root(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    debug_assert!(f(lo) > 2.0 && f(hi) < 2.0);
    while hi - lo > 1e-7 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 2.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// psi_2 estimate from sampled `|xi|^2` values.
fn empirical_psi2(abs_sq: &[f64]) -> f64 {
    let mean_exp = |t: f64| {
        let t2 = t * t;
        abs_sq.iter().map(|w| (w / t2).exp()).sum::<f64>() / abs_sq.len() as f64
    };
    let mut lo = 0.3;
    let mut hi = 64.0;
    if mean_exp(hi) > 2.0 {
        return hi;
    }
    while mean_exp(lo).is_infinite() {
        lo *= 1.5;
    }
    if mean_exp(lo) <= 2.0 {
        return lo;
    }
    while hi - lo > 1e-7 {
        let mid = 0.5 * (lo + hi);
        if mean_exp(mid) > 2.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Magnitude pair `(a, b)` near `1/sqrt(2)` with `a^2 + b^2 == 1.0` as
/// computed; cached after the first call.
pub(crate) fn balanced_sqrt_half_pair() -> (f64, f64) {
    use std::sync::OnceLock;
    static PAIR: OnceLock<(f64, f64)> = OnceLock::new();
    *PAIR.get_or_init(|| {
        let z = unit_fixup(
            std::f64::consts::FRAC_1_SQRT_2,
            std::f64::consts::FRAC_1_SQRT_2,
        )
        .expect("balanced unit pair exists");
        (z.re, z.im)
    })
}

/// Adjusts `(re, im)` by ulp-nudges of the smaller component until the
/// computed `re*re + im*im` is exactly `1.0`; the smaller component moves
/// the squared norm in sub-window steps, so the search succeeds for any
/// direction that is not degenerate.
pub(crate) fn unit_fixup(re: f64, im: f64) -> Option<Complex64> {
    let norm = re.hypot(im);
    if !norm.is_finite() || norm == 0.0 {
        return None;
    }
    let c = re / norm;
    let s = im / norm;
    let ok = |a: f64, b: f64| a * a + b * b == 1.0;
    if ok(c, s) {
        return Some(Complex64::new(c, s));
    }
    let adjust_im = s.abs() <= c.abs();
    let (fixed, mut up, mut down) = if adjust_im { (c, s, s) } else { (s, c, c) };
    for _ in 0..64 {
        up = up.next_up();
        down = down.next_down();
        for cand in [up, down] {
            let (a, b) = if adjust_im {
                (fixed, cand)
            } else {
                (cand, fixed)
            };
            if ok(a, b) {
                return Some(Complex64::new(a, b));
            }
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Serialization: {"kind": string, "seed": u64, "phase": [re, im] optional}
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct SpecRepr {
    kind: String,
    seed: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    phase: Option<[f64; 2]>,
}

impl Serialize for EnsembleSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let phase = match self.kind {
            EnsembleKind::RotatedReal { phase } => Some([phase.re, phase.im]),
            _ => None,
        };
        SpecRepr {
            kind: self.kind.name().to_string(),
            seed: self.seed,
            phase,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for EnsembleSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = SpecRepr::deserialize(deserializer)?;
        let phase = repr.phase.map(|p| Complex64::new(p[0], p[1]));
        let kind = EnsembleKind::from_name(&repr.kind, phase).map_err(D::Error::custom)?;
        EnsembleSpec::new(kind, repr.seed).map_err(D::Error::custom)
    }
}

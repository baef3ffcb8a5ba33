//! The lifted measurement operator and the intensity forward model.
//!
//! For measurement vectors `xi_i` (rows of the measurement matrix), the
//! lifted operator acts on Hermitian `Z` as `A(Z)(i) = xi_i* Z xi_i` and
//! its adjoint maps real weights to `sum_i v_i xi_i xi_i*`. No `1/m`
//! normalization is applied here; scaling is the caller's concern.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::cmatrix::{conj_dot, ComplexMatrix};
use crate::error::{Error, Result};
use crate::hermitian::HermitianMatrix;

pub type Complex64 = Complex<f64>;

/// Relative slack allowed on the `y_i - w_i >= 0` intensity check.
const INTENSITY_TOL: f64 = 1e-12;

/// Measurement vectors plus observed intensities and the noise carried in
/// them, `y_i = |<xi_i, x0>|^2 + w_i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasurementSet {
    matrix: ComplexMatrix,
    y: Vec<f64>,
    w: Vec<f64>,
}

impl MeasurementSet {
    /// Wraps existing data; `y` and `w` must have one entry per row and
    /// the noiseless part `y_i - w_i` must be nonnegative.
    pub fn new(matrix: ComplexMatrix, y: Vec<f64>, w: Vec<f64>) -> Result<Self> {
        if y.len() != matrix.rows() || w.len() != matrix.rows() {
            return Err(Error::DimensionMismatch(format!(
                "matrix has {} rows but y has {} and w has {} entries",
                matrix.rows(),
                y.len(),
                w.len()
            )));
        }
        if !matrix.is_finite()
            || !y.iter().all(|v| v.is_finite())
            || !w.iter().all(|v| v.is_finite())
        {
            return Err(Error::NonFinite("measurement set"));
        }
        for i in 0..y.len() {
            let intensity = y[i] - w[i];
            let scale = y[i].abs().max(w[i].abs()).max(1.0);
            if intensity < -INTENSITY_TOL * scale {
                return Err(Error::InvalidInput(format!(
                    "y[{i}] - w[{i}] = {intensity} is negative; intensities must be nonnegative"
                )));
            }
        }
        Ok(Self { matrix, y, w })
    }

    /// Builds the observations from a ground-truth signal:
    /// `y_i = |<xi_i, x0>|^2 + w_i`, stored together with `w`.
    pub fn forward_intensities(matrix: ComplexMatrix, x0: &[Complex64], w: &[f64]) -> Result<Self> {
        if x0.len() != matrix.cols() {
            return Err(Error::DimensionMismatch(format!(
                "signal has {} entries but the matrix has {} columns",
                x0.len(),
                matrix.cols()
            )));
        }
        if w.len() != matrix.rows() {
            return Err(Error::DimensionMismatch(format!(
                "noise has {} entries but the matrix has {} rows",
                w.len(),
                matrix.rows()
            )));
        }
        let mut y = Vec::with_capacity(matrix.rows());
        for (i, wi) in w.iter().enumerate() {
            let inner = conj_dot(matrix.row(i), x0);
            y.push(inner.norm_sqr() + wi);
        }
        Self::new(matrix, y, w.to_vec())
    }

    pub fn num_measurements(&self) -> usize {
        self.matrix.rows()
    }

    pub fn dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn intensities(&self) -> &[f64] {
        &self.y
    }

    pub fn noise(&self) -> &[f64] {
        &self.w
    }

    /// `A(Z)(i) = xi_i* Z xi_i`, real by Hermitian symmetry.
    pub fn apply(&self, z: &HermitianMatrix) -> Result<Vec<f64>> {
        if z.dim() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "matrix is {0}x{0} but measurements have dimension {1}",
                z.dim(),
                self.dim()
            )));
        }
        Ok((0..self.num_measurements())
            .map(|i| z.quadratic_form(self.matrix.row(i)))
            .collect())
    }

    /// Adjoint `A*(v) = sum_i v_i xi_i xi_i*`, Hermitian by construction.
    pub fn adjoint(&self, v: &[f64]) -> Result<HermitianMatrix> {
        if v.len() != self.num_measurements() {
            return Err(Error::DimensionMismatch(format!(
                "weight vector has {} entries but there are {} measurements",
                v.len(),
                self.num_measurements()
            )));
        }
        let n = self.dim();
        let mut data = vec![Complex64::new(0.0, 0.0); n * n];
        for (i, &vi) in v.iter().enumerate() {
            if vi == 0.0 {
                continue;
            }
            let row = self.matrix.row(i);
            for j in 0..n {
                let rj = row[j] * vi;
                for k in j..n {
                    data[j * n + k] += rj * row[k].conj();
                }
            }
        }
        for j in 0..n {
            data[j * n + j] = Complex64::new(data[j * n + j].re, 0.0);
            for k in (j + 1)..n {
                data[k * n + j] = data[j * n + k].conj();
            }
        }
        Ok(HermitianMatrix::from_parts_unchecked(n, data))
    }

    /// Power-iteration estimate of `sup_{||Z||_HS = 1} ||A(Z)||_2`.
    ///
    /// Iterates `Z <- A*(A(Z))` normalized; the Rayleigh quotient of the
    /// PSD composition is nondecreasing, and the last relative increment
    /// is reported alongside the estimate.
    pub fn opnorm(&self, iters: usize) -> Result<OpnormEstimate> {
        if iters < 10 {
            return Err(Error::Precondition(format!(
                "power iteration needs at least 10 iterations, got {iters}"
            )));
        }
        let ones = vec![1.0; self.num_measurements()];
        let mut z = self.adjoint(&ones)?;
        let norm = z.hs_norm();
        if norm == 0.0 {
            return Ok(OpnormEstimate {
                value: 0.0,
                last_rel_increment: 0.0,
                iters: 0,
            });
        }
        z = z.scale(1.0 / norm);
        let mut lambda = 0.0f64;
        let mut last_rel = f64::INFINITY;
        let mut used = 0;
        for it in 0..iters {
            let az = self.apply(&z)?;
            let tz = self.adjoint(&az)?;
            // Rayleigh quotient <Z, T Z> for the PSD composition T = A* A.
            let new_lambda = z.hs_inner(&tz);
            let tz_norm = tz.hs_norm();
            if tz_norm == 0.0 {
                return Ok(OpnormEstimate {
                    value: 0.0,
                    last_rel_increment: 0.0,
                    iters: it,
                });
            }
            z = tz.scale(1.0 / tz_norm);
            last_rel = if lambda > 0.0 {
                ((new_lambda - lambda) / lambda).abs()
            } else {
                f64::INFINITY
            };
            lambda = new_lambda;
            used = it + 1;
            if last_rel < 1e-14 {
                break;
            }
        }
        Ok(OpnormEstimate {
            value: lambda.max(0.0).sqrt(),
            last_rel_increment: last_rel,
            iters: used,
        })
    }
}

/// Result of the lifted-operator norm estimation.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct OpnormEstimate {
    /// Estimated operator norm (a lower bound converging from below).
    pub value: f64,
    /// Relative increment of the Rayleigh quotient at the last step.
    pub last_rel_increment: f64,
    /// Iterations actually performed.
    pub iters: usize,
}

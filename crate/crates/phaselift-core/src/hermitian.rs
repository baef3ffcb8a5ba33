//! Dense complex Hermitian matrices: Jacobi eigendecomposition, PSD
//! projection, and the norms used by the recovery analysis.
//!
//! The eigensolver is a cyclic Jacobi iteration with complex Givens
//! rotations. The rotation phase is taken as `conj(b)/|b|` rather than
//! through `arg`/trig calls, so real symmetric inputs stay exactly real
//! through the decomposition and the PSD projection.

use num_complex::Complex;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cmatrix::{matrix_from_repr_parts, ComplexMatrix};
use crate::error::{Error, Result};

pub type Complex64 = Complex<f64>;

/// Absolute tolerance for the Hermitian-symmetry check on construction.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Jacobi sweep limit.
const MAX_SWEEPS: usize = 50;

/// Off-diagonal Frobenius threshold, relative to the input HS norm.
const OFF_DIAG_REL_TOL: f64 = 1e-13;

/// Dense `n x n` complex Hermitian matrix.
///
/// Entries are symmetrized exactly on construction: `a[j][k]` is the
/// complex conjugate of `a[k][j]` and the diagonal is exactly real.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    n: usize,
    data: Vec<Complex64>,
}

/// The four norms reported by [`HermitianMatrix::norms`].
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct MatrixNorms {
    /// Schatten-1 norm, the sum of absolute eigenvalues.
    pub schatten1: f64,
    /// Hilbert-Schmidt (Frobenius) norm.
    pub hs: f64,
    /// Operator norm, the largest absolute eigenvalue.
    pub operator: f64,
    /// HS norm of the diagonal part.
    pub diag_hs: f64,
}

impl HermitianMatrix {
    /// Builds a Hermitian matrix from row-major entries.
    ///
    /// Entries must be finite and Hermitian within [`HERMITIAN_TOL`]
    /// absolute; the matrix is then symmetrized exactly.
    pub fn from_entries(n: usize, mut data: Vec<Complex64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("matrix dimension must be >= 1".into()));
        }
        if data.len() != n * n {
            return Err(Error::DimensionMismatch(format!(
                "expected {} entries for a {n}x{n} matrix, got {}",
                n * n,
                data.len()
            )));
        }
        if !data.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NonFinite("matrix entries"));
        }
        let mut max_asym = 0.0f64;
        for j in 0..n {
            for k in j..n {
                let d = data[j * n + k] - data[k * n + j].conj();
                max_asym = max_asym.max(d.norm());
            }
        }
        if max_asym > HERMITIAN_TOL {
            return Err(Error::NotHermitian {
                max_asymmetry: max_asym,
                tolerance: HERMITIAN_TOL,
            });
        }
        for j in 0..n {
            data[j * n + j] = Complex64::new(data[j * n + j].re, 0.0);
            for k in (j + 1)..n {
                let avg = (data[j * n + k] + data[k * n + j].conj()) * 0.5;
                data[j * n + k] = avg;
                data[k * n + j] = avg.conj();
            }
        }
        Ok(Self { n, data })
    }

    /// Internal constructor for data that is Hermitian by construction.
    pub(crate) fn from_parts_unchecked(n: usize, data: Vec<Complex64>) -> Self {
        debug_assert_eq!(data.len(), n * n);
        Self { n, data }
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_diag(diag: &[f64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n);
        for (i, &d) in diag.iter().enumerate() {
            m.data[i * n + i] = Complex64::new(d, 0.0);
        }
        m
    }

    /// Rank-1 lift `x x*` of a vector.
    pub fn outer(x: &[Complex64]) -> Self {
        let n = x.len();
        let mut data = Vec::with_capacity(n * n);
        for j in 0..n {
            for k in 0..n {
                data.push(x[j] * x[k].conj());
            }
        }
        Self { n, data }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, j: usize, k: usize) -> Complex64 {
        self.data[j * self.n + k]
    }

    #[inline]
    pub fn set_pair(&mut self, j: usize, k: usize, v: Complex64) {
        self.data[j * self.n + k] = v;
        self.data[k * self.n + j] = v.conj();
        if j == k {
            self.data[j * self.n + j] = Complex64::new(v.re, 0.0);
        }
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    /// Trace (real by Hermitian symmetry).
    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.data[i * self.n + i].re).sum()
    }

    /// Hilbert-Schmidt norm, `sqrt(sum |a_jk|^2)`.
    pub fn hs_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// HS inner product `<A, B> = Tr(A* B)`; real for Hermitian pairs.
    pub fn hs_inner(&self, other: &Self) -> f64 {
        debug_assert_eq!(self.n, other.n);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a.conj() * b).re)
            .sum()
    }

    /// HS norm of the diagonal part.
    pub fn diag_hs_norm(&self) -> f64 {
        (0..self.n)
            .map(|i| {
                let d = self.data[i * self.n + i].re;
                d * d
            })
            .sum::<f64>()
            .sqrt()
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Self { n: self.n, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Self { n: self.n, data }
    }

    /// Scale by a real factor (Hermitian-preserving).
    pub fn scale(&self, c: f64) -> Self {
        let data = self.data.iter().map(|a| a * c).collect();
        Self { n: self.n, data }
    }

    /// `self += c * other`, in place.
    pub fn add_scaled_mut(&mut self, c: f64, other: &Self) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += b * c;
        }
    }

    /// Entrywise real part; exactly zero imaginary entries.
    ///
    /// For a Hermitian matrix the result is real symmetric, i.e. the
    /// projection onto the real subspace of Hermitian matrices.
    pub fn real_part(&self) -> Self {
        let data = self
            .data
            .iter()
            .map(|z| Complex64::new(z.re, 0.0))
            .collect();
        Self { n: self.n, data }
    }

    /// Largest `|Im(a_jk)|` over all entries.
    pub fn max_abs_imag(&self) -> f64 {
        self.data.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    /// Quadratic form `x* M x` (real by Hermitian symmetry).
    pub fn quadratic_form(&self, x: &[Complex64]) -> f64 {
        debug_assert_eq!(x.len(), self.n);
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..self.n {
            let row = &self.data[j * self.n..(j + 1) * self.n];
            let mut w = Complex64::new(0.0, 0.0);
            for (entry, xk) in row.iter().zip(x) {
                w += entry * xk;
            }
            acc += x[j].conj() * w;
        }
        acc.re
    }

    /// Eigendecomposition with eigenvalues sorted in decreasing order and
    /// orthonormal eigenvector columns.
    pub fn eig(&self) -> Result<EigenDecomposition> {
        if !self
            .data
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
        {
            return Err(Error::NonFinite("matrix entries"));
        }
        let n = self.n;
        let scale = self.hs_norm();
        let threshold = OFF_DIAG_REL_TOL * scale;
        let mut a = self.data.clone();
        let mut v = ComplexMatrix::identity(n);

        let off = |a: &[Complex64]| -> f64 {
            let mut s = 0.0;
            for p in 0..n {
                for q in (p + 1)..n {
                    s += a[p * n + q].norm_sqr();
                }
            }
            (2.0 * s).sqrt()
        };

        let mut residual = off(&a);
        let mut converged = residual <= threshold;
        let mut sweeps = 0;
        while !converged && sweeps < MAX_SWEEPS {
            for p in 0..n {
                for q in (p + 1)..n {
                    let beta = a[p * n + q];
                    let absb = beta.norm();
                    if absb == 0.0 {
                        continue;
                    }
                    let app = a[p * n + p].re;
                    let aqq = a[q * n + q].re;
                    // Unit phase that makes the pivot real positive.
                    let u = beta.conj() / absb;
                    let tau = (aqq - app) / (2.0 * absb);
                    let t = if tau >= 0.0 {
                        1.0 / (tau + (1.0 + tau * tau).sqrt())
                    } else {
                        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                    };
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;

                    // A <- A J with J = [[c, s], [-s u, c u]] on (p, q).
                    for k in 0..n {
                        let akp = a[k * n + p];
                        let akq = u * a[k * n + q];
                        a[k * n + p] = akp * c - akq * s;
                        a[k * n + q] = akp * s + akq * c;
                    }
                    // A <- J* A.
                    let uc = u.conj();
                    for k in 0..n {
                        let bpk = a[p * n + k];
                        let bqk = uc * a[q * n + k];
                        a[p * n + k] = bpk * c - bqk * s;
                        a[q * n + k] = bpk * s + bqk * c;
                    }
                    // Pivot is annihilated by construction; pin it and
                    // keep the diagonal exactly real.
                    a[p * n + q] = Complex64::new(0.0, 0.0);
                    a[q * n + p] = Complex64::new(0.0, 0.0);
                    a[p * n + p] = Complex64::new(a[p * n + p].re, 0.0);
                    a[q * n + q] = Complex64::new(a[q * n + q].re, 0.0);

                    // V <- V J.
                    for k in 0..n {
                        let vkp = v.get(k, p);
                        let vkq = u * v.get(k, q);
                        v.set(k, p, vkp * c - vkq * s);
                        v.set(k, q, vkp * s + vkq * c);
                    }
                }
            }
            sweeps += 1;
            residual = off(&a);
            converged = residual <= threshold;
        }
        if !converged {
            return Err(Error::EigNonConvergence { sweeps, residual });
        }

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| {
            a[j * n + j]
                .re
                .partial_cmp(&a[i * n + i].re)
                .expect("finite eigenvalues")
        });
        let eigenvalues: Vec<f64> = order.iter().map(|&i| a[i * n + i].re).collect();
        let mut vectors = ComplexMatrix::zeros(n, n);
        for (new_col, &old_col) in order.iter().enumerate() {
            for r in 0..n {
                vectors.set(r, new_col, v.get(r, old_col));
            }
        }
        Ok(EigenDecomposition {
            eigenvalues,
            vectors,
        })
    }

    /// Projection onto the PSD cone: clips negative eigenvalues to zero.
    ///
    /// Among PSD matrices the result minimizes the HS distance to `self`.
    pub fn project_psd(&self) -> Result<Self> {
        let dec = self.eig()?;
        let clipped: Vec<f64> = dec
            .eigenvalues
            .iter()
            .map(|&l| if l > 0.0 { l } else { 0.0 })
            .collect();
        Ok(dec.reconstruct_with(&clipped))
    }

    /// Schatten-1, HS, operator, and diagonal-HS norms.
    pub fn norms(&self) -> Result<MatrixNorms> {
        let dec = self.eig()?;
        let schatten1 = dec.eigenvalues.iter().map(|l| l.abs()).sum();
        let operator = dec.eigenvalues.iter().map(|l| l.abs()).fold(0.0, f64::max);
        Ok(MatrixNorms {
            schatten1,
            hs: self.hs_norm(),
            operator,
            diag_hs: self.diag_hs_norm(),
        })
    }
}

/// Sorted spectrum and orthonormal eigenbasis of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    /// Eigenvalues in decreasing order.
    pub eigenvalues: Vec<f64>,
    /// Matrix whose column `k` is the eigenvector for `eigenvalues[k]`.
    pub vectors: ComplexMatrix,
}

impl EigenDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Eigenvector for the `k`-th eigenvalue.
    pub fn eigenvector(&self, k: usize) -> Vec<Complex64> {
        self.vectors.column(k)
    }

    /// `sum_k lambda_k v_k v_k*` with the stored eigenvalues.
    pub fn reconstruct(&self) -> HermitianMatrix {
        self.reconstruct_with(&self.eigenvalues)
    }

    /// Reconstruction with substituted eigenvalues (used by the PSD clip).
    pub fn reconstruct_with(&self, eigenvalues: &[f64]) -> HermitianMatrix {
        let n = self.dim();
        debug_assert_eq!(eigenvalues.len(), n);
        let mut data = vec![Complex64::new(0.0, 0.0); n * n];
        for (k, &l) in eigenvalues.iter().enumerate() {
            if l == 0.0 {
                continue;
            }
            for j in 0..n {
                let vj = self.vectors.get(j, k) * l;
                for i in j..n {
                    data[j * n + i] += vj * self.vectors.get(i, k).conj();
                }
            }
        }
        for j in 0..n {
            data[j * n + j] = Complex64::new(data[j * n + j].re, 0.0);
            for i in (j + 1)..n {
                data[i * n + j] = data[j * n + i].conj();
            }
        }
        HermitianMatrix::from_parts_unchecked(n, data)
    }

    /// Entrywise max deviation of `V* V` from the identity.
    pub fn gram_deviation(&self) -> f64 {
        let n = self.dim();
        let mut max = 0.0f64;
        for i in 0..n {
            let vi = self.vectors.column(i);
            for j in 0..n {
                let vj = self.vectors.column(j);
                let g = crate::cmatrix::conj_dot(&vi, &vj);
                let target = if i == j { 1.0 } else { 0.0 };
                max = max.max((g - Complex64::new(target, 0.0)).norm());
            }
        }
        max
    }
}

// ---------------------------------------------------------------------------
// Serialization: shares the repo-wide matrix layout.
// ---------------------------------------------------------------------------

impl Serialize for HermitianMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let m = ComplexMatrix::from_data(self.n, self.n, self.data.clone())
            .expect("consistent dimensions");
        m.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for HermitianMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct MatrixRepr {
            n: usize,
            entries: Vec<Vec<[f64; 2]>>,
        }
        let repr = MatrixRepr::deserialize(deserializer)?;
        let m = matrix_from_repr_parts(repr.n, repr.entries).map_err(D::Error::custom)?;
        if m.rows() != m.cols() {
            return Err(D::Error::custom("Hermitian matrix file must be square"));
        }
        HermitianMatrix::from_entries(m.rows(), m.data().to_vec()).map_err(D::Error::custom)
    }
}

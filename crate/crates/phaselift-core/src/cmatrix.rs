//! Dense rectangular complex matrices and small vector helpers.

use num_complex::Complex;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Complex64 = Complex<f64>;

/// Row-major `rows x cols` complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn from_data(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    /// Identity embedded in a square matrix.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[Complex64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    /// Column `c` copied into a vector.
    pub fn column(&self, c: usize) -> Vec<Complex64> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_finite(&self) -> bool {
        self.data
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

/// `sum_j conj(a_j) b_j`, the inner product conjugate-linear in `a`.
#[inline]
pub fn conj_dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Complex64::new(0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        acc += x.conj() * y;
    }
    acc
}

/// Euclidean norm of a complex vector.
#[inline]
pub fn vec_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `l1` norm of a real vector.
#[inline]
pub fn l1_norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x.abs()).sum()
}

/// Euclidean norm of a real vector.
#[inline]
pub fn l2_norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

// ---------------------------------------------------------------------------
// Serialization: {"n": cols, "entries": [[[re, im], ...] per row]}
// Square Hermitian files and rectangular measurement matrices share the
// same layout; the row count is the length of `entries`.
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    n: usize,
    entries: Vec<Vec<[f64; 2]>>,
}

pub(crate) fn matrix_to_repr(m: &ComplexMatrix) -> impl Serialize {
    MatrixRepr {
        n: m.cols,
        entries: (0..m.rows)
            .map(|r| m.row(r).iter().map(|z| [z.re, z.im]).collect())
            .collect(),
    }
}

pub(crate) fn matrix_from_repr_parts(
    n: usize,
    entries: Vec<Vec<[f64; 2]>>,
) -> Result<ComplexMatrix> {
    let rows = entries.len();
    let mut data = Vec::with_capacity(rows * n);
    for row in &entries {
        if row.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "matrix row has {} entries, expected {n}",
                row.len()
            )));
        }
        data.extend(row.iter().map(|p| Complex64::new(p[0], p[1])));
    }
    ComplexMatrix::from_data(rows, n, data)
}

impl Serialize for ComplexMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        matrix_to_repr(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = MatrixRepr::deserialize(deserializer)?;
        matrix_from_repr_parts(repr.n, repr.entries).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_json() {
        let mut m = ComplexMatrix::zeros(2, 3);
        m.set(0, 1, Complex64::new(1.5, -2.0));
        m.set(1, 2, Complex64::new(-0.25, 3.0));
        let json = serde_json::to_string(&m).unwrap();
        let back: ComplexMatrix = serde_json::from_str(&json).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn conj_dot_is_conjugate_linear() {
        let a = vec![Complex64::new(0.0, 1.0), Complex64::new(2.0, 0.0)];
        let b = vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)];
        let d = conj_dot(&a, &b);
        // conj(i)*1 + conj(2)*i = -i + 2i = i
        assert_eq!(d, Complex64::new(0.0, 1.0));
    }
}

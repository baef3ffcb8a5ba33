//! File formats and serde helpers.
//!
//! Matrix files use one shared layout repo-wide:
//!
//! - JSON: `{"n": <cols>, "entries": [[[re, im], ...], ...]}` row-major;
//!   square Hermitian matrices and rectangular measurement matrices both
//!   use it (rows = `entries.len()`).
//! - Binary: little-endian `u32` column count, then row-major `f64`
//!   `(re, im)` pairs until end of stream.
//!
//! Vectors (signals) use `{"n": <len>, "entries": [[re, im], ...]}`.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use num_complex::Complex;
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::cmatrix::ComplexMatrix;
use crate::error::{Error, Result};
use crate::hermitian::HermitianMatrix;

pub type Complex64 = Complex<f64>;

/// Serde adapter for a complex scalar as a `[re, im]` pair.
pub mod complex_pair {
    use super::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        [z.re, z.im].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        let p = <[f64; 2]>::deserialize(d)?;
        Ok(Complex64::new(p[0], p[1]))
    }
}

/// Serde adapter for an optional complex scalar.
pub mod complex_pair_opt {
    use super::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(z: &Option<Complex64>, s: S) -> Result<S::Ok, S::Error> {
        z.map(|z| [z.re, z.im]).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Complex64>, D::Error> {
        let p = Option::<[f64; 2]>::deserialize(d)?;
        Ok(p.map(|p| Complex64::new(p[0], p[1])))
    }
}

/// Complex vector as `{"n": .., "entries": [[re, im], ...]}`.
#[derive(serde::Serialize, serde::Deserialize)]
struct VectorRepr {
    n: usize,
    entries: Vec<[f64; 2]>,
}

pub fn vector_to_json(v: &[Complex64]) -> serde_json::Value {
    serde_json::to_value(VectorRepr {
        n: v.len(),
        entries: v.iter().map(|z| [z.re, z.im]).collect(),
    })
    .expect("vector serialization cannot fail")
}

pub fn vector_from_json(value: &serde_json::Value) -> Result<Vec<Complex64>> {
    let repr: VectorRepr = serde_json::from_value(value.clone())?;
    if repr.entries.len() != repr.n {
        return Err(Error::DimensionMismatch(format!(
            "vector declares n={} but has {} entries",
            repr.n,
            repr.entries.len()
        )));
    }
    Ok(repr
        .entries
        .iter()
        .map(|p| Complex64::new(p[0], p[1]))
        .collect())
}

/// Writes any serializable value as pretty JSON.
pub fn save_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let file = File::create(path)?;
    let mut w = BufWriter::new(file);
    serde_json::to_writer_pretty(&mut w, value)?;
    w.write_all(b"\n")?;
    Ok(())
}

pub fn load_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let file = File::open(path)?;
    Ok(serde_json::from_reader(BufReader::new(file))?)
}

/// Binary matrix form: LE `u32` cols, then row-major `(re, im)` f64 pairs.
pub fn save_matrix_binary(path: &Path, m: &ComplexMatrix) -> Result<()> {
    let file = File::create(path)?;
    let mut w = BufWriter::new(file);
    w.write_all(&(m.cols() as u32).to_le_bytes())?;
    for z in m.data() {
        w.write_all(&z.re.to_le_bytes())?;
        w.write_all(&z.im.to_le_bytes())?;
    }
    Ok(())
}

pub fn load_matrix_binary(path: &Path) -> Result<ComplexMatrix> {
    let mut bytes = Vec::new();
    File::open(path)?.read_to_end(&mut bytes)?;
    if bytes.len() < 4 {
        return Err(Error::InvalidInput("binary matrix file too short".into()));
    }
    let cols = u32::from_le_bytes(bytes[0..4].try_into().unwrap()) as usize;
    if cols == 0 {
        return Err(Error::InvalidInput("binary matrix has zero columns".into()));
    }
    let body = &bytes[4..];
    if body.len() % (16 * cols) != 0 {
        return Err(Error::InvalidInput(format!(
            "binary matrix payload ({} bytes) is not a whole number of {cols}-column rows",
            body.len()
        )));
    }
    let rows = body.len() / (16 * cols);
    let mut data = Vec::with_capacity(rows * cols);
    for chunk in body.chunks_exact(16) {
        let re = f64::from_le_bytes(chunk[0..8].try_into().unwrap());
        let im = f64::from_le_bytes(chunk[8..16].try_into().unwrap());
        data.push(Complex64::new(re, im));
    }
    ComplexMatrix::from_data(rows, cols, data)
}

/// Loads a square binary matrix file as Hermitian (validated).
pub fn load_hermitian_binary(path: &Path) -> Result<HermitianMatrix> {
    let m = load_matrix_binary(path)?;
    if m.rows() != m.cols() {
        return Err(Error::DimensionMismatch(format!(
            "Hermitian matrix file must be square, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    HermitianMatrix::from_entries(m.rows(), m.data().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binary_roundtrip() {
        let dir = std::env::temp_dir().join(format!("phaselift-io-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("m.bin");
        let mut m = ComplexMatrix::zeros(3, 2);
        m.set(0, 0, Complex64::new(1.0, -1.0));
        m.set(2, 1, Complex64::new(0.5, 2.0));
        save_matrix_binary(&path, &m).unwrap();
        let back = load_matrix_binary(&path).unwrap();
        assert_eq!(m, back);
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn vector_roundtrip() {
        let v = vec![Complex64::new(1.0, 2.0), Complex64::new(-0.5, 0.0)];
        let json = vector_to_json(&v);
        let back = vector_from_json(&json).unwrap();
        assert_eq!(v, back);
    }
}

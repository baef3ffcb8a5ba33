//! Shared helpers for unit tests.

use crate::hermitian::HermitianMatrix;
use crate::rng::CounterRng;
use crate::Complex64;

/// Seeded random Hermitian matrix with N(0,1) entries.
pub(crate) fn random_hermitian(n: usize, seed: u64) -> HermitianMatrix {
    let mut rng = CounterRng::from_key(seed, &[n as u64, 0xABCD]);
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

/// Seeded random unit vector, uniform on the complex sphere.
pub(crate) fn random_unit_vector(n: usize, seed: u64) -> Vec<Complex64> {
    let mut rng = CounterRng::from_key(seed, &[n as u64, 0xFEED]);
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

//! Counter-based deterministic random streams.
//!
//! Every sampler in the crate derives an independent stream from a
//! `(seed, index...)` key, so sampling is order-independent and safe to
//! parallelize: entry `(row, col)` of a measurement matrix has the same
//! value no matter which thread draws it or in which order.

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// Finalizer from splitmix64; full-avalanche 64-bit mixing.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derive a well-mixed sub-key from a seed and a list of index words.
pub fn derive_key(seed: u64, parts: &[u64]) -> u64 {
    let mut state = mix64(seed ^ GOLDEN);
    for &p in parts {
        state = mix64(state.wrapping_add(GOLDEN) ^ p);
    }
    state
}

/// Deterministic stream generator (splitmix64 over a derived key).
#[derive(Debug, Clone)]
pub struct CounterRng {
    state: u64,
}

impl CounterRng {
    /// Stream keyed by `(seed, parts...)`.
    pub fn from_key(seed: u64, parts: &[u64]) -> Self {
        Self {
            state: derive_key(seed, parts),
        }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN);
        mix64(self.state)
    }

    /// Uniform in `[0, 1)` with 53 random bits.
    #[inline]
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `(0, 1]`; safe as a logarithm argument.
    #[inline]
    pub fn next_f64_open(&mut self) -> f64 {
        ((self.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Fair sign, `+1.0` or `-1.0`.
    #[inline]
    pub fn next_sign(&mut self) -> f64 {
        if self.next_u64() & 1 == 0 {
            1.0
        } else {
            -1.0
        }
    }

    /// Pair of independent standard normals (Box-Muller).
    #[inline]
    pub fn next_gaussian_pair(&mut self) -> (f64, f64) {
        let u1 = self.next_f64_open();
        let u2 = self.next_f64();
        let r = (-2.0 * u1.ln()).sqrt();
        let theta = std::f64::consts::TAU * u2;
        (r * theta.cos(), r * theta.sin())
    }
}

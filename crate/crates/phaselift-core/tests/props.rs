//! Property tests for the serialization contracts and the floating-point
//! identities the forward model relies on.

use proptest::prelude::*;

use phaselift_core::cmatrix::{conj_dot, ComplexMatrix};
use phaselift_core::ensembles::{EnsembleKind, EnsembleSpec};
use phaselift_core::hermitian::HermitianMatrix;
use phaselift_core::io;
use phaselift_core::solver::recovery_error;
use phaselift_core::Complex64;

fn finite_f64() -> impl Strategy<Value = f64> {
    prop_oneof![
        -1e6f64..1e6,
        Just(0.0),
        Just(-0.0),
        Just(1.0),
        prop_oneof![-1e-12f64..1e-12],
    ]
}

fn complex_vec(len: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((finite_f64(), finite_f64()), len).prop_map(|pairs| {
        pairs
            .into_iter()
            .map(|(re, im)| Complex64::new(re, im))
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn matrix_json_roundtrip_is_identity(
        rows in 1usize..5,
        cols in 1usize..5,
        seed in any::<u64>(),
    ) {
        let mut data = Vec::with_capacity(rows * cols);
        let mut rng = phaselift_core::rng::CounterRng::from_key(seed, &[rows as u64, cols as u64]);
        for _ in 0..rows * cols {
            let (a, b) = rng.next_gaussian_pair();
            data.push(Complex64::new(a * 1e3, b * 1e-3));
        }
        let m = ComplexMatrix::from_data(rows, cols, data).unwrap();
        let json = serde_json::to_string(&m).unwrap();
        let back: ComplexMatrix = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(m, back);
    }

    #[test]
    fn matrix_binary_roundtrip_is_identity(
        rows in 1usize..5,
        cols in 1usize..5,
        entries_seed in any::<u64>(),
    ) {
        let mut data = Vec::with_capacity(rows * cols);
        let mut rng = phaselift_core::rng::CounterRng::from_key(entries_seed, &[7]);
        for _ in 0..rows * cols {
            let (a, b) = rng.next_gaussian_pair();
            data.push(Complex64::new(a, b));
        }
        let m = ComplexMatrix::from_data(rows, cols, data).unwrap();
        let dir = std::env::temp_dir().join(format!(
            "phaselift-prop-{}-{entries_seed}",
            std::process::id()
        ));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("m.bin");
        io::save_matrix_binary(&path, &m).unwrap();
        let back = io::load_matrix_binary(&path).unwrap();
        std::fs::remove_dir_all(&dir).ok();
        prop_assert_eq!(m, back);
    }

    #[test]
    fn conj_dot_is_exactly_conjugate_symmetric(a in complex_vec(6), b in complex_vec(6)) {
        let ab = conj_dot(&a, &b);
        let ba = conj_dot(&b, &a);
        // The per-term products share monomials, so <a, b> = conj(<b, a>)
        // survives floating point exactly up to the sign of zero (IEEE
        // addition collapses +0 and -0 to +0).
        prop_assert_eq!(ab.re.to_bits(), ba.re.to_bits());
        prop_assert_eq!(ab.im, -ba.im);
        // The consequence the forward model relies on is bitwise
        // equality of the squared moduli.
        prop_assert_eq!(ab.norm_sqr().to_bits(), ba.norm_sqr().to_bits());
    }

    #[test]
    fn intensities_are_invariant_under_global_signal_phase(
        seed in any::<u64>(),
        theta in 0.0f64..std::f64::consts::TAU,
    ) {
        // |<xi, e^{i theta} x>|^2 equals |<xi, x>|^2 to rounding error.
        let spec = EnsembleSpec::new(EnsembleKind::GaussianComplex, seed).unwrap();
        let matrix = spec.sample_matrix(12, 4).unwrap();
        let mut rng = phaselift_core::rng::CounterRng::from_key(seed, &[0x9]);
        let x: Vec<Complex64> = (0..4)
            .map(|_| {
                let (a, b) = rng.next_gaussian_pair();
                Complex64::new(a, b)
            })
            .collect();
        let phase = Complex64::from_polar(1.0, theta);
        let rotated: Vec<Complex64> = x.iter().map(|z| z * phase).collect();
        let w = vec![0.0; 12];
        let ya = phaselift_core::lifted::MeasurementSet::forward_intensities(
            matrix.clone(),
            &x,
            &w,
        )
        .unwrap();
        let yb =
            phaselift_core::lifted::MeasurementSet::forward_intensities(matrix, &rotated, &w)
                .unwrap();
        for (p, q) in ya.intensities().iter().zip(yb.intensities()) {
            prop_assert!((p - q).abs() <= 1e-12 * p.abs().max(1.0));
        }
    }

    #[test]
    fn recovery_error_matrix_metrics_ignore_global_phase(
        seed in any::<u64>(),
        theta in 0.0f64..std::f64::consts::TAU,
    ) {
        let mut rng = phaselift_core::rng::CounterRng::from_key(seed, &[0xA]);
        let mut x: Vec<Complex64> = (0..5)
            .map(|_| {
                let (a, b) = rng.next_gaussian_pair();
                Complex64::new(a, b)
            })
            .collect();
        let norm = phaselift_core::cmatrix::vec_norm(&x);
        prop_assume!(norm > 1e-6);
        for z in &mut x {
            *z /= norm;
        }
        let phase = Complex64::from_polar(1.0, theta);
        let rotated: Vec<Complex64> = x.iter().map(|z| z * phase).collect();
        let err = recovery_error(&HermitianMatrix::outer(&rotated), &x).unwrap();
        prop_assert!(err.hs <= 1e-13, "hs {}", err.hs);
        prop_assert!(err.schatten1 <= 1e-12, "schatten1 {}", err.schatten1);
    }

    #[test]
    fn bounded_kinds_emit_exact_unit_modulus(seed in any::<u64>(), row in 0u64..64, col in 0u64..64) {
        for kind in [
            EnsembleKind::Steinhaus,
            EnsembleKind::ComplexBernoulli,
            EnsembleKind::Rademacher,
            EnsembleKind::RotatedReal { phase: Complex64::new(0.0, 1.0) },
        ] {
            let spec = EnsembleSpec::new(kind, seed).unwrap();
            let z = spec.sample_entry(row, col);
            prop_assert_eq!(z.norm_sqr(), 1.0);
        }
    }
}

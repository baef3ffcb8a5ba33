//! Empirically derived recovery thresholds exercised end to end.

use phaselift_core::ensembles::{EnsembleKind, EnsembleSpec};
use phaselift_core::experiments::{
    run_phase_transition, PhaseTransitionConfig, RunContext, SignalClass,
};

/// Rademacher measurements recover spectrally flat real signals once the
/// oversampling is moderate, even though sparse signals stay ambiguous
/// at any number of measurements.
#[test]
fn rademacher_recovers_flat_real_signals() {
    let cfg = PhaseTransitionConfig {
        n_list: vec![16],
        m_over_n_list: vec![40],
        ensembles: vec![EnsembleSpec::new(EnsembleKind::Rademacher, 0).unwrap()],
        signal_classes: vec![SignalClass::Flat],
        trials: 10,
        ..PhaseTransitionConfig::default()
    };
    let ctx = RunContext {
        master_seed: 21,
        workers: 0,
    };
    let report = run_phase_transition(&cfg, &ctx).unwrap();
    let rate = report.summary["cells"][0]["success_rate"].as_f64().unwrap();
    assert!(rate >= 0.9, "success rate {rate}");
    // Flat signals for this ensemble are real-valued by construction.
    assert!(report.rows.iter().all(|r| r.signal_class == "flat"));
}

/// Steinhaus measurements (unit-modulus, beta = 1) recover generic
/// complex flat signals.
#[test]
fn steinhaus_recovers_flat_complex_signals() {
    let cfg = PhaseTransitionConfig {
        n_list: vec![10],
        m_over_n_list: vec![20],
        ensembles: vec![EnsembleSpec::new(EnsembleKind::Steinhaus, 0).unwrap()],
        signal_classes: vec![SignalClass::Flat],
        trials: 6,
        ..PhaseTransitionConfig::default()
    };
    let ctx = RunContext {
        master_seed: 22,
        workers: 0,
    };
    let report = run_phase_transition(&cfg, &ctx).unwrap();
    let rate = report.summary["cells"][0]["success_rate"].as_f64().unwrap();
    assert!(rate >= 0.9, "success rate {rate}");
}

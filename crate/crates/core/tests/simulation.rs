use std::collections::BTreeMap;

use polar_hybrid::bp::Schedule;
use polar_hybrid::sim::{parse_config_text, run_experiment, DecoderVariant, ExperimentConfig};

fn config(decoders: Vec<DecoderVariant>, snr: f64, min_frame_errors: u64) -> ExperimentConfig {
    ExperimentConfig {
        snr_points: vec![snr],
        decoders,
        min_frame_errors,
        max_frames: 100_000,
        seed: 77,
        ..ExperimentConfig::default()
    }
}

#[test]
fn hybrid_is_not_worse_than_bp_at_two_db() {
    let rows = run_experiment(&config(
        vec![
            DecoderVariant::BpEs { max_iter: 60 },
            DecoderVariant::Hybrid { max_iter: 60 },
        ],
        2.0,
        100,
    ))
    .unwrap();
    let (bp, hy) = (&rows[0], &rows[1]);
    assert!(bp.frame_errors >= 100 && hy.frame_errors >= 100);
    let se = (bp.fer * (1.0 - bp.fer) / bp.frames as f64
        + hy.fer * (1.0 - hy.fer) / hy.frames as f64)
        .sqrt();
    assert!(
        hy.fer - bp.fer <= 1.96 * se,
        "hybrid {} vs BP {}",
        hy.fer,
        bp.fer
    );
}

#[test]
fn cycle_bookkeeping_matches_the_formulas() {
    let rows = run_experiment(&config(
        vec![
            DecoderVariant::Sc,
            DecoderVariant::BpEs { max_iter: 60 },
            DecoderVariant::Bp { max_iter: 25 },
        ],
        3.5,
        10,
    ))
    .unwrap();
    assert_eq!(rows[0].mean_cycles, 512.0);
    assert_eq!(rows[0].worst_cycles, 512);
    assert!((rows[1].mean_cycles - (2.0 * rows[1].mean_iterations + 10.0)).abs() < 1e-9);
    assert!(rows[1].worst_cycles <= 130);
    assert_eq!(rows[2].mean_iterations, 25.0);
    assert_eq!(rows[2].worst_cycles, 60);
}

#[test]
fn schedule_is_configurable() {
    let options = parse_config_text("bp_schedule = round-trip\nbp-scale 0.9375\n").unwrap();
    let mut cfg = ExperimentConfig::default();
    cfg.apply_options(&options).unwrap();
    assert_eq!(cfg.bp_config().schedule, Schedule::RoundTrip);
    assert_eq!(cfg.bp_config().scale, 0.9375);
    assert_eq!(
        ExperimentConfig::default().bp_config().schedule,
        Schedule::LeftSweep
    );

    let mut bad = BTreeMap::new();
    bad.insert("bp-schedule".to_string(), "serpentine".to_string());
    assert!(ExperimentConfig::default().apply_options(&bad).is_err());
}

//! A short FER/latency sweep comparing SC, BP and the hybrid decoder.
//!
//! Pass a frame-error target as the first argument for tighter estimates.

use polar_hybrid::sim::{run_experiment, to_csv, DecoderVariant, ExperimentConfig};

fn main() -> polar_hybrid::Result<()> {
    let min_frame_errors = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("frame-error target"))
        .unwrap_or(20);
    let cfg = ExperimentConfig {
        snr_points: vec![2.0, 2.5, 3.0],
        decoders: vec![
            DecoderVariant::Sc,
            DecoderVariant::BpEs { max_iter: 60 },
            DecoderVariant::Hybrid { max_iter: 60 },
        ],
        min_frame_errors,
        max_frames: 20_000,
        seed: 3,
        verbose: true,
        ..ExperimentConfig::default()
    };
    let rows = run_experiment(&cfg)?;
    print!("\n{}", to_csv(&rows));
    Ok(())
}

//! Prints the cycle-latency model for the (1024,512) code.

use polar_hybrid::hybrid::{bp_cycles, latency_cycles, sc_cycles};
use polar_hybrid::{DecodeSource, LatencyParams};

fn main() -> polar_hybrid::Result<()> {
    let n = 1024;
    let params = LatencyParams::new(10, 3)?;
    println!(
        "SC, 8-bit output:              {:>4} cycles",
        sc_cycles(n, 3)?
    );
    for v in [10, 26, 60, 315] {
        println!(
            "BP, {v:>3} iterations:            {:>4} cycles",
            bp_cycles(v, params.m)
        );
    }
    println!(
        "Hybrid-60, BP stops at 20:     {:>4} cycles",
        latency_cycles(DecodeSource::BpEarly, 20, &params, n)?
    );
    println!(
        "Hybrid-60, SC fallback:        {:>4} cycles",
        latency_cycles(DecodeSource::ScFallback, 60, &params, n)?
    );
    Ok(())
}

//! BP front end with SC fallback, plus the cycle-latency model.
//!
//! A frame first goes through BP with early stopping. If BP finds a valid
//! codeword the result is returned as-is and SC never runs. Otherwise the
//! denoised `x`-side LLRs from the final BP state are decoded by SC.
//!
//! Latency is charged in clock cycles:
//!
//! * BP with `v` iterations: `2v + m`.
//! * SC with `2^k`-bit output: `n / 2^(k - 2)`.
//! * SC fallback: the full BP budget plus the SC term.

use crate::bp::{BpConfig, BpDecoder, BpOutput};
use crate::code::{extract_info_bits, CodeSpec};
use crate::error::{Error, Result};
use crate::sc::ScDecoder;

/// Default `k` in "`2^k`-bit output" for the SC back end (8-bit output).
pub const DEFAULT_SC_OUTPUT_BITS_LOG2: u32 = 3;

/// Which stage produced the final estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DecodeSource {
    BpEarly,
    ScFallback,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatencyParams {
    /// `log2(n)`.
    pub m: usize,
    /// `k` in "`2^k`-bit output SC".
    pub sc_output_bits_log2: u32,
}

impl LatencyParams {
    pub fn new(m: usize, sc_output_bits_log2: u32) -> Result<Self> {
        let params = Self {
            m,
            sc_output_bits_log2,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn for_code(spec: &CodeSpec) -> Self {
        Self {
            m: spec.m(),
            sc_output_bits_log2: DEFAULT_SC_OUTPUT_BITS_LOG2,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.sc_output_bits_log2 < 2 {
            return Err(Error::InvalidLatencyParams(format!(
                "SC output width 2^{} needs an exponent of at least 2",
                self.sc_output_bits_log2
            )));
        }
        if self.sc_output_bits_log2 as usize - 2 > self.m {
            return Err(Error::InvalidLatencyParams(format!(
                "SC output width 2^{} too wide for m = {}",
                self.sc_output_bits_log2, self.m
            )));
        }
        Ok(())
    }
}

/// `2v + m`.
pub fn bp_cycles(v: usize, m: usize) -> u64 {
    (2 * v + m) as u64
}

/// `n / 2^(k - 2)` for a `2^k`-bit output SC decoder.
pub fn sc_cycles(n: usize, sc_output_bits_log2: u32) -> Result<u64> {
    if !n.is_power_of_two() {
        return Err(Error::InvalidBlockLength(n));
    }
    LatencyParams::new(n.trailing_zeros() as usize, sc_output_bits_log2)?;
    Ok((n >> (sc_output_bits_log2 - 2)) as u64)
}

/// Cycles charged for one hybrid outcome. For `ScFallback`, `v` is the BP
/// iteration budget that was exhausted.
pub fn latency_cycles(
    source: DecodeSource,
    v: usize,
    params: &LatencyParams,
    n: usize,
) -> Result<u64> {
    if !n.is_power_of_two() {
        return Err(Error::InvalidBlockLength(n));
    }
    params.validate()?;
    if n.trailing_zeros() as usize != params.m {
        return Err(Error::InvalidLatencyParams(format!(
            "m = {} does not match n = {n}",
            params.m
        )));
    }
    let bp = bp_cycles(v, params.m);
    Ok(match source {
        DecodeSource::BpEarly => bp,
        DecodeSource::ScFallback => bp + sc_cycles(n, params.sc_output_bits_log2)?,
    })
}

/// Result of one hybrid decode.
#[derive(Debug, Clone, PartialEq)]
pub struct DecodeOutcome {
    pub u_hat: Vec<u8>,
    pub info_hat: Vec<u8>,
    pub source: DecodeSource,
    /// BP iterations spent.
    pub iterations: usize,
    pub cycles: u64,
}

/// Reusable hybrid decoder.
#[derive(Debug, Clone)]
pub struct HybridDecoder {
    bp: BpDecoder,
    sc: ScDecoder,
    latency: LatencyParams,
    sc_runs: u64,
}

impl HybridDecoder {
    pub fn new(spec: &CodeSpec, bp_config: BpConfig, latency: LatencyParams) -> Result<Self> {
        latency.validate()?;
        Ok(Self {
            bp: BpDecoder::new(spec, bp_config)?,
            sc: ScDecoder::new(spec),
            latency,
            sc_runs: 0,
        })
    }

    /// Number of frames that reached the SC back end so far.
    pub fn sc_runs(&self) -> u64 {
        self.sc_runs
    }

    pub fn decode(
        &mut self,
        llrs: &[f64],
        spec: &CodeSpec,
        max_iter: usize,
    ) -> Result<DecodeOutcome> {
        let bp = self.bp.decode(llrs, spec, max_iter)?;
        self.finish(bp, spec)
    }

    /// Like [`decode`](Self::decode) but also hands back the BP front-end
    /// output.
    pub fn decode_verbose(
        &mut self,
        llrs: &[f64],
        spec: &CodeSpec,
        max_iter: usize,
    ) -> Result<(DecodeOutcome, BpOutput)> {
        let bp = self.bp.decode(llrs, spec, max_iter)?;
        let outcome = self.finish(bp.clone(), spec)?;
        Ok((outcome, bp))
    }

    fn finish(&mut self, bp: BpOutput, spec: &CodeSpec) -> Result<DecodeOutcome> {
        let (u_hat, source) = if bp.stopped_early {
            (bp.u_hat, DecodeSource::BpEarly)
        } else {
            self.sc_runs += 1;
            (
                self.sc.decode(&bp.denoised_llrs, spec)?,
                DecodeSource::ScFallback,
            )
        };
        let cycles = latency_cycles(source, bp.iterations_used, &self.latency, spec.n())?;
        Ok(DecodeOutcome {
            info_hat: extract_info_bits(&u_hat, spec)?,
            u_hat,
            source,
            iterations: bp.iterations_used,
            cycles,
        })
    }
}

/// One-shot hybrid decode with default BP settings and 8-bit-output SC
/// latency.
pub fn hybrid_decode(llrs: &[f64], spec: &CodeSpec, max_iter: usize) -> Result<DecodeOutcome> {
    HybridDecoder::new(spec, BpConfig::default(), LatencyParams::for_code(spec))?
        .decode(llrs, spec, max_iter)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bp::bp_decode;
    use crate::code::{construct_frozen_set, encode};

    #[test]
    fn footnote_formulas() {
        assert_eq!(bp_cycles(60, 10), 130);
        assert_eq!(sc_cycles(1024, 3).unwrap(), 512);
        assert_eq!(sc_cycles(1024, 2).unwrap(), 1024);
        assert_eq!(sc_cycles(1024, 4).unwrap(), 256);
        let p = LatencyParams::new(10, 3).unwrap();
        assert_eq!(
            latency_cycles(DecodeSource::BpEarly, 60, &p, 1024).unwrap(),
            130
        );
        assert_eq!(
            latency_cycles(DecodeSource::ScFallback, 60, &p, 1024).unwrap(),
            642
        );
    }

    #[test]
    fn invalid_latency_params() {
        assert!(LatencyParams::new(10, 1).is_err());
        assert!(LatencyParams::new(2, 5).is_err());
        assert!(sc_cycles(1000, 3).is_err());
        let p = LatencyParams::new(10, 3).unwrap();
        assert!(latency_cycles(DecodeSource::BpEarly, 3, &p, 512).is_err());
    }

    #[test]
    fn cycle_ordering() {
        let p = LatencyParams::new(10, 3).unwrap();
        let max_iter = 60;
        let fallback = latency_cycles(DecodeSource::ScFallback, max_iter, &p, 1024).unwrap();
        let mut prev = None;
        for v in 0..=max_iter {
            let early = latency_cycles(DecodeSource::BpEarly, v, &p, 1024).unwrap();
            assert!(early < fallback);
            assert!(early <= 2 * max_iter as u64 + 10 + 512);
            if let Some(p) = prev {
                assert!(early > p);
            }
            prev = Some(early);
        }
    }

    #[test]
    fn noiseless_frame_stays_in_bp() {
        let spec = construct_frozen_set(64, 32, 0.5).unwrap();
        let mut u = vec![0u8; 64];
        for (n, i) in spec.info_positions().enumerate() {
            u[i] = (n % 3 == 0) as u8;
        }
        let x = encode(&u, &spec).unwrap();
        let llr: Vec<f64> = x.iter().map(|&b| if b == 0 { 5.0 } else { -5.0 }).collect();
        let mut dec =
            HybridDecoder::new(&spec, BpConfig::default(), LatencyParams::for_code(&spec)).unwrap();
        let out = dec.decode(&llr, &spec, 60).unwrap();
        assert_eq!(out.source, DecodeSource::BpEarly);
        assert_eq!(out.iterations, 1);
        assert_eq!(out.cycles, 2 + 6);
        assert_eq!(out.u_hat, u);
        assert_eq!(dec.sc_runs(), 0);
        let bp = bp_decode(&llr, &spec, 60).unwrap();
        assert_eq!(out.u_hat, bp.u_hat);
    }

    /// Deterministic scan over sign-flip patterns of a strong all-zero frame
    /// at n = 8 for one that BP cannot settle within `max_iter`.
    fn find_non_convergent(spec: &CodeSpec, max_iter: usize) -> Option<Vec<f64>> {
        let mags = [4.0, 3.0, 2.5, 1.0, 3.5, 0.5, 2.0, 1.5];
        (1u32..256).find_map(|pattern| {
            let llr: Vec<f64> = (0..8)
                .map(|i| {
                    if pattern >> i & 1 == 1 {
                        -mags[i]
                    } else {
                        mags[i]
                    }
                })
                .collect();
            let out = bp_decode(&llr, spec, max_iter).unwrap();
            (!out.stopped_early).then_some(llr)
        })
    }

    #[test]
    fn adversarial_frame_falls_back_to_sc() {
        let spec = construct_frozen_set(8, 4, 0.5).unwrap();
        let max_iter = 10;
        let llr = find_non_convergent(&spec, max_iter).expect("a non-convergent frame exists");
        let mut dec = HybridDecoder::new(
            &spec,
            BpConfig::default(),
            LatencyParams::new(3, 3).unwrap(),
        )
        .unwrap();
        let (out, bp) = dec.decode_verbose(&llr, &spec, max_iter).unwrap();
        assert_eq!(out.source, DecodeSource::ScFallback);
        assert_eq!(out.iterations, max_iter);
        assert_eq!(out.cycles, (2 * max_iter + 3) as u64 + 4);
        assert_eq!(dec.sc_runs(), 1);
        assert_eq!(
            out.u_hat,
            crate::sc::sc_decode(&bp.denoised_llrs, &spec).unwrap()
        );
    }
}

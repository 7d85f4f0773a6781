//! Functional model of the unified Type-I / Type-II processing elements.
//!
//! One Type-I block evaluates `s sign(a) sign(b + c) min(|a|, |b + c|)` and one
//! Type-II block evaluates `a + s sign(b) sign(c) min(|b|, |c|)`. Driving the
//! inputs appropriately turns them into the SC `f` and `g` nodes:
//!
//! * `f(a, b)` is Type-I with `s = 1` and `c = 0`.
//! * `g(a, b, u)` is Type-II with `s = sign(b)`, first input `(-1)^u a` and
//!   both remaining inputs tied to `b`.
//!
//! This is not a cycle simulator. [`schedule_modes`] only lists which blocks
//! fire, in which mode and how many at a time.

use crate::bp::{msg_type1, msg_type2, BpKernel};
use crate::error::{Error, Result};
use crate::sc::{sign, ScKernel};

/// Normalized PE count of the BP (and hybrid) array: `n/2` butterflies per
/// stage over `m` stages.
pub fn bp_pe_count(n: usize) -> usize {
    (n / 2) * n.trailing_zeros() as usize
}

/// Normalized PE count of the 8-bit-output SC decoder for length `n`.
pub fn sc_pe_count(n: usize) -> usize {
    n
}

/// Critical path of the unified array in adder delays.
pub const CRITICAL_PATH_ADDERS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PeMode {
    ScF,
    ScG,
    BpType1,
    BpType2,
}

/// Control inputs of one PE. `s` is only read in the BP modes; `ScF` forces
/// it to 1 and `ScG` derives it from the sign of its `b` operand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeConfig {
    pub mode: PeMode,
    pub s: f64,
    pub u_sum: u8,
}

impl PeConfig {
    pub fn sc_f() -> Self {
        Self {
            mode: PeMode::ScF,
            s: 1.0,
            u_sum: 0,
        }
    }

    pub fn sc_g(u_sum: u8) -> Self {
        Self {
            mode: PeMode::ScG,
            s: 1.0,
            u_sum,
        }
    }

    pub fn bp_type1(s: f64) -> Self {
        Self {
            mode: PeMode::BpType1,
            s,
            u_sum: 0,
        }
    }

    pub fn bp_type2(s: f64) -> Self {
        Self {
            mode: PeMode::BpType2,
            s,
            u_sum: 0,
        }
    }
}

#[inline]
fn type1_datapath(cfg: &PeConfig, a: f64, b: f64, c: f64) -> Option<f64> {
    match cfg.mode {
        PeMode::BpType1 => Some(msg_type1(cfg.s, a, b, c)),
        PeMode::ScF => Some(msg_type1(1.0, a, b, 0.0)),
        _ => None,
    }
}

#[inline]
fn type2_datapath(cfg: &PeConfig, a: f64, b: f64, c: f64) -> Option<f64> {
    match cfg.mode {
        PeMode::BpType2 => Some(msg_type2(cfg.s, a, b, c)),
        PeMode::ScG => {
            let flipped = if cfg.u_sum & 1 == 0 { a } else { -a };
            Some(msg_type2(sign(b), flipped, b, b))
        }
        _ => None,
    }
}

/// Type-I block. In `ScF` mode `c` is ignored.
pub fn unified_type1(cfg: &PeConfig, a: f64, b: f64, c: f64) -> Result<f64> {
    type1_datapath(cfg, a, b, c).ok_or(Error::ModeMismatch {
        mode: cfg.mode,
        block: "Type-I",
    })
}

/// Type-II block. In `ScG` mode `a`, `b` are the SC operands and `c` is
/// ignored.
pub fn unified_type2(cfg: &PeConfig, a: f64, b: f64, c: f64) -> Result<f64> {
    type2_datapath(cfg, a, b, c).ok_or(Error::ModeMismatch {
        mode: cfg.mode,
        block: "Type-II",
    })
}

/// Routes SC node evaluations through the unified blocks and counts them.
#[derive(Debug, Default, Clone)]
pub struct UnifiedScKernel {
    pub type1_activations: u64,
    pub type2_activations: u64,
}

impl ScKernel for UnifiedScKernel {
    #[inline]
    fn f(&mut self, a: f64, b: f64) -> f64 {
        self.type1_activations += 1;
        unified_type1(&PeConfig::sc_f(), a, b, 0.0).expect("ScF drives a Type-I block")
    }

    #[inline]
    fn g(&mut self, a: f64, b: f64, u_sum: u8) -> f64 {
        self.type2_activations += 1;
        unified_type2(&PeConfig::sc_g(u_sum), a, b, 0.0).expect("ScG drives a Type-II block")
    }
}

/// Routes BP node evaluations through the unified blocks and counts them.
#[derive(Debug, Default, Clone)]
pub struct UnifiedBpKernel {
    pub type1_activations: u64,
    pub type2_activations: u64,
}

impl BpKernel for UnifiedBpKernel {
    #[inline]
    fn type1(&mut self, s: f64, in1: f64, in2: f64, in3: f64) -> f64 {
        self.type1_activations += 1;
        unified_type1(&PeConfig::bp_type1(s), in1, in2, in3).expect("BpType1 drives a Type-I block")
    }

    #[inline]
    fn type2(&mut self, s: f64, in1: f64, in2: f64, in3: f64) -> f64 {
        self.type2_activations += 1;
        unified_type2(&PeConfig::bp_type2(s), in1, in2, in3)
            .expect("BpType2 drives a Type-II block")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecoderKind {
    Sc,
    Bp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sweep {
    RightToLeft,
    LeftToRight,
}

/// One control step of the decoder FSM.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScheduleStep {
    /// `activations` blocks fire in `mode` at `stage`.
    Pe {
        mode: PeMode,
        stage: usize,
        activations: usize,
        sweep: Option<Sweep>,
    },
    /// Hard decision on `u[index]`.
    Decide { index: usize },
}

/// Mode plan for one SC decode or one BP iteration.
///
/// SC stages count block sizes: splitting a block of length `2^t` happens at
/// stage `t`. BP stages are the butterfly columns `0..m` of the factor graph;
/// the plan lists the left pass then the right pass in round-trip stage
/// order. Activation counts are the same under every BP schedule.
pub fn schedule_modes(decoder: DecoderKind, n: usize) -> Result<Vec<ScheduleStep>> {
    if n < 2 || !n.is_power_of_two() {
        return Err(Error::InvalidBlockLength(n));
    }
    let m = n.trailing_zeros() as usize;
    let mut steps = Vec::new();
    match decoder {
        DecoderKind::Sc => sc_schedule(m, 0, &mut steps),
        DecoderKind::Bp => {
            for (sweep, stages) in [
                (Sweep::RightToLeft, (0..m).rev().collect::<Vec<_>>()),
                (Sweep::LeftToRight, (0..m).collect()),
            ] {
                for stage in stages {
                    for mode in [PeMode::BpType1, PeMode::BpType2] {
                        steps.push(ScheduleStep::Pe {
                            mode,
                            stage,
                            activations: n / 2,
                            sweep: Some(sweep),
                        });
                    }
                }
            }
        }
    }
    Ok(steps)
}

fn sc_schedule(t: usize, first_index: usize, steps: &mut Vec<ScheduleStep>) {
    if t == 0 {
        steps.push(ScheduleStep::Decide { index: first_index });
        return;
    }
    let h = 1usize << (t - 1);
    for (mode, offset) in [(PeMode::ScF, 0), (PeMode::ScG, h)] {
        steps.push(ScheduleStep::Pe {
            mode,
            stage: t,
            activations: h,
            sweep: None,
        });
        sc_schedule(t - 1, first_index + offset, steps);
    }
}

/// Total PE activations of a schedule, per mode.
pub fn count_activations(steps: &[ScheduleStep], mode: PeMode) -> usize {
    steps
        .iter()
        .map(|s| match s {
            ScheduleStep::Pe {
                mode: m,
                activations,
                ..
            } if *m == mode => *activations,
            _ => 0,
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::construct_frozen_set;
    use crate::sc::{f_node, g_node, ScDecoder};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn type1_examples() {
        assert_eq!(
            unified_type1(&PeConfig::sc_f(), 2.0, -3.0, 99.0).unwrap(),
            -2.0
        );
        assert_eq!(
            unified_type1(&PeConfig::bp_type1(1.0), 2.0, 1.0, 2.0).unwrap(),
            2.0
        );
    }

    #[test]
    fn type2_examples() {
        assert_eq!(
            unified_type2(&PeConfig::sc_g(1), 1.5, 2.0, 99.0).unwrap(),
            0.5
        );
        assert_eq!(
            unified_type2(&PeConfig::bp_type2(1.0), 1.0, 2.0, -3.0).unwrap(),
            -1.0
        );
        assert_eq!(
            unified_type2(&PeConfig::sc_g(0), 1.25, 0.0, 0.0).unwrap(),
            1.25
        );
        assert_eq!(
            unified_type2(&PeConfig::sc_g(1), 1.25, 0.0, 0.0).unwrap(),
            -1.25
        );
    }

    #[test]
    fn mode_mismatch() {
        assert!(matches!(
            unified_type1(&PeConfig::sc_g(0), 1.0, 1.0, 1.0),
            Err(Error::ModeMismatch {
                mode: PeMode::ScG,
                ..
            })
        ));
        assert!(matches!(
            unified_type2(&PeConfig::bp_type1(1.0), 1.0, 1.0, 1.0),
            Err(Error::ModeMismatch {
                mode: PeMode::BpType1,
                ..
            })
        ));
    }

    #[test]
    fn sc_modes_agree_with_reference_nodes() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for _ in 0..100_000 {
            let a: f64 = rng.random_range(-20.0..20.0);
            let b: f64 = rng.random_range(-20.0..20.0);
            let u: u8 = rng.random_range(0..2);
            let f = unified_type1(&PeConfig::sc_f(), a, b, 0.0).unwrap();
            let t1 = unified_type1(&PeConfig::bp_type1(1.0), a, b, 0.0).unwrap();
            assert_eq!(f.to_bits(), f_node(a, b).to_bits());
            assert_eq!(f.to_bits(), t1.to_bits());
            let g = unified_type2(&PeConfig::sc_g(u), a, b, 0.0).unwrap();
            assert_eq!(g.to_bits(), g_node(a, b, u).to_bits());
        }
    }

    #[test]
    fn sc_schedule_n2() {
        let steps = schedule_modes(DecoderKind::Sc, 2).unwrap();
        assert_eq!(
            steps,
            [
                ScheduleStep::Pe {
                    mode: PeMode::ScF,
                    stage: 1,
                    activations: 1,
                    sweep: None
                },
                ScheduleStep::Decide { index: 0 },
                ScheduleStep::Pe {
                    mode: PeMode::ScG,
                    stage: 1,
                    activations: 1,
                    sweep: None
                },
                ScheduleStep::Decide { index: 1 },
            ]
        );
    }

    #[test]
    fn bp_schedule_n2() {
        let steps = schedule_modes(DecoderKind::Bp, 2).unwrap();
        let pe = |mode, sweep| ScheduleStep::Pe {
            mode,
            stage: 0,
            activations: 1,
            sweep: Some(sweep),
        };
        assert_eq!(
            steps,
            [
                pe(PeMode::BpType1, Sweep::RightToLeft),
                pe(PeMode::BpType2, Sweep::RightToLeft),
                pe(PeMode::BpType1, Sweep::LeftToRight),
                pe(PeMode::BpType2, Sweep::LeftToRight),
            ]
        );
    }

    #[test]
    fn sc_schedule_n8_counts() {
        let steps = schedule_modes(DecoderKind::Sc, 8).unwrap();
        // Stage 3 fires once (4 PEs), stage 2 twice (2 PEs), stage 1 four
        // times (1 PE), for both f and g.
        assert_eq!(count_activations(&steps, PeMode::ScF), 4 + 2 * 2 + 4);
        assert_eq!(count_activations(&steps, PeMode::ScG), 12);
        let decided: Vec<usize> = steps
            .iter()
            .filter_map(|s| match s {
                ScheduleStep::Decide { index } => Some(*index),
                _ => None,
            })
            .collect();
        assert_eq!(decided, (0..8).collect::<Vec<_>>());

        let spec = construct_frozen_set(8, 4, 0.5).unwrap();
        let mut kernel = UnifiedScKernel::default();
        ScDecoder::new(&spec)
            .decode_with(
                &mut kernel,
                &[1.0, -0.5, 2.0, 0.3, -1.0, 0.9, 1.1, 0.2],
                &spec,
            )
            .unwrap();
        assert_eq!(kernel.type1_activations, 12);
        assert_eq!(kernel.type2_activations, 12);
    }

    #[test]
    fn schedule_rejects_bad_length() {
        assert!(schedule_modes(DecoderKind::Sc, 6).is_err());
        assert!(schedule_modes(DecoderKind::Bp, 1).is_err());
    }

    #[test]
    fn table_constants() {
        assert_eq!(bp_pe_count(1024), 5120);
        assert_eq!(sc_pe_count(1024), 1024);
    }
}

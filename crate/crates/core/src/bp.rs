//! Min-sum belief propagation on the polar factor graph with early stopping.
//!
//! The graph has `m + 1` columns. Column 0 is the `u` side, column `m` the
//! `x` side. Stage `s` connects column `s` to column `s + 1` with butterflies
//! on index pairs `(j, j + 2^s)`. Two message grids are kept:
//!
//! * `left[s][i]`: messages travelling toward `u`; `left[m]` is pinned to the
//!   channel LLRs.
//! * `right[s][i]`: messages travelling toward `x`; `right[0]` is pinned to
//!   the frozen-bit priors.
//!
//! One iteration refreshes every left message, then every right message.
//! The [`Schedule`] decides whether a stage sees messages refreshed earlier
//! in the same iteration or only those from the previous one.

use crate::code::{polar_transform_in_place, CodeSpec};
use crate::error::{Error, Result};
use crate::sc::sign;

/// Default saturation bound for every message.
pub const DEFAULT_SATURATION: f64 = 20.0;

/// Scaled min-sum with a sum on the second operand:
/// `s sign(in1) sign(in2 + in3) min(|in1|, |in2 + in3|)`.
#[inline]
pub fn msg_type1(s: f64, in1: f64, in2: f64, in3: f64) -> f64 {
    let sum = in2 + in3;
    s * sign(in1) * sign(sum) * in1.abs().min(sum.abs())
}

/// Additive combination: `in1 + s sign(in2) sign(in3) min(|in2|, |in3|)`.
#[inline]
pub fn msg_type2(s: f64, in1: f64, in2: f64, in3: f64) -> f64 {
    in1 + s * sign(in2) * sign(in3) * in2.abs().min(in3.abs())
}

/// The two node computations a BP sweep needs.
pub trait BpKernel {
    fn type1(&mut self, s: f64, in1: f64, in2: f64, in3: f64) -> f64;
    fn type2(&mut self, s: f64, in1: f64, in2: f64, in3: f64) -> f64;
}

/// [`msg_type1`] and [`msg_type2`] directly.
#[derive(Debug, Default, Clone, Copy)]
pub struct MinSumBpKernel;

impl BpKernel for MinSumBpKernel {
    #[inline]
    fn type1(&mut self, s: f64, in1: f64, in2: f64, in3: f64) -> f64 {
        msg_type1(s, in1, in2, in3)
    }

    #[inline]
    fn type2(&mut self, s: f64, in1: f64, in2: f64, in3: f64) -> f64 {
        msg_type2(s, in1, in2, in3)
    }
}

/// Order in which stages are refreshed within one iteration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Schedule {
    /// Left messages sweep from the `x` side to the `u` side, each stage
    /// consuming the one just refreshed. Right messages are then refreshed
    /// in parallel from the previous iteration's right messages.
    #[default]
    LeftSweep,
    /// Both directions sweep: a chained right-to-left pass, then a chained
    /// left-to-right pass.
    RoundTrip,
    /// Every stage in both directions reads only the previous iteration's
    /// messages, so information advances one stage per half-iteration.
    Flooding,
}

impl Schedule {
    pub fn name(self) -> &'static str {
        match self {
            Schedule::LeftSweep => "left-sweep",
            Schedule::RoundTrip => "round-trip",
            Schedule::Flooding => "flooding",
        }
    }
}

impl std::str::FromStr for Schedule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('_', "-").as_str() {
            "left-sweep" => Ok(Schedule::LeftSweep),
            "round-trip" => Ok(Schedule::RoundTrip),
            "flooding" => Ok(Schedule::Flooding),
            other => Err(Error::Config(format!("unknown BP schedule {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BpConfig {
    pub schedule: Schedule,
    /// Scale `s` applied to every min-sum term.
    pub scale: f64,
    /// Magnitude bound applied after every node update.
    pub saturation: f64,
    /// Prior written at frozen `u` positions before clamping.
    pub frozen_prior: f64,
}

impl Default for BpConfig {
    fn default() -> Self {
        Self {
            schedule: Schedule::LeftSweep,
            scale: 1.0,
            saturation: DEFAULT_SATURATION,
            frozen_prior: 2.0 * DEFAULT_SATURATION,
        }
    }
}

impl BpConfig {
    pub fn with_scale(scale: f64) -> Self {
        Self {
            scale,
            ..Self::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.scale > 0.0 && self.scale <= 1.0) {
            return Err(Error::Config(format!(
                "BP scale must lie in (0, 1], got {}",
                self.scale
            )));
        }
        if !(self.saturation > 0.0 && self.saturation.is_finite()) {
            return Err(Error::Config(format!(
                "saturation bound must be positive and finite, got {}",
                self.saturation
            )));
        }
        Ok(())
    }
}

#[inline]
fn clamp(x: f64, bound: f64) -> f64 {
    x.clamp(-bound, bound)
}

/// Message grids of one BP decode.
#[derive(Debug, Clone)]
pub struct BpState {
    n: usize,
    m: usize,
    config: BpConfig,
    left: Vec<f64>,
    right: Vec<f64>,
    channel_llrs: Vec<f64>,
    iteration: usize,
}

impl BpState {
    /// Zero messages except the pinned boundaries: saturated channel LLRs on
    /// the right, saturated frozen priors on the left.
    pub fn new(llrs: &[f64], spec: &CodeSpec, config: BpConfig) -> Result<Self> {
        config.validate()?;
        let n = spec.n();
        let m = spec.m();
        let mut state = Self {
            n,
            m,
            config,
            left: vec![0.0; (m + 1) * n],
            right: vec![0.0; (m + 1) * n],
            channel_llrs: Vec::new(),
            iteration: 0,
        };
        state.reset(llrs, spec)?;
        Ok(state)
    }

    /// Reinitializes for a new frame, reusing the allocation.
    pub fn reset(&mut self, llrs: &[f64], spec: &CodeSpec) -> Result<()> {
        if llrs.len() != spec.n() {
            return Err(Error::LengthMismatch {
                expected: spec.n(),
                got: llrs.len(),
            });
        }
        let (n, m) = (spec.n(), spec.m());
        if self.n != n {
            self.n = n;
            self.m = m;
            self.left = vec![0.0; (m + 1) * n];
            self.right = vec![0.0; (m + 1) * n];
        } else {
            self.left.fill(0.0);
            self.right.fill(0.0);
        }
        let bound = self.config.saturation;
        let prior = clamp(self.config.frozen_prior, bound);
        for (r, &frozen) in self.right[..n].iter_mut().zip(spec.frozen()) {
            *r = if frozen { prior } else { 0.0 };
        }
        for (l, &c) in self.left[m * n..].iter_mut().zip(llrs) {
            *l = clamp(c, bound);
        }
        self.channel_llrs.clear();
        self.channel_llrs.extend_from_slice(llrs);
        self.iteration = 0;
        Ok(())
    }

    pub fn iteration(&self) -> usize {
        self.iteration
    }

    pub fn config(&self) -> &BpConfig {
        &self.config
    }

    pub fn channel_llrs(&self) -> &[f64] {
        &self.channel_llrs
    }

    /// Left-propagating messages at column `col`.
    pub fn left(&self, col: usize) -> &[f64] {
        &self.left[col * self.n..(col + 1) * self.n]
    }

    /// Right-propagating messages at column `col`.
    pub fn right(&self, col: usize) -> &[f64] {
        &self.right[col * self.n..(col + 1) * self.n]
    }

    /// Largest message magnitude anywhere in either grid.
    pub fn max_magnitude(&self) -> f64 {
        self.left
            .iter()
            .chain(&self.right)
            .fold(0.0, |acc: f64, v| acc.max(v.abs()))
    }

    /// Beliefs on `u`: incoming left messages plus the priors.
    pub fn u_llrs(&self) -> Vec<f64> {
        self.left(0)
            .iter()
            .zip(self.right(0))
            .map(|(l, r)| l + r)
            .collect()
    }

    fn sweep<K: BpKernel>(&mut self, kernel: &mut K) {
        let (n, m) = (self.n, self.m);
        let s_scale = self.config.scale;
        let bound = self.config.saturation;

        // Stage s writes left[s] from left[s + 1] and right[s + 1] from
        // right[s]. Visiting stages against the data flow means each one
        // still reads the previous iteration's input.
        let chained_left = self.config.schedule != Schedule::Flooding;
        let chained_right = self.config.schedule == Schedule::RoundTrip;
        let left_order: Vec<usize> = if chained_left {
            (0..m).rev().collect()
        } else {
            (0..m).collect()
        };
        let right_order: Vec<usize> = if chained_right {
            (0..m).collect()
        } else {
            (0..m).rev().collect()
        };

        // refresh left[s] from left[s + 1] and right[s]
        for &stage in &left_order {
            let h = 1usize << stage;
            let (head, tail) = self.left.split_at_mut((stage + 1) * n);
            let out = &mut head[stage * n..];
            let from = &tail[..n];
            let prior = &self.right[stage * n..(stage + 1) * n];
            for base in (0..n).step_by(2 * h) {
                for j in base..base + h {
                    out[j] = clamp(
                        kernel.type1(s_scale, from[j], from[j + h], prior[j + h]),
                        bound,
                    );
                    out[j + h] =
                        clamp(kernel.type2(s_scale, from[j + h], from[j], prior[j]), bound);
                }
            }
        }

        // refresh right[s + 1] from right[s] and left[s + 1]
        for &stage in &right_order {
            let h = 1usize << stage;
            let (head, tail) = self.right.split_at_mut((stage + 1) * n);
            let from = &head[stage * n..];
            let out = &mut tail[..n];
            let incoming = &self.left[(stage + 1) * n..(stage + 2) * n];
            for base in (0..n).step_by(2 * h) {
                for j in base..base + h {
                    out[j] = clamp(
                        kernel.type1(s_scale, from[j], incoming[j + h], from[j + h]),
                        bound,
                    );
                    out[j + h] = clamp(
                        kernel.type2(s_scale, from[j + h], from[j], incoming[j]),
                        bound,
                    );
                }
            }
        }
        self.iteration += 1;
    }
}

/// Runs one iteration in place under the state's schedule.
pub fn bp_iteration(state: &mut BpState) {
    state.sweep(&mut MinSumBpKernel);
}

/// Channel LLR plus the extrinsic belief the graph returns to the `x` side.
pub fn extract_denoised(state: &BpState) -> Result<Vec<f64>> {
    if state.iteration == 0 {
        return Err(Error::NoIteration);
    }
    Ok(state
        .channel_llrs
        .iter()
        .zip(state.right(state.m))
        .map(|(c, r)| c + r)
        .collect())
}

/// G-matrix criterion: true iff re-encoding `u_hat` reproduces `x_hat`.
pub fn stop_check(u_hat: &[u8], x_hat: &[u8], spec: &CodeSpec) -> Result<bool> {
    for v in [u_hat, x_hat] {
        if v.len() != spec.n() {
            return Err(Error::LengthMismatch {
                expected: spec.n(),
                got: v.len(),
            });
        }
    }
    let mut reencoded = u_hat.to_vec();
    polar_transform_in_place(&mut reencoded);
    Ok(reencoded == x_hat)
}

/// Result of a BP decode.
#[derive(Debug, Clone, PartialEq)]
pub struct BpOutput {
    pub u_hat: Vec<u8>,
    pub x_hat: Vec<u8>,
    pub denoised_llrs: Vec<f64>,
    pub iterations_used: usize,
    pub stopped_early: bool,
}

/// Reusable BP decoder.
#[derive(Debug, Clone)]
pub struct BpDecoder {
    state: BpState,
    u_hat: Vec<u8>,
    x_hat: Vec<u8>,
    scratch: Vec<u8>,
}

impl BpDecoder {
    pub fn new(spec: &CodeSpec, config: BpConfig) -> Result<Self> {
        let n = spec.n();
        Ok(Self {
            state: BpState::new(&vec![0.0; n], spec, config)?,
            u_hat: vec![0; n],
            x_hat: vec![0; n],
            scratch: vec![0; n],
        })
    }

    pub fn state(&self) -> &BpState {
        &self.state
    }

    /// Decodes with the G-matrix early-stopping check after every iteration.
    pub fn decode(&mut self, llrs: &[f64], spec: &CodeSpec, max_iter: usize) -> Result<BpOutput> {
        self.decode_with(&mut MinSumBpKernel, llrs, spec, max_iter, true)
    }

    /// Always runs `max_iter` iterations and decides on the final beliefs.
    pub fn decode_fixed(
        &mut self,
        llrs: &[f64],
        spec: &CodeSpec,
        max_iter: usize,
    ) -> Result<BpOutput> {
        self.decode_with(&mut MinSumBpKernel, llrs, spec, max_iter, false)
    }

    pub fn decode_with<K: BpKernel>(
        &mut self,
        kernel: &mut K,
        llrs: &[f64],
        spec: &CodeSpec,
        max_iter: usize,
        early_stopping: bool,
    ) -> Result<BpOutput> {
        if max_iter == 0 {
            return Err(Error::ZeroIterations);
        }
        self.state.reset(llrs, spec)?;
        let n = spec.n();
        if self.u_hat.len() != n {
            self.u_hat = vec![0; n];
            self.x_hat = vec![0; n];
            self.scratch = vec![0; n];
        }
        let mut stopped_early = false;
        while self.state.iteration < max_iter {
            self.state.sweep(kernel);
            if early_stopping || self.state.iteration == max_iter {
                self.hard_decide(spec);
            }
            if early_stopping && self.converged() {
                stopped_early = true;
                break;
            }
        }
        Ok(BpOutput {
            u_hat: self.u_hat.clone(),
            x_hat: self.x_hat.clone(),
            denoised_llrs: extract_denoised(&self.state)?,
            iterations_used: self.state.iteration,
            stopped_early,
        })
    }

    fn hard_decide(&mut self, spec: &CodeSpec) {
        let st = &self.state;
        let m = st.m;
        for (i, u) in self.u_hat.iter_mut().enumerate() {
            *u = if spec.is_frozen(i) {
                0
            } else {
                u8::from(st.left(0)[i] + st.right(0)[i] < 0.0)
            };
        }
        for (i, x) in self.x_hat.iter_mut().enumerate() {
            *x = u8::from(st.channel_llrs[i] + st.right(m)[i] < 0.0);
        }
    }

    fn converged(&mut self) -> bool {
        self.scratch.copy_from_slice(&self.u_hat);
        polar_transform_in_place(&mut self.scratch);
        self.scratch == self.x_hat
    }
}

/// One-shot BP decode with early stopping and default settings.
pub fn bp_decode(llrs: &[f64], spec: &CodeSpec, max_iter: usize) -> Result<BpOutput> {
    BpDecoder::new(spec, BpConfig::default())?.decode(llrs, spec, max_iter)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{construct_frozen_set, encode, insert_info_bits};
    use crate::sc::{f_node, g_node};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn type1_examples() {
        assert_eq!(msg_type1(1.0, 2.0, 1.0, 2.0), 2.0);
        assert_eq!(msg_type1(0.9375, -4.0, 1.0, 1.0), -1.875);
        assert_eq!(msg_type1(1.0, 2.0, -3.0, 0.0), f_node(2.0, -3.0));
    }

    #[test]
    fn type2_examples() {
        assert_eq!(msg_type2(1.0, 1.0, 2.0, -3.0), -1.0);
        assert_eq!(msg_type2(1.0, 0.0, 5.0, 5.0), 5.0);
        assert_eq!(msg_type2(sign(2.0), -1.5, 2.0, 2.0), g_node(1.5, 2.0, 1));
    }

    #[test]
    fn reduction_identities_are_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..100_000 {
            let a: f64 = rng.random_range(-25.0..25.0);
            let mut b: f64 = rng.random_range(-25.0..25.0);
            if b == 0.0 {
                b = 1.0;
            }
            let u: u8 = rng.random_range(0..2);
            assert_eq!(msg_type1(1.0, a, b, 0.0).to_bits(), f_node(a, b).to_bits());
            let flipped = if u == 0 { a } else { -a };
            assert_eq!(
                msg_type2(sign(b), flipped, b, b).to_bits(),
                g_node(a, b, u).to_bits()
            );
        }
    }

    #[test]
    fn stop_check_examples() {
        let spec2 = CodeSpec::from_frozen_mask(vec![false; 2], 0.5).unwrap();
        assert!(stop_check(&[1, 1], &[0, 1], &spec2).unwrap());
        let spec = construct_frozen_set(8, 4, 0.5).unwrap();
        assert!(stop_check(&[0; 8], &[0; 8], &spec).unwrap());
        assert!(!stop_check(&[0; 8], &[1, 0, 0, 0, 0, 0, 0, 0], &spec).unwrap());
        assert!(stop_check(&[0; 4], &[0; 8], &spec).is_err());
    }

    #[test]
    fn stop_check_agrees_with_encoder() {
        let spec = construct_frozen_set(16, 8, 0.5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let mut u = vec![0u8; 16];
            for i in spec.info_positions() {
                u[i] = rng.random_range(0..2);
            }
            let x = encode(&u, &spec).unwrap();
            assert!(stop_check(&u, &x, &spec).unwrap());
            let mut y = x.clone();
            let flip = rng.random_range(0..16);
            y[flip] ^= 1;
            assert!(!stop_check(&u, &y, &spec).unwrap());
        }
    }

    #[test]
    fn one_sweep_all_zero_n4() {
        let spec = construct_frozen_set(4, 2, 0.5).unwrap();
        let l = 3.0;
        let mut state = BpState::new(&[l; 4], &spec, BpConfig::default()).unwrap();
        bp_iteration(&mut state);
        // Hand trace with frozen = {0, 1}: stage 1 has no priors yet, so each
        // f sees (3, 3) and each g adds f(3, 0) = 0. At stage 0 only the
        // lower node of the frozen pair picks up min(3, 20).
        assert_eq!(state.left(1), [3.0, 3.0, 3.0, 3.0]);
        assert_eq!(state.left(0), [3.0, 6.0, 3.0, 3.0]);
        for v in state.u_llrs() {
            assert!(v >= l);
        }
    }

    #[test]
    fn zero_frame_all_free_stays_zero() {
        let spec = CodeSpec::from_frozen_mask(vec![false; 16], 0.5).unwrap();
        let mut state = BpState::new(&[0.0; 16], &spec, BpConfig::default()).unwrap();
        for _ in 0..5 {
            bp_iteration(&mut state);
        }
        assert_eq!(state.max_magnitude(), 0.0);
    }

    #[test]
    fn saturation_bound_holds() {
        let spec = construct_frozen_set(64, 32, 0.5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let llr: Vec<f64> = (0..64).map(|_| rng.random_range(-60.0..60.0)).collect();
        let mut state = BpState::new(&llr, &spec, BpConfig::default()).unwrap();
        assert!(state.max_magnitude() <= DEFAULT_SATURATION);
        for _ in 0..10 {
            bp_iteration(&mut state);
            assert!(state.max_magnitude() <= DEFAULT_SATURATION);
        }
    }

    #[test]
    fn noiseless_stops_after_one_iteration() {
        let spec = construct_frozen_set(8, 4, 0.5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..16 {
            let mut u = vec![0u8; 8];
            for i in spec.info_positions() {
                u[i] = rng.random_range(0..2);
            }
            let x = encode(&u, &spec).unwrap();
            let llr: Vec<f64> = x.iter().map(|&b| if b == 0 { 4.0 } else { -4.0 }).collect();
            let out = bp_decode(&llr, &spec, 60).unwrap();
            assert!(out.stopped_early);
            assert_eq!(out.iterations_used, 1);
            assert_eq!(out.u_hat, u);
            assert_eq!(out.x_hat, x);
        }
    }

    #[test]
    fn erasure_frame_is_pinned() {
        let spec = construct_frozen_set(16, 8, 0.5).unwrap();
        let out = bp_decode(&[0.0; 16], &spec, 60).unwrap();
        assert!(out.stopped_early);
        assert_eq!(out.iterations_used, 1);
        assert_eq!(out.u_hat, vec![0; 16]);
        assert_eq!(out.x_hat, vec![0; 16]);
    }

    #[test]
    fn all_zero_frame_is_fixed_point() {
        let spec = construct_frozen_set(32, 16, 0.5).unwrap();
        let mut dec = BpDecoder::new(&spec, BpConfig::default()).unwrap();
        let out = dec.decode_fixed(&[2.5; 32], &spec, 20).unwrap();
        assert_eq!(out.u_hat, vec![0; 32]);
        assert_eq!(out.iterations_used, 20);
        assert!(!out.stopped_early);
    }

    #[test]
    fn decode_errors() {
        let spec = construct_frozen_set(8, 4, 0.5).unwrap();
        assert_eq!(bp_decode(&[1.0; 8], &spec, 0), Err(Error::ZeroIterations));
        assert!(matches!(
            bp_decode(&[1.0; 7], &spec, 5),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(BpDecoder::new(&spec, BpConfig::with_scale(0.0)).is_err());
    }

    #[test]
    fn denoised_needs_an_iteration() {
        let spec = construct_frozen_set(8, 4, 0.5).unwrap();
        let state = BpState::new(&[1.0; 8], &spec, BpConfig::default()).unwrap();
        assert_eq!(extract_denoised(&state), Err(Error::NoIteration));
    }

    #[test]
    fn denoised_dominates_channel_for_all_zero_frame() {
        let spec = construct_frozen_set(8, 4, 0.5).unwrap();
        let llr = [1.0, 2.0, 0.5, 3.0, 1.5, 2.5, 0.7, 4.0];
        let mut state = BpState::new(&llr, &spec, BpConfig::default()).unwrap();
        // right messages need m + 1 iterations to reach the x side
        for _ in 0..=spec.m() {
            for _ in 0..=spec.m() {
                bp_iteration(&mut state);
            }
        }
        let denoised = extract_denoised(&state).unwrap();
        for (d, c) in denoised.iter().zip(&llr) {
            assert!(d >= c);
        }
    }

    #[test]
    fn denoised_corrects_single_flip() {
        let spec = construct_frozen_set(8, 4, 0.5).unwrap();
        for flip in 0..8 {
            let mut llr = [6.0; 8];
            llr[flip] = -6.0;
            let mut state = BpState::new(&llr, &spec, BpConfig::default()).unwrap();
            for _ in 0..=spec.m() {
                bp_iteration(&mut state);
            }
            let denoised = extract_denoised(&state).unwrap();
            assert!(denoised[flip] > 0.0, "flip {flip}: {denoised:?}");
        }
    }

    #[test]
    fn iterations_never_exceed_max() {
        let spec = construct_frozen_set(64, 32, 0.5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let mut dec = BpDecoder::new(&spec, BpConfig::default()).unwrap();
        for max_iter in 1..12 {
            let llr: Vec<f64> = (0..64).map(|_| rng.random_range(-2.0..3.0)).collect();
            let out = dec.decode(&llr, &spec, max_iter).unwrap();
            assert!(out.iterations_used >= 1 && out.iterations_used <= max_iter);
            if out.stopped_early {
                assert_eq!(encode(&out.u_hat, &spec).unwrap(), out.x_hat);
            } else {
                assert_eq!(out.iterations_used, max_iter);
            }
        }
    }

    #[test]
    fn schedule_names_round_trip() {
        for sched in [Schedule::LeftSweep, Schedule::RoundTrip, Schedule::Flooding] {
            assert_eq!(sched.name().parse::<Schedule>().unwrap(), sched);
        }
        assert_eq!(
            "Round_Trip".parse::<Schedule>().unwrap(),
            Schedule::RoundTrip
        );
        assert!("zigzag".parse::<Schedule>().is_err());
    }

    #[test]
    fn first_left_pass_matches_round_trip() {
        let spec = construct_frozen_set(16, 8, 0.5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let llr: Vec<f64> = (0..16).map(|_| rng.random_range(-3.0..4.0)).collect();
        let config = |schedule| BpConfig {
            schedule,
            ..BpConfig::default()
        };
        let mut a = BpState::new(&llr, &spec, config(Schedule::LeftSweep)).unwrap();
        let mut b = BpState::new(&llr, &spec, config(Schedule::RoundTrip)).unwrap();
        bp_iteration(&mut a);
        bp_iteration(&mut b);
        for col in 0..=spec.m() {
            assert_eq!(a.left(col), b.left(col));
        }
        // only the first right stage has fresh input on the first pass
        assert_eq!(a.right(1), b.right(1));
        assert!(a.right(spec.m()).iter().all(|&r| r == 0.0));
    }

    #[test]
    fn every_schedule_decodes_clean_frames() {
        let spec = construct_frozen_set(64, 32, 0.5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for schedule in [Schedule::LeftSweep, Schedule::RoundTrip, Schedule::Flooding] {
            let config = BpConfig {
                schedule,
                ..BpConfig::default()
            };
            let mut dec = BpDecoder::new(&spec, config).unwrap();
            for _ in 0..20 {
                let info: Vec<u8> = (0..32).map(|_| rng.random_range(0..2)).collect();
                let u = insert_info_bits(&info, &spec).unwrap();
                let x = encode(&u, &spec).unwrap();
                let llr: Vec<f64> = x.iter().map(|&b| if b == 0 { 8.0 } else { -8.0 }).collect();
                let out = dec.decode(&llr, &spec, 60).unwrap();
                assert!(out.stopped_early, "{schedule:?}");
                assert_eq!(out.u_hat, u, "{schedule:?}");
            }
        }
    }
}

//! Monte Carlo FER/BER/latency sweeps.
//!
//! Every trial draws its own RNG from `(master seed, Eb/N0, trial index)`, so
//! all decoders at one SNR point see the same frames and results do not
//! depend on how trials are spread over worker threads. Trials run in
//! batches; after each batch the outcomes are folded in trial order and the
//! point stops at the exact trial where the frame-error target or frame cap
//! is reached.

use std::collections::BTreeMap;
use std::fmt;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bp::{BpConfig, BpDecoder, Schedule};
use crate::channel::{add_awgn_with, llr_from_observation, modulate_bpsk, ChannelParams};
use crate::code::{construct_frozen_set, encode, extract_info_bits, insert_info_bits, CodeSpec};
use crate::error::{Error, Result};
use crate::hybrid::{
    bp_cycles, sc_cycles, HybridDecoder, LatencyParams, DEFAULT_SC_OUTPUT_BITS_LOG2,
};
use crate::sc::ScDecoder;

/// CSV header, in column order.
pub const CSV_HEADER: &str =
    "decoder,snr_db,frames,frame_errors,bit_errors,fer,ber,mean_iterations,mean_cycles,worst_cycles";

/// Noise variance used for LLR scaling in noiseless mode.
const NOISELESS_SIGMA2: f64 = 0.5;

/// A decoder under test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DecoderVariant {
    Sc,
    /// BP that always runs `max_iter` iterations.
    Bp {
        max_iter: usize,
    },
    /// BP with G-matrix early stopping.
    BpEs {
        max_iter: usize,
    },
    Hybrid {
        max_iter: usize,
    },
}

impl DecoderVariant {
    pub fn label(&self) -> String {
        match self {
            Self::Sc => "SC".to_string(),
            Self::Bp { max_iter } => format!("BP-{max_iter}"),
            Self::BpEs { max_iter } => format!("BP_ES-{max_iter}"),
            Self::Hybrid { max_iter } => format!("Hybrid-{max_iter}"),
        }
    }

    /// Parses a comma-separated list such as `sc,bp-es,hybrid:315`. Entries
    /// without an explicit `:N` take `default_max_iter`.
    pub fn parse_list(text: &str, default_max_iter: usize) -> Result<Vec<Self>> {
        text.split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|item| Self::parse_one(item, default_max_iter))
            .collect()
    }

    fn parse_one(item: &str, default_max_iter: usize) -> Result<Self> {
        let (name, iters) = match item.split_once(':') {
            Some((name, it)) => (
                name,
                it.parse::<usize>()
                    .map_err(|_| Error::Config(format!("bad iteration count in {item:?}")))?,
            ),
            None => (item, default_max_iter),
        };
        if iters == 0 {
            return Err(Error::ZeroIterations);
        }
        match name.to_ascii_lowercase().replace('_', "-").as_str() {
            "sc" => Ok(Self::Sc),
            "bp" => Ok(Self::Bp { max_iter: iters }),
            "bp-es" => Ok(Self::BpEs { max_iter: iters }),
            "hybrid" => Ok(Self::Hybrid { max_iter: iters }),
            _ => Err(Error::Config(format!("unknown decoder {name:?}"))),
        }
    }
}

impl fmt::Display for DecoderVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Parses `1.5,2,2.5` or an inclusive range `start:stop:step`.
pub fn parse_snr_points(text: &str) -> Result<Vec<f64>> {
    let bad = || Error::Config(format!("bad SNR list {text:?}"));
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() == 3 {
        let nums = parts
            .iter()
            .map(|p| p.trim().parse::<f64>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        let (start, stop, step) = (nums[0], nums[1], nums[2]);
        if step.is_nan() || step <= 0.0 || stop < start {
            return Err(bad());
        }
        let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
        // Round to the step's decimal grid so 0.1 steps print cleanly.
        return Ok((0..count)
            .map(|i| ((start + i as f64 * step) * 1e9).round() / 1e9)
            .collect());
    }
    if parts.len() != 1 {
        return Err(bad());
    }
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<f64>().map_err(|_| bad()))
        .collect()
}

/// Everything a sweep needs.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub n: usize,
    pub k: usize,
    pub z0: f64,
    /// Replaces the constructed code when set.
    pub frozen_file: Option<PathBuf>,
    pub snr_points: Vec<f64>,
    pub decoders: Vec<DecoderVariant>,
    pub max_iter: usize,
    pub min_frame_errors: u64,
    pub max_frames: u64,
    pub seed: u64,
    pub output_path: Option<PathBuf>,
    pub bp_scale: f64,
    pub bp_schedule: Schedule,
    pub sc_output_bits_log2: u32,
    /// Worker threads; 0 uses the global rayon pool.
    pub workers: usize,
    /// Skip the noise draw (debug mode).
    pub noiseless: bool,
    /// Echo a line per finished point to stdout.
    pub verbose: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            n: 1024,
            k: 512,
            z0: crate::code::DEFAULT_Z0,
            frozen_file: None,
            snr_points: vec![1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0],
            decoders: vec![
                DecoderVariant::Sc,
                DecoderVariant::BpEs { max_iter: 60 },
                DecoderVariant::Hybrid { max_iter: 60 },
            ],
            max_iter: 60,
            min_frame_errors: 100,
            max_frames: 10_000_000,
            seed: 1,
            output_path: None,
            bp_scale: 1.0,
            bp_schedule: Schedule::default(),
            sc_output_bits_log2: DEFAULT_SC_OUTPUT_BITS_LOG2,
            workers: 0,
            noiseless: false,
            verbose: false,
        }
    }
}

impl ExperimentConfig {
    /// Applies a set of options. `max-iter` goes first so that decoder entries
    /// without an explicit iteration count pick it up.
    pub fn apply_options(&mut self, options: &BTreeMap<String, String>) -> Result<()> {
        if let Some(v) = options.get("max-iter") {
            self.set("max-iter", v)?;
        }
        let had_decoders = options.contains_key("decoders");
        for (key, value) in options {
            if key != "max-iter" {
                self.set(key, value)?;
            }
        }
        if !had_decoders && options.contains_key("max-iter") {
            let max_iter = self.max_iter;
            for d in &mut self.decoders {
                match d {
                    DecoderVariant::Sc => {}
                    DecoderVariant::Bp { max_iter: it }
                    | DecoderVariant::BpEs { max_iter: it }
                    | DecoderVariant::Hybrid { max_iter: it } => *it = max_iter,
                }
            }
        }
        Ok(())
    }

    /// Sets one option from its flag name (without leading dashes) and a
    /// textual value. Decoder entries without `:N` use the current
    /// `max_iter`.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        fn num<T: FromStr>(key: &str, value: &str) -> Result<T> {
            value
                .trim()
                .parse()
                .map_err(|_| Error::Config(format!("bad value {value:?} for {key}")))
        }
        let value = value.trim();
        match key.trim().replace('_', "-").as_str() {
            "n" => self.n = num(key, value)?,
            "k" => self.k = num(key, value)?,
            "z0" => self.z0 = num(key, value)?,
            "frozen-file" => self.frozen_file = Some(PathBuf::from(value)),
            "snr" => self.snr_points = parse_snr_points(value)?,
            "decoders" => self.decoders = DecoderVariant::parse_list(value, self.max_iter)?,
            "max-iter" => self.max_iter = num(key, value)?,
            "min-frame-errors" => self.min_frame_errors = num(key, value)?,
            "max-frames" => self.max_frames = num(key, value)?,
            "seed" => self.seed = num(key, value)?,
            "out" => self.output_path = Some(PathBuf::from(value)),
            "bp-scale" => self.bp_scale = num(key, value)?,
            "bp-schedule" => self.bp_schedule = value.parse()?,
            "sc-output-bits-log2" => self.sc_output_bits_log2 = num(key, value)?,
            "workers" => self.workers = num(key, value)?,
            "noiseless" => self.noiseless = num(key, value)?,
            other => return Err(Error::Config(format!("unknown option {other:?}"))),
        }
        Ok(())
    }
}

/// Parses a key-value config file. Lines look like `max-iter = 60` or
/// `max-iter 60`; `#` starts a comment. Keys may carry leading dashes and use
/// `_` or `-`.
pub fn parse_config_text(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .or_else(|| line.split_once(char::is_whitespace))
            .ok_or_else(|| Error::Config(format!("line {}: expected `key = value`", lineno + 1)))?;
        out.insert(normalize_key(key), value.trim().to_string());
    }
    Ok(out)
}

pub fn normalize_key(key: &str) -> String {
    key.trim().trim_start_matches('-').replace('_', "-")
}

pub fn read_config_file(path: impl AsRef<Path>) -> Result<BTreeMap<String, String>> {
    parse_config_text(&std::fs::read_to_string(path)?)
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.snr_points.is_empty() {
            return Err(Error::Config("no SNR points".into()));
        }
        if self.decoders.is_empty() {
            return Err(Error::Config("no decoders selected".into()));
        }
        if self.min_frame_errors == 0 {
            return Err(Error::Config("min-frame-errors must be at least 1".into()));
        }
        if self.max_frames < self.min_frame_errors {
            return Err(Error::Config(
                "max-frames must be at least min-frame-errors".into(),
            ));
        }
        if self.max_iter == 0 {
            return Err(Error::ZeroIterations);
        }
        if !(self.bp_scale > 0.0 && self.bp_scale <= 1.0) {
            return Err(Error::Config(format!(
                "bp-scale must lie in (0, 1], got {}",
                self.bp_scale
            )));
        }
        if self.snr_points.iter().any(|s| !s.is_finite()) {
            return Err(Error::Config("SNR points must be finite".into()));
        }
        Ok(())
    }

    /// The constructed code, or the one loaded from `frozen_file`.
    pub fn build_code(&self) -> Result<CodeSpec> {
        match &self.frozen_file {
            Some(path) => CodeSpec::read_mask_file(path),
            None => construct_frozen_set(self.n, self.k, self.z0),
        }
    }

    pub fn bp_config(&self) -> BpConfig {
        BpConfig {
            schedule: self.bp_schedule,
            ..BpConfig::with_scale(self.bp_scale)
        }
    }

    fn latency(&self, code: &CodeSpec) -> Result<LatencyParams> {
        LatencyParams::new(code.m(), self.sc_output_bits_log2)
    }
}

/// Aggregated results of one (decoder, SNR) point.
#[derive(Debug, Clone, PartialEq)]
pub struct PointStats {
    pub decoder: DecoderVariant,
    pub snr_db: f64,
    pub frames: u64,
    pub frame_errors: u64,
    pub bit_errors: u64,
    pub fer: f64,
    pub ber: f64,
    pub mean_iterations: f64,
    pub mean_cycles: f64,
    pub worst_cycles: u64,
}

impl PointStats {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.decoder.label(),
            self.snr_db,
            self.frames,
            self.frame_errors,
            self.bit_errors,
            self.fer,
            self.ber,
            self.mean_iterations,
            self.mean_cycles,
            self.worst_cycles
        )
    }
}

pub fn to_csv(rows: &[PointStats]) -> String {
    let mut out = String::new();
    out.push_str(CSV_HEADER);
    out.push('\n');
    for row in rows {
        let _ = writeln!(out, "{}", row.csv_row());
    }
    out
}

/// Seed of one trial, a SplitMix64-style mix of the master seed, the SNR and
/// the trial index.
pub fn trial_seed(master: u64, snr_db: f64, trial: u64) -> u64 {
    fn mix(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
    mix(mix(mix(master) ^ snr_db.to_bits()) ^ trial)
}

enum Engine {
    Sc(ScDecoder),
    Bp {
        decoder: BpDecoder,
        early_stopping: bool,
        max_iter: usize,
    },
    Hybrid {
        decoder: HybridDecoder,
        max_iter: usize,
    },
}

struct Decoded {
    u_hat: Vec<u8>,
    iterations: usize,
    cycles: u64,
}

impl Engine {
    fn new(variant: DecoderVariant, code: &CodeSpec, cfg: &ExperimentConfig) -> Result<Self> {
        Ok(match variant {
            DecoderVariant::Sc => Self::Sc(ScDecoder::new(code)),
            DecoderVariant::Bp { max_iter } | DecoderVariant::BpEs { max_iter } => Self::Bp {
                decoder: BpDecoder::new(code, cfg.bp_config())?,
                early_stopping: matches!(variant, DecoderVariant::BpEs { .. }),
                max_iter,
            },
            DecoderVariant::Hybrid { max_iter } => Self::Hybrid {
                decoder: HybridDecoder::new(code, cfg.bp_config(), cfg.latency(code)?)?,
                max_iter,
            },
        })
    }

    fn decode(&mut self, llr: &[f64], code: &CodeSpec, sc_bits_log2: u32) -> Result<Decoded> {
        match self {
            Self::Sc(dec) => Ok(Decoded {
                u_hat: dec.decode(llr, code)?,
                iterations: 0,
                cycles: sc_cycles(code.n(), sc_bits_log2)?,
            }),
            Self::Bp {
                decoder,
                early_stopping,
                max_iter,
            } => {
                let out = if *early_stopping {
                    decoder.decode(llr, code, *max_iter)?
                } else {
                    decoder.decode_fixed(llr, code, *max_iter)?
                };
                Ok(Decoded {
                    cycles: bp_cycles(out.iterations_used, code.m()),
                    iterations: out.iterations_used,
                    u_hat: out.u_hat,
                })
            }
            Self::Hybrid { decoder, max_iter } => {
                let out = decoder.decode(llr, code, *max_iter)?;
                Ok(Decoded {
                    u_hat: out.u_hat,
                    iterations: out.iterations,
                    cycles: out.cycles,
                })
            }
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct TrialOutcome {
    bit_errors: u64,
    iterations: usize,
    cycles: u64,
}

fn run_trial(
    engine: &mut Engine,
    code: &CodeSpec,
    channel: &ChannelParams,
    cfg: &ExperimentConfig,
    trial: u64,
) -> Result<TrialOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(cfg.seed, channel.ebn0_db, trial));
    let info: Vec<u8> = (0..code.k()).map(|_| rng.random_range(0..2u8)).collect();
    let u = insert_info_bits(&info, code)?;
    let x = encode(&u, code)?;
    let symbols = modulate_bpsk(&x);
    let llr = if cfg.noiseless {
        llr_from_observation(&symbols, NOISELESS_SIGMA2)?
    } else {
        let y = add_awgn_with(&symbols, channel.sigma2, &mut rng)?;
        llr_from_observation(&y, channel.sigma2)?
    };
    let decoded = engine.decode(&llr, code, cfg.sc_output_bits_log2)?;
    let info_hat = extract_info_bits(&decoded.u_hat, code)?;
    let bit_errors = info.iter().zip(&info_hat).filter(|(a, b)| a != b).count() as u64;
    Ok(TrialOutcome {
        bit_errors,
        iterations: decoded.iterations,
        cycles: decoded.cycles,
    })
}

#[derive(Debug, Default)]
struct Accumulator {
    frames: u64,
    frame_errors: u64,
    bit_errors: u64,
    iterations: u64,
    cycles: u128,
    worst_cycles: u64,
}

impl Accumulator {
    fn add(&mut self, t: &TrialOutcome) {
        self.frames += 1;
        self.frame_errors += u64::from(t.bit_errors > 0);
        self.bit_errors += t.bit_errors;
        self.iterations += t.iterations as u64;
        self.cycles += u128::from(t.cycles);
        self.worst_cycles = self.worst_cycles.max(t.cycles);
    }

    fn done(&self, cfg: &ExperimentConfig) -> bool {
        self.frame_errors >= cfg.min_frame_errors || self.frames >= cfg.max_frames
    }

    /// Depends only on the counts so far, never on the worker count.
    fn next_batch(&self, cfg: &ExperimentConfig) -> u64 {
        let remaining = cfg.max_frames - self.frames;
        let wanted = if self.frame_errors == 0 {
            (2 * self.frames).max(32)
        } else {
            let needed = (cfg.min_frame_errors - self.frame_errors) as f64;
            (needed * self.frames as f64 / self.frame_errors as f64 * 1.1).ceil() as u64
        };
        wanted.clamp(16, 4096).min(remaining)
    }

    fn finish(&self, decoder: DecoderVariant, snr_db: f64, k: usize) -> PointStats {
        let frames = self.frames.max(1) as f64;
        PointStats {
            decoder,
            snr_db,
            frames: self.frames,
            frame_errors: self.frame_errors,
            bit_errors: self.bit_errors,
            fer: self.frame_errors as f64 / frames,
            ber: self.bit_errors as f64 / (frames * k as f64),
            mean_iterations: self.iterations as f64 / frames,
            mean_cycles: self.cycles as f64 / frames,
            worst_cycles: self.worst_cycles,
        }
    }
}

fn with_pool<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    if workers == 0 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Config(format!("cannot build worker pool: {e}")))?;
    Ok(pool.install(f))
}

/// Simulates one decoder at one Eb/N0 until `min_frame_errors` frame errors or
/// `max_frames` frames.
pub fn run_point(
    cfg: &ExperimentConfig,
    code: &CodeSpec,
    decoder: DecoderVariant,
    snr_db: f64,
) -> Result<PointStats> {
    cfg.validate()?;
    let channel = ChannelParams::from_ebn0(snr_db, code.rate())?;
    // Fail early on construction errors instead of inside the workers.
    Engine::new(decoder, code, cfg)?;
    with_pool(cfg.workers, || -> Result<PointStats> {
        let mut acc = Accumulator::default();
        let mut next_trial = 0u64;
        while !acc.done(cfg) {
            let batch = acc.next_batch(cfg);
            let outcomes: Vec<Result<TrialOutcome>> = (next_trial..next_trial + batch)
                .into_par_iter()
                .map_init(
                    || Engine::new(decoder, code, cfg),
                    |engine, trial| match engine {
                        Ok(engine) => run_trial(engine, code, &channel, cfg, trial),
                        Err(e) => Err(e.clone()),
                    },
                )
                .collect();
            for outcome in outcomes {
                acc.add(&outcome?);
                if acc.done(cfg) {
                    break;
                }
            }
            next_trial += batch;
        }
        Ok(acc.finish(decoder, snr_db, code.k()))
    })?
}

/// Runs every (decoder, SNR) pair, writes the CSV if an output path is set
/// and returns the rows in decoder-major order.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<PointStats>> {
    cfg.validate()?;
    let code = cfg.build_code()?;
    let mut rows = Vec::with_capacity(cfg.decoders.len() * cfg.snr_points.len());
    for &decoder in &cfg.decoders {
        for &snr in &cfg.snr_points {
            let row = run_point(cfg, &code, decoder, snr)?;
            if cfg.verbose {
                println!(
                    "{:>10} {:>5} dB  frames {:>9}  FER {:.3e}  BER {:.3e}  iters {:>6.2}  cycles {:>7.2} (worst {})",
                    row.decoder.label(),
                    row.snr_db,
                    row.frames,
                    row.fer,
                    row.ber,
                    row.mean_iterations,
                    row.mean_cycles,
                    row.worst_cycles
                );
            }
            rows.push(row);
        }
    }
    if let Some(path) = &cfg.output_path {
        std::fs::write(path, to_csv(&rows))?;
    }
    Ok(rows)
}

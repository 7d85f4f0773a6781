//! Command-line front end: `construct`, `decode` and `sweep`.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use polar_hybrid::hybrid::HybridDecoder;
use polar_hybrid::sim::{
    normalize_key, read_config_file, run_experiment, DecoderVariant, ExperimentConfig,
};
use polar_hybrid::{BpDecoder, Error, Result, ScDecoder};

#[derive(Parser, Debug)]
#[command(
    name = "polar-sim",
    version,
    about = "Polar code construction, decoding and FER/latency sweeps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Construct a code and print its frozen-mask file.
    Construct(Opts),
    /// Decode one frame of whitespace-separated channel LLRs.
    Decode {
        /// LLR file; positive values favour bit 0.
        input: PathBuf,
        #[command(flatten)]
        opts: Opts,
    },
    /// Run a Monte Carlo sweep and write CSV.
    Sweep(Opts),
}

/// Every option may also come from `--config`; command-line values win.
#[derive(Args, Debug, Default)]
struct Opts {
    /// Key-value config file (`key = value` per line).
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    k: Option<String>,
    /// Initial Bhattacharyya value for construction.
    #[arg(long)]
    z0: Option<String>,
    /// Eb/N0 points: comma list or start:stop:step.
    #[arg(long)]
    snr: Option<String>,
    /// Comma list of sc, bp, bp-es, hybrid (optionally `name:max_iter`).
    #[arg(long)]
    decoders: Option<String>,
    #[arg(long)]
    max_iter: Option<String>,
    #[arg(long)]
    min_frame_errors: Option<String>,
    #[arg(long)]
    max_frames: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    /// Output path (CSV for sweep, mask file for construct).
    #[arg(long)]
    out: Option<String>,
    /// Frozen-mask file replacing the constructed code.
    #[arg(long)]
    frozen_file: Option<String>,
    /// Min-sum scale factor in (0, 1].
    #[arg(long)]
    bp_scale: Option<String>,
    /// BP schedule: left-sweep, round-trip or flooding.
    #[arg(long)]
    bp_schedule: Option<String>,
    /// k in "2^k-bit output" for the SC latency model.
    #[arg(long)]
    sc_output_bits_log2: Option<String>,
    /// Worker threads (0 = all cores).
    #[arg(long)]
    workers: Option<String>,
    /// Skip the noise draw.
    #[arg(long)]
    noiseless: bool,
}

impl Opts {
    fn resolve(&self) -> Result<ExperimentConfig> {
        self.resolve_with_keys().map(|(cfg, _)| cfg)
    }

    /// Also reports whether `decoders` was set explicitly.
    fn resolve_with_keys(&self) -> Result<(ExperimentConfig, bool)> {
        let mut options: BTreeMap<String, String> = match &self.config {
            Some(path) => read_config_file(path)?,
            None => BTreeMap::new(),
        };
        let flags = [
            ("n", &self.n),
            ("k", &self.k),
            ("z0", &self.z0),
            ("snr", &self.snr),
            ("decoders", &self.decoders),
            ("max-iter", &self.max_iter),
            ("min-frame-errors", &self.min_frame_errors),
            ("max-frames", &self.max_frames),
            ("seed", &self.seed),
            ("out", &self.out),
            ("frozen-file", &self.frozen_file),
            ("bp-scale", &self.bp_scale),
            ("bp-schedule", &self.bp_schedule),
            ("sc-output-bits-log2", &self.sc_output_bits_log2),
            ("workers", &self.workers),
        ];
        for (key, value) in flags {
            if let Some(v) = value {
                options.insert(normalize_key(key), v.clone());
            }
        }
        if self.noiseless {
            options.insert("noiseless".into(), "true".into());
        }
        let mut cfg = ExperimentConfig::default();
        cfg.apply_options(&options)?;
        Ok((cfg, options.contains_key("decoders")))
    }
}

fn construct(opts: &Opts) -> Result<()> {
    let cfg = opts.resolve()?;
    let code = cfg.build_code()?;
    match &cfg.output_path {
        Some(path) => code.write_mask_file(path)?,
        None => print!("{}", code.to_mask_string()),
    }
    Ok(())
}

fn bits_string(bits: &[u8]) -> String {
    bits.iter().map(|b| char::from(b'0' + b)).collect()
}

fn decode(input: &PathBuf, opts: &Opts) -> Result<()> {
    let (mut cfg, decoders_given) = opts.resolve_with_keys()?;
    if !decoders_given {
        cfg.decoders = vec![DecoderVariant::Hybrid {
            max_iter: cfg.max_iter,
        }];
    }
    let code = cfg.build_code()?;
    let text = std::fs::read_to_string(input)?;
    let llrs = text
        .split_whitespace()
        .map(|t| {
            t.parse::<f64>()
                .map_err(|_| Error::Config(format!("bad LLR value {t:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let decoder = *cfg
        .decoders
        .first()
        .ok_or_else(|| Error::Config("no decoder selected".into()))?;
    let latency = polar_hybrid::LatencyParams::new(code.m(), cfg.sc_output_bits_log2)?;
    let (u_hat, source, iterations, cycles) = match decoder {
        DecoderVariant::Sc => {
            let u = ScDecoder::new(&code).decode(&llrs, &code)?;
            let cycles = polar_hybrid::hybrid::sc_cycles(code.n(), cfg.sc_output_bits_log2)?;
            (u, "SC".to_string(), 0, cycles)
        }
        DecoderVariant::Bp { max_iter } | DecoderVariant::BpEs { max_iter } => {
            let mut dec = BpDecoder::new(&code, cfg.bp_config())?;
            let out = if matches!(decoder, DecoderVariant::BpEs { .. }) {
                dec.decode(&llrs, &code, max_iter)?
            } else {
                dec.decode_fixed(&llrs, &code, max_iter)?
            };
            let source = if out.stopped_early {
                "BP (stopped early)"
            } else {
                "BP (max iterations)"
            };
            let cycles = polar_hybrid::hybrid::bp_cycles(out.iterations_used, code.m());
            (out.u_hat, source.to_string(), out.iterations_used, cycles)
        }
        DecoderVariant::Hybrid { max_iter } => {
            let out = HybridDecoder::new(&code, cfg.bp_config(), latency)?
                .decode(&llrs, &code, max_iter)?;
            (
                out.u_hat,
                format!("{:?}", out.source),
                out.iterations,
                out.cycles,
            )
        }
    };
    let info = polar_hybrid::extract_info_bits(&u_hat, &code)?;
    println!("decoder:    {}", decoder.label());
    println!("source:     {source}");
    println!("iterations: {iterations}");
    println!("cycles:     {cycles}");
    println!("info:       {}", bits_string(&info));
    println!("u:          {}", bits_string(&u_hat));
    Ok(())
}

fn sweep(opts: &Opts) -> Result<()> {
    let mut cfg = opts.resolve()?;
    cfg.verbose = true;
    let rows = run_experiment(&cfg)?;
    if cfg.output_path.is_none() {
        print!("{}", polar_hybrid::sim::to_csv(&rows));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Construct(opts) => construct(opts),
        Command::Decode { input, opts } => decode(input, opts),
        Command::Sweep(opts) => sweep(opts),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

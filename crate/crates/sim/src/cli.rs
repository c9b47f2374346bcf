//! Command-line interface: `construct`, `simulate`, `compare`, `latency`.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use polar_scl::{
    decode_latency, extend_with_crc, frozen_cluster_count, throughput, ConstructionParams, CrcScheme, DecoderMode,
    LatencyQuery, PolarCode, SorterKind,
};

use crate::compare::{compare_configs_with, compare_records};
use crate::config::{CodeSource, CodeSpec, DecoderType, OutputFormat, OutputSpec, SimConfig, SnrSweep, StopRule};
use crate::error::{Result, SimError};
use crate::output::read_records;
use crate::record::FerRecord;
use crate::sweep::Simulation;

#[derive(Debug, Parser)]
#[command(name = "polar-sim", version, about = "Polar code SC/SCL decoding simulator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build an information set by genie-aided Monte-Carlo and write a frozen-set file.
    Construct(ConstructArgs),
    /// Run an FER sweep.
    Simulate(SimulateArgs),
    /// Run (or load) several sweeps on one SNR grid and compare them.
    Compare(CompareArgs),
    /// Decoding latency in clock cycles and throughput.
    Latency(LatencyArgs),
}

#[derive(Debug, Clone, Args)]
pub struct ConstructionArgs {
    /// Eb/N0 in dB at which bit channels are ranked.
    #[arg(long, default_value_t = 2.0)]
    pub design_snr: f64,
    /// Monte-Carlo blocks used for ranking.
    #[arg(long, default_value_t = 100_000)]
    pub construction_trials: u64,
    /// Seed of the construction run (defaults to --seed).
    #[arg(long)]
    pub construction_seed: Option<u64>,
}

impl ConstructionArgs {
    fn params(&self, seed: u64) -> ConstructionParams {
        ConstructionParams {
            design_ebn0_db: self.design_snr,
            trials: self.construction_trials,
            seed: self.construction_seed.unwrap_or(seed),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct ConstructArgs {
    /// log2 of the block length.
    #[arg(long)]
    pub n: u32,
    /// Data bits per block.
    #[arg(long)]
    pub k: usize,
    /// Reserve positions for this CRC (crc4, crc8, crc16).
    #[arg(long)]
    pub crc: Option<CrcScheme>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub construction: ConstructionArgs,
    /// Frozen-set file to write (stdout when absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    /// log2 of the block length.
    #[arg(long)]
    pub n: u32,
    /// Data bits per block (CRC bits excluded).
    #[arg(long)]
    pub k: usize,
    /// sc, scl or ca-scl.
    #[arg(long, default_value = "scl")]
    pub decoder: DecoderType,
    #[arg(long, default_value_t = 1)]
    pub list_size: usize,
    /// exact, minsum or fixed:Q=6,M=8.
    #[arg(long, default_value = "exact")]
    pub mode: DecoderMode,
    /// Channel LLR multiplier applied before quantization (fixed mode).
    #[arg(long, default_value_t = 1.0)]
    pub llr_scale: f64,
    #[arg(long)]
    pub crc: Option<CrcScheme>,
    /// full or pruned.
    #[arg(long, default_value = "full")]
    pub sorter: SorterKind,
    /// Eb/N0 grid START:STOP:STEP in dB (or a single value).
    #[arg(long)]
    pub snr: SnrSweep,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 500)]
    pub min_errors: u64,
    #[arg(long, default_value_t = 1_000_000)]
    pub max_trials: u64,
    /// Read the information set instead of constructing it.
    #[arg(long)]
    pub frozen_file: Option<PathBuf>,
    #[command(flatten)]
    pub construction: ConstructionArgs,
    /// Record file; CSV unless the extension is .jsonl.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Override the format implied by the extension (csv or jsonl).
    #[arg(long)]
    pub format: Option<OutputFormat>,
    /// Also record wall-clock time per point (output is then not reproducible).
    #[arg(long)]
    pub timing: bool,
}

impl SimulateArgs {
    pub fn to_config(&self) -> Result<SimConfig> {
        let source = match &self.frozen_file {
            Some(p) => CodeSource::FrozenFile(p.clone()),
            None => CodeSource::Construct(self.construction.params(self.seed)),
        };
        let code = CodeSpec {
            n: self.n,
            k_info: self.k,
            source,
        };
        let mut cfg = SimConfig::new(code, self.decoder, self.snr);
        cfg.list_size = if self.decoder == DecoderType::Sc { 1 } else { self.list_size };
        cfg.mode = self.mode.with_llr_scale(self.llr_scale);
        cfg.crc = self.crc;
        cfg.sorter = self.sorter;
        cfg.stop = StopRule {
            min_errors: self.min_errors,
            max_trials: self.max_trials,
        };
        cfg.seed = self.seed;
        cfg.output = self.out.as_ref().map(|p| OutputSpec {
            path: p.clone(),
            format: self.format.unwrap_or_else(|| OutputFormat::from_path(p)),
        });
        cfg.record_wall_time = self.timing;
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Parser)]
#[command(name = "run", no_binary_name = true)]
struct RunSpec {
    #[command(flatten)]
    args: SimulateArgs,
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    /// Simulation flags for one configuration, quoted, e.g.
    /// "--n 10 --k 512 --decoder scl --list-size 8 --snr 3". Repeat per configuration.
    #[arg(long = "run", allow_hyphen_values = true)]
    pub runs: Vec<String>,
    /// Previously written record files to compare (alternative to --run).
    #[arg(long = "input")]
    pub inputs: Vec<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct LatencyArgs {
    /// log2 of the block length.
    #[arg(long)]
    pub n: u32,
    /// Processing elements per path.
    #[arg(long, default_value_t = 64)]
    pub p: usize,
    /// Information set size |A| (CRC included).
    #[arg(long)]
    pub k: Option<usize>,
    /// Number of frozen clusters F_C; computed from --frozen-file when given.
    #[arg(long)]
    pub frozen_clusters: Option<usize>,
    #[arg(long)]
    pub frozen_file: Option<PathBuf>,
    /// full, pruned, or none for an SC decoder.
    #[arg(long, default_value = "full")]
    pub sorter: String,
    /// Clock frequency in MHz for the throughput figure.
    #[arg(long)]
    pub frequency_mhz: Option<f64>,
}

fn parse_run(spec: &str) -> Result<SimConfig> {
    let parsed = RunSpec::try_parse_from(spec.split_whitespace())
        .map_err(|e| SimError::Config(format!("in --run \"{spec}\": {e}")))?;
    parsed.args.to_config()
}

fn io_err(path: &str) -> impl Fn(std::io::Error) -> SimError + '_ {
    move |source| SimError::Output {
        path: PathBuf::from(path),
        source,
    }
}

fn record_line(r: &FerRecord) -> String {
    format!(
        "{:>7.3} {:>10} {:>8} {:>11.4e} {:>11.4e} {:>11.4e} {:>11.4e}",
        r.ebn0_db, r.trials, r.block_errors, r.fer, r.ci95_low, r.ci95_high, r.ber
    )
}

const RECORD_HEADER: &str = "  Eb/N0     trials   errors         FER      CI low     CI high         BER";

/// Executes a parsed command, writing human-readable output to `out`.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<()> {
    let stdout = io_err("<stdout>");
    match cli.command {
        Command::Construct(a) => {
            let code = extend_with_crc(a.n, a.k, a.crc, &a.construction.params(a.seed))?;
            match &a.out {
                Some(p) => {
                    code.write_frozen_file(p)?;
                    writeln!(
                        out,
                        "wrote {} (N = {}, |A| = {}, F_C = {})",
                        p.display(),
                        code.len(),
                        code.k(),
                        frozen_cluster_count(&code)
                    )
                    .map_err(stdout)?;
                }
                None => write!(out, "{}", code.to_frozen_file_string()).map_err(stdout)?,
            }
        }
        Command::Simulate(a) => {
            let cfg = a.to_config()?;
            writeln!(out, "# {}", cfg.label()).map_err(&stdout)?;
            let sim = Simulation::new(cfg)?;
            writeln!(out, "{RECORD_HEADER}").map_err(&stdout)?;
            let mut write_err = None;
            sim.run(|r| {
                if let Err(e) = writeln!(out, "{}", record_line(r)) {
                    write_err.get_or_insert(e);
                }
            })?;
            if let Some(e) = write_err {
                return Err(stdout(e));
            }
        }
        Command::Compare(a) => {
            let report = if !a.runs.is_empty() {
                if !a.inputs.is_empty() {
                    return Err(SimError::Config("use either --run or --input, not both".into()));
                }
                let cfgs = a.runs.iter().map(|s| parse_run(s)).collect::<Result<Vec<_>>>()?;
                compare_configs_with(&cfgs, |i, r| {
                    let _ = writeln!(out, "[{i}] {}", record_line(r));
                })?
            } else {
                let records = a.inputs.iter().map(|p| read_records(p)).collect::<Result<Vec<_>>>()?;
                let labels = a.inputs.iter().map(|p| p.display().to_string()).collect();
                compare_records(labels, records)?
            };
            write!(out, "{report}").map_err(stdout)?;
        }
        Command::Latency(a) => {
            let sorter = match a.sorter.as_str() {
                "none" | "sc" => None,
                s => Some(s.parse::<SorterKind>()?),
            };
            let code = a.frozen_file.as_ref().map(PolarCode::read_frozen_file).transpose()?;
            if let Some(c) = &code {
                if c.n() != a.n {
                    return Err(SimError::Config(format!("frozen file has N = {}, not 2^{}", c.len(), a.n)));
                }
            }
            let info_size = a.k.or(code.as_ref().map(PolarCode::k));
            let clusters = a.frozen_clusters.or(code.as_ref().map(frozen_cluster_count));
            let query = match sorter {
                None => LatencyQuery::sc(1usize << a.n, a.p),
                Some(kind) => {
                    let info = info_size.ok_or_else(|| SimError::Config("list decoding needs --k or --frozen-file".into()))?;
                    let fc = match (kind, clusters) {
                        (_, Some(fc)) => fc,
                        (SorterKind::Full, None) => 0,
                        (SorterKind::Pruned, None) => {
                            return Err(SimError::Config(
                                "the pruned sorter needs --frozen-clusters or --frozen-file".into(),
                            ))
                        }
                    };
                    LatencyQuery::scl(1usize << a.n, a.p, info, fc, kind)
                }
            };
            let cycles = decode_latency(&query)?;
            writeln!(out, "cycles: {cycles}").map_err(&stdout)?;
            writeln!(out, "sorting cycles: {}", polar_scl::sorting_latency(&query)).map_err(&stdout)?;
            if let Some(mhz) = a.frequency_mhz {
                let t = throughput(&query.at_frequency(mhz * 1e6))?;
                writeln!(out, "throughput: {:.1} Mbps", t / 1e6).map_err(&stdout)?;
            }
        }
    }
    Ok(())
}

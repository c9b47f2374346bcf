//! Simulation setup.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use polar_scl::{extend_with_crc, ConstructionParams, CrcScheme, DecoderKind, DecoderMode, PolarCode, SorterKind};

use crate::error::{Result, SimError};

/// Where the information set comes from.
#[derive(Debug, Clone, PartialEq)]
pub enum CodeSource {
    Construct(ConstructionParams),
    FrozenFile(PathBuf),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CodeSpec {
    pub n: u32,
    /// Data bits per block, CRC excluded.
    pub k_info: usize,
    pub source: CodeSource,
}

impl CodeSpec {
    pub fn constructed(n: u32, k_info: usize, params: ConstructionParams) -> Self {
        Self {
            n,
            k_info,
            source: CodeSource::Construct(params),
        }
    }

    /// Builds the code; `crc` adds its width to the information set.
    pub fn build(&self, crc: Option<CrcScheme>) -> Result<PolarCode> {
        let r = crc.map_or(0, |c| c.width());
        let code = match &self.source {
            CodeSource::Construct(params) => extend_with_crc(self.n, self.k_info, crc, params)?,
            CodeSource::FrozenFile(path) => PolarCode::read_frozen_file(path)?,
        };
        if code.n() != self.n || code.k() != self.k_info + r {
            return Err(SimError::Config(format!(
                "code has N = {}, |A| = {}; expected N = {}, |A| = {} + {r}",
                code.len(),
                code.k(),
                1usize << self.n,
                self.k_info
            )));
        }
        Ok(code)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DecoderType {
    Sc,
    #[default]
    Scl,
    CaScl,
}

impl FromStr for DecoderType {
    type Err = SimError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sc" => Ok(Self::Sc),
            "scl" => Ok(Self::Scl),
            "ca-scl" => Ok(Self::CaScl),
            other => Err(SimError::Config(format!(
                "unknown decoder '{other}' (expected sc, scl or ca-scl)"
            ))),
        }
    }
}

impl fmt::Display for DecoderType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Sc => "sc",
            Self::Scl => "scl",
            Self::CaScl => "ca-scl",
        })
    }
}

/// Inclusive Eb/N0 grid in dB.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SnrSweep {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl SnrSweep {
    pub fn single(db: f64) -> Self {
        Self {
            start: db,
            stop: db,
            step: 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let finite = self.start.is_finite() && self.stop.is_finite() && self.step.is_finite();
        if !finite || self.step <= 0.0 {
            return Err(SimError::Config(format!("SNR step must be positive, got {self}")));
        }
        if self.stop < self.start {
            return Err(SimError::Config(format!("SNR stop below start in {self}")));
        }
        Ok(())
    }

    /// Grid points, computed by multiplication so they do not drift.
    pub fn points(&self) -> Vec<f64> {
        let count = ((self.stop - self.start) / self.step + 1e-9).floor() as usize + 1;
        (0..count)
            .map(|i| {
                let v = self.start + i as f64 * self.step;
                (v * 1e9).round() / 1e9
            })
            .collect()
    }
}

impl FromStr for SnrSweep {
    type Err = SimError;

    /// `start:stop:step` or a single value.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || SimError::Config(format!("expected START:STOP:STEP in dB, got '{s}'"));
        let parts: Vec<f64> = s
            .split(':')
            .map(|p| p.trim().parse::<f64>().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        let sweep = match parts[..] {
            [v] => Self::single(v),
            [start, stop, step] => Self { start, stop, step },
            _ => return Err(bad()),
        };
        sweep.validate()?;
        Ok(sweep)
    }
}

impl fmt::Display for SnrSweep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.start, self.stop, self.step)
    }
}

/// Stop a point after `min_errors` block errors or `max_trials` blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StopRule {
    pub min_errors: u64,
    pub max_trials: u64,
}

impl Default for StopRule {
    fn default() -> Self {
        Self {
            min_errors: 500,
            max_trials: 1_000_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    JsonLines,
}

impl FromStr for OutputFormat {
    type Err = SimError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Self::Csv),
            "jsonl" | "json" => Ok(Self::JsonLines),
            other => Err(SimError::Config(format!("unknown output format '{other}'"))),
        }
    }
}

impl OutputFormat {
    /// Guesses from the file extension, defaulting to CSV.
    pub fn from_path(path: &std::path::Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("jsonl" | "json") => Self::JsonLines,
            _ => Self::Csv,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputSpec {
    pub path: PathBuf,
    pub format: OutputFormat,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub code: CodeSpec,
    pub decoder: DecoderType,
    pub list_size: usize,
    pub mode: DecoderMode,
    pub crc: Option<CrcScheme>,
    pub sorter: SorterKind,
    pub snr: SnrSweep,
    pub stop: StopRule,
    pub seed: u64,
    pub output: Option<OutputSpec>,
    /// Store wall-clock time per point. Off by default so that output files
    /// depend only on the configuration.
    pub record_wall_time: bool,
}

impl SimConfig {
    pub fn new(code: CodeSpec, decoder: DecoderType, snr: SnrSweep) -> Self {
        Self {
            code,
            decoder,
            list_size: 1,
            mode: DecoderMode::Exact,
            crc: None,
            sorter: SorterKind::Full,
            snr,
            stop: StopRule::default(),
            seed: 0,
            output: None,
            record_wall_time: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.snr.validate()?;
        if self.stop.min_errors == 0 || self.stop.max_trials == 0 {
            return Err(SimError::Config("stop rule needs positive error and trial limits".into()));
        }
        if self.list_size == 0 {
            return Err(SimError::Config("list size must be at least 1".into()));
        }
        match (self.decoder, self.crc) {
            (DecoderType::CaScl, None) => {
                return Err(SimError::Config("ca-scl needs a CRC (--crc)".into()));
            }
            (DecoderType::Sc | DecoderType::Scl, Some(c)) => {
                return Err(SimError::Config(format!("{c} is only used by ca-scl")));
            }
            _ => {}
        }
        if self.decoder == DecoderType::Sc && self.sorter == SorterKind::Pruned {
            return Err(SimError::Config("the SC decoder has no metric sorter".into()));
        }
        if self.code.k_info == 0 {
            return Err(SimError::Config("K must be positive".into()));
        }
        Ok(())
    }

    pub fn decoder_kind(&self) -> DecoderKind {
        match self.decoder {
            DecoderType::Sc => DecoderKind::Sc,
            DecoderType::Scl | DecoderType::CaScl => DecoderKind::Scl {
                list_size: self.list_size,
                sorter: self.sorter,
                crc: self.crc,
            },
        }
    }

    /// Rate used to convert Eb/N0 to noise variance: data bits over N, so
    /// CRC bits count as overhead.
    pub fn effective_rate(&self) -> f64 {
        self.code.k_info as f64 / (1u64 << self.code.n) as f64
    }

    /// Short human-readable label.
    pub fn label(&self) -> String {
        let len = 1u64 << self.code.n;
        let mut s = format!("({len},{}) {}", self.code.k_info, self.decoder);
        if self.decoder != DecoderType::Sc {
            s.push_str(&format!(" L={}", self.list_size));
        }
        if let Some(c) = self.crc {
            s.push_str(&format!(" {c}"));
        }
        s.push_str(&format!(" {}", self.mode));
        if self.sorter == SorterKind::Pruned {
            s.push_str(" pruned");
        }
        s
    }
}

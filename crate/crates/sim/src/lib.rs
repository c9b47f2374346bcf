//! Monte-Carlo FER simulation, comparison and latency reporting for polar
//! SC/SCL decoders.

pub mod cli;
pub mod compare;
pub mod config;
pub mod error;
pub mod output;
pub mod record;
pub mod sweep;

pub use compare::{compare_configs, compare_configs_with, compare_records, CompareReport, PairVerdict, Verdict};
pub use config::{CodeSource, CodeSpec, DecoderType, OutputFormat, OutputSpec, SimConfig, SnrSweep, StopRule};
pub use error::{Result, SimError};
pub use output::{read_records, RecordWriter};
pub use record::{wilson_interval, FerRecord, Z95};
pub use sweep::{run_sweep, Simulation, TrialOutcome};

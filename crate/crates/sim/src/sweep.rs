//! Monte-Carlo frame error rate estimation.

use std::sync::Mutex;
use std::time::Instant;

use polar_scl::rng::trial_rng;
use polar_scl::{build_decoder, crc_remainder, encode, AwgnChannel, CrcScheme, Decoder, PolarCode};
use rand::Rng;
use rayon::prelude::*;

use crate::config::SimConfig;
use crate::error::Result;
use crate::output::RecordWriter;
use crate::record::FerRecord;

/// Outcome of one transmitted block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialOutcome {
    pub block_error: bool,
    pub bit_errors: u32,
    pub crc_fallback: bool,
}

/// Per-thread scratch: decoder state and buffers.
struct Worker {
    decoder: Box<dyn Decoder>,
    data: Vec<u8>,
    y: Vec<f64>,
}

impl Worker {
    fn run<R: Rng>(
        &mut self,
        code: &PolarCode,
        crc: Option<CrcScheme>,
        k_info: usize,
        channel: &AwgnChannel,
        rng: &mut R,
    ) -> Result<TrialOutcome> {
        self.data.clear();
        while self.data.len() < k_info {
            let word: u64 = rng.random();
            let take = (k_info - self.data.len()).min(64);
            self.data.extend((0..take).map(|b| ((word >> b) & 1) as u8));
        }
        let mut info = self.data.clone();
        if let Some(c) = crc {
            info.extend(crc_remainder(&self.data, c));
        }
        let x = encode(code, &info)?;
        channel.transmit_into(&x, rng, &mut self.y);
        let llrs = channel.channel_llrs(&self.y);
        let out = self.decoder.decode(&llrs)?;
        let bit_errors = out
            .data_bits
            .iter()
            .zip(&self.data)
            .filter(|(a, b)| a != b)
            .count() as u32;
        Ok(TrialOutcome {
            block_error: bit_errors > 0,
            bit_errors,
            crc_fallback: out.crc_fallback,
        })
    }
}

/// A validated configuration with its code built.
pub struct Simulation {
    cfg: SimConfig,
    code: PolarCode,
    workers: Vec<Mutex<Worker>>,
}

impl Simulation {
    pub fn new(cfg: SimConfig) -> Result<Self> {
        cfg.validate()?;
        let code = cfg.code.build(cfg.crc)?;
        Self::with_code(cfg, code)
    }

    /// Uses an already built code, e.g. shared between configurations.
    pub fn with_code(cfg: SimConfig, code: PolarCode) -> Result<Self> {
        cfg.validate()?;
        let r = cfg.crc.map_or(0, |c| c.width());
        if code.n() != cfg.code.n || code.k() != cfg.code.k_info + r {
            return Err(crate::error::SimError::Config(format!(
                "code (N = {}, |A| = {}) does not match the configuration",
                code.len(),
                code.k()
            )));
        }
        let threads = rayon::current_num_threads().max(1);
        let workers = (0..threads)
            .map(|_| {
                Ok(Mutex::new(Worker {
                    decoder: build_decoder(code.clone(), cfg.mode, cfg.decoder_kind())?,
                    data: Vec::with_capacity(cfg.code.k_info),
                    y: Vec::with_capacity(code.len()),
                }))
            })
            .collect::<Result<_>>()?;
        Ok(Self { cfg, code, workers })
    }

    pub fn config(&self) -> &SimConfig {
        &self.cfg
    }

    pub fn code(&self) -> &PolarCode {
        &self.code
    }

    /// Outcome of trial `index` at grid point `snr_index`; independent of
    /// which thread runs it.
    pub fn trial(&self, snr_index: usize, ebn0_db: f64, index: u64) -> Result<TrialOutcome> {
        let channel = AwgnChannel::new(ebn0_db, self.cfg.effective_rate())?;
        self.trial_on(&channel, snr_index, index)
    }

    fn trial_on(&self, channel: &AwgnChannel, snr_index: usize, index: u64) -> Result<TrialOutcome> {
        let slot = rayon::current_thread_index().unwrap_or(0) % self.workers.len();
        let mut worker = self.workers[slot].lock().expect("worker poisoned");
        let mut rng = trial_rng(self.cfg.seed, snr_index as u64, index);
        worker.run(&self.code, self.cfg.crc, self.cfg.code.k_info, channel, &mut rng)
    }

    /// Runs trials in order until the stop rule fires.
    pub fn run_point(&self, snr_index: usize, ebn0_db: f64) -> Result<FerRecord> {
        let started = Instant::now();
        let channel = AwgnChannel::new(ebn0_db, self.cfg.effective_rate())?;
        let stop = self.cfg.stop;
        let batch = (32 * self.workers.len()) as u64;
        let (mut trials, mut errors, mut bit_errors, mut fallbacks) = (0u64, 0u64, 0u64, 0u64);
        'outer: while errors < stop.min_errors && trials < stop.max_trials {
            let end = (trials + batch).min(stop.max_trials);
            let outcomes = (trials..end)
                .into_par_iter()
                .map(|t| self.trial_on(&channel, snr_index, t))
                .collect::<Result<Vec<_>>>()?;
            // count in trial order so the stopping point is deterministic
            for o in outcomes {
                trials += 1;
                errors += u64::from(o.block_error);
                bit_errors += u64::from(o.bit_errors);
                fallbacks += u64::from(o.crc_fallback);
                if errors >= stop.min_errors {
                    break 'outer;
                }
            }
        }
        let mut record = FerRecord::new(ebn0_db, trials, errors, bit_errors, self.cfg.code.k_info);
        record.crc_fallbacks = fallbacks;
        if self.cfg.record_wall_time {
            record.wall_time_s = Some(started.elapsed().as_secs_f64());
        }
        Ok(record)
    }

    /// All grid points; each record is passed to `on_record` and appended to
    /// the configured output file as soon as it is complete.
    pub fn run(&self, mut on_record: impl FnMut(&FerRecord)) -> Result<Vec<FerRecord>> {
        let mut writer = self.cfg.output.as_ref().map(RecordWriter::create).transpose()?;
        let mut out = Vec::new();
        for (i, snr) in self.cfg.snr.points().into_iter().enumerate() {
            let record = self.run_point(i, snr)?;
            if let Some(w) = writer.as_mut() {
                w.append(&record)?;
            }
            on_record(&record);
            out.push(record);
        }
        Ok(out)
    }
}

/// Builds the code and runs the whole sweep.
pub fn run_sweep(cfg: &SimConfig) -> Result<Vec<FerRecord>> {
    Simulation::new(cfg.clone())?.run(|_| {})
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{CodeSpec, DecoderType, SnrSweep, StopRule};
    use polar_scl::ConstructionParams;

    fn small(decoder: DecoderType) -> SimConfig {
        let params = ConstructionParams {
            design_ebn0_db: 2.0,
            trials: 2000,
            seed: 1,
        };
        let mut cfg = SimConfig::new(CodeSpec::constructed(6, 32, params), decoder, "1:3:1".parse().unwrap());
        cfg.stop = StopRule {
            min_errors: 40,
            max_trials: 3000,
        };
        cfg.seed = 9;
        cfg
    }

    #[test]
    fn rate_one_noiseless_has_no_errors() {
        let mut cfg = small(DecoderType::Sc);
        cfg.code = CodeSpec::constructed(5, 32, ConstructionParams::default());
        cfg.snr = SnrSweep::single(200.0);
        cfg.stop.max_trials = 500;
        let r = run_sweep(&cfg).unwrap();
        assert_eq!(r[0].trials, 500);
        assert_eq!(r[0].block_errors, 0);
        assert_eq!(r[0].fer, 0.0);
    }

    #[test]
    fn stop_rule_and_determinism() {
        let cfg = small(DecoderType::Sc);
        let a = run_sweep(&cfg).unwrap();
        let b = run_sweep(&cfg).unwrap();
        assert_eq!(a, b);
        for r in &a {
            assert!(r.block_errors == 40 || r.trials == 3000, "{r:?}");
            assert!(r.block_errors <= r.trials);
            assert!(r.wall_time_s.is_none());
        }
        assert!(a[0].fer > a[2].fer);
    }

    #[test]
    fn trials_do_not_depend_on_batching() {
        // the error count at a trial budget equals the sum of single trials
        let mut cfg = small(DecoderType::Scl);
        cfg.list_size = 2;
        cfg.stop = StopRule {
            min_errors: 1_000_000,
            max_trials: 150,
        };
        let sim = Simulation::new(cfg).unwrap();
        let rec = sim.run_point(0, 1.0).unwrap();
        let manual: u64 = (0..150)
            .map(|t| u64::from(sim.trial(0, 1.0, t).unwrap().block_error))
            .sum();
        assert_eq!(rec.block_errors, manual);
        assert_eq!(rec.trials, 150);
    }

    #[test]
    fn crc_aided_runs_and_counts_fallbacks() {
        let mut cfg = small(DecoderType::CaScl);
        cfg.crc = Some(CrcScheme::CRC4);
        cfg.list_size = 4;
        cfg.snr = SnrSweep::single(0.5);
        let r = run_sweep(&cfg).unwrap();
        assert!(r[0].block_errors > 0);
        assert!(r[0].crc_fallbacks > 0);
        assert!(r[0].crc_fallbacks <= r[0].trials);
    }
}

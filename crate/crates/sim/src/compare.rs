//! Side-by-side FER tables with confidence-interval verdicts.

use std::fmt;

use crate::config::SimConfig;
use crate::error::{Result, SimError};
use crate::record::FerRecord;
use crate::sweep::Simulation;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// The 95% intervals overlap: no significant difference.
    Overlap,
    /// The first configuration's interval lies entirely below the second's.
    FirstLower,
    SecondLower,
}

impl Verdict {
    pub fn of(a: &FerRecord, b: &FerRecord) -> Self {
        if a.overlaps(b) {
            Self::Overlap
        } else if a.ci95_high < b.ci95_low {
            Self::FirstLower
        } else {
            Self::SecondLower
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Overlap => "overlap",
            Self::FirstLower => "first lower",
            Self::SecondLower => "second lower",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairVerdict {
    pub first: usize,
    pub second: usize,
    pub ebn0_db: f64,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompareReport {
    pub labels: Vec<String>,
    pub snr: Vec<f64>,
    /// `records[c][p]`: configuration `c` at grid point `p`.
    pub records: Vec<Vec<FerRecord>>,
    pub verdicts: Vec<PairVerdict>,
}

impl CompareReport {
    pub fn verdict(&self, first: usize, second: usize, ebn0_db: f64) -> Option<Verdict> {
        self.verdicts
            .iter()
            .find(|v| v.first == first && v.second == second && (v.ebn0_db - ebn0_db).abs() < 1e-9)
            .map(|v| v.verdict)
    }
}

fn same_grid(a: &[f64], b: &[f64]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-9)
}

/// Aligns finished sweeps; every sweep must cover the same SNR points.
pub fn compare_records(labels: Vec<String>, records: Vec<Vec<FerRecord>>) -> Result<CompareReport> {
    if records.len() < 2 || labels.len() != records.len() {
        return Err(SimError::Config("comparison needs at least two labelled sweeps".into()));
    }
    let snr: Vec<f64> = records[0].iter().map(|r| r.ebn0_db).collect();
    for (label, recs) in labels.iter().zip(&records) {
        let grid: Vec<f64> = recs.iter().map(|r| r.ebn0_db).collect();
        if !same_grid(&grid, &snr) {
            return Err(SimError::GridMismatch(format!("{label} has {grid:?}, expected {snr:?}")));
        }
    }
    let mut verdicts = Vec::new();
    for first in 0..records.len() {
        for second in first + 1..records.len() {
            for (p, &db) in snr.iter().enumerate() {
                verdicts.push(PairVerdict {
                    first,
                    second,
                    ebn0_db: db,
                    verdict: Verdict::of(&records[first][p], &records[second][p]),
                });
            }
        }
    }
    Ok(CompareReport {
        labels,
        snr,
        records,
        verdicts,
    })
}

/// Runs each configuration and compares them. Grids are checked before
/// any simulation starts.
pub fn compare_configs(cfgs: &[SimConfig]) -> Result<CompareReport> {
    compare_configs_with(cfgs, |_, _| {})
}

/// As [`compare_configs`], reporting each finished record with the index
/// of its configuration.
pub fn compare_configs_with(cfgs: &[SimConfig], mut progress: impl FnMut(usize, &FerRecord)) -> Result<CompareReport> {
    if cfgs.len() < 2 {
        return Err(SimError::Config("comparison needs at least two configurations".into()));
    }
    let grid = cfgs[0].snr.points();
    for c in cfgs {
        c.validate()?;
        if !same_grid(&c.snr.points(), &grid) {
            return Err(SimError::GridMismatch(format!("{} versus {}", c.snr, cfgs[0].snr)));
        }
    }
    let mut records = Vec::with_capacity(cfgs.len());
    for (i, c) in cfgs.iter().enumerate() {
        records.push(Simulation::new(c.clone())?.run(|r| progress(i, r))?);
    }
    compare_records(cfgs.iter().map(SimConfig::label).collect(), records)
}

impl fmt::Display for CompareReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.labels.iter().enumerate() {
            writeln!(f, "[{i}] {l}")?;
        }
        write!(f, "{:>8}", "Eb/N0")?;
        for i in 0..self.labels.len() {
            write!(f, " {:>34}", format!("[{i}] FER (95% CI)"))?;
        }
        writeln!(f)?;
        for (p, db) in self.snr.iter().enumerate() {
            write!(f, "{db:>8.3}")?;
            for recs in &self.records {
                let r = &recs[p];
                write!(f, " {:>34}", format!("{:.3e} ({:.2e}, {:.2e})", r.fer, r.ci95_low, r.ci95_high))?;
            }
            writeln!(f)?;
        }
        for v in &self.verdicts {
            writeln!(f, "{:>8.3} [{}] vs [{}]: {}", v.ebn0_db, v.first, v.second, v.verdict)?;
        }
        Ok(())
    }
}

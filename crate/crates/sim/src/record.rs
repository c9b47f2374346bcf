//! Per-SNR results and confidence intervals.

use serde::{Deserialize, Serialize};

/// Two-sided 95% normal quantile.
pub const Z95: f64 = 1.959964;

/// Wilson score interval for `errors` successes in `trials` draws.
pub fn wilson_interval(errors: u64, trials: u64, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = errors as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    // clamp rounding so the bounds always bracket p
    ((center - half).clamp(0.0, p), (center + half).clamp(p, 1.0))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FerRecord {
    pub ebn0_db: f64,
    pub trials: u64,
    pub block_errors: u64,
    pub fer: f64,
    pub ci95_low: f64,
    pub ci95_high: f64,
    /// Wrong data bits summed over all blocks.
    pub bit_errors: u64,
    pub ber: f64,
    /// CA-SCL decodes in which no path passed the CRC.
    pub crc_fallbacks: u64,
    pub wall_time_s: Option<f64>,
}

impl FerRecord {
    pub fn new(ebn0_db: f64, trials: u64, block_errors: u64, bit_errors: u64, bits_per_block: usize) -> Self {
        assert!(block_errors <= trials, "more errors than trials");
        let fer = if trials == 0 { 0.0 } else { block_errors as f64 / trials as f64 };
        let (ci95_low, ci95_high) = wilson_interval(block_errors, trials, Z95);
        let total_bits = trials as f64 * bits_per_block as f64;
        Self {
            ebn0_db,
            trials,
            block_errors,
            fer,
            ci95_low,
            ci95_high,
            bit_errors,
            ber: if total_bits > 0.0 { bit_errors as f64 / total_bits } else { 0.0 },
            crc_fallbacks: 0,
            wall_time_s: None,
        }
    }

    /// The two 95% intervals share at least one point.
    pub fn overlaps(&self, other: &FerRecord) -> bool {
        self.ci95_low <= other.ci95_high && other.ci95_low <= self.ci95_high
    }
}

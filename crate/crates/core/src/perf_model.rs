//! Closed-form cycle counts and throughput of the list decoder architecture.

use crate::error::{Error, Result};
use crate::sorter::SorterKind;

/// Inputs of the latency model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatencyQuery {
    /// Block length `N`.
    pub block_len: usize,
    /// Processing elements per path `P`.
    pub processing_elements: usize,
    /// `|A|`.
    pub info_size: usize,
    /// Number of frozen clusters `F_C(A)`.
    pub frozen_clusters: usize,
    /// `None` models a plain SC decoder (no metric sorting).
    pub sorter: Option<SorterKind>,
    /// Clock frequency in Hz.
    pub frequency_hz: Option<f64>,
}

impl LatencyQuery {
    pub fn scl(
        block_len: usize,
        processing_elements: usize,
        info_size: usize,
        frozen_clusters: usize,
        sorter: SorterKind,
    ) -> Self {
        Self {
            block_len,
            processing_elements,
            info_size,
            frozen_clusters,
            sorter: Some(sorter),
            frequency_hz: None,
        }
    }

    pub fn sc(block_len: usize, processing_elements: usize) -> Self {
        Self {
            block_len,
            processing_elements,
            info_size: 0,
            frozen_clusters: 0,
            sorter: None,
            frequency_hz: None,
        }
    }

    pub fn at_frequency(mut self, hz: f64) -> Self {
        self.frequency_hz = Some(hz);
        self
    }

    fn validate(&self) -> Result<()> {
        let (n, p) = (self.block_len, self.processing_elements);
        if !n.is_power_of_two() || !p.is_power_of_two() {
            return Err(Error::Latency(format!("N = {n} and P = {p} must be powers of two")));
        }
        if 4 * p > n {
            return Err(Error::Latency(format!("P = {p} exceeds N/4 = {}", n / 4)));
        }
        if self.info_size > n {
            return Err(Error::Latency(format!("|A| = {} exceeds N = {n}", self.info_size)));
        }
        Ok(())
    }
}

/// Cycles spent sorting metrics: `|A|` for the full sorter, `|A| + F_C` for
/// the pruned sorter (one extra cycle per frozen cluster), 0 for SC.
pub fn sorting_latency(q: &LatencyQuery) -> usize {
    match q.sorter {
        None => 0,
        Some(SorterKind::Full) => q.info_size,
        Some(SorterKind::Pruned) => q.info_size + q.frozen_clusters,
    }
}

/// `2N + (N/P) log2(N / 4P) + D_MS`.
pub fn decode_latency(q: &LatencyQuery) -> Result<usize> {
    q.validate()?;
    let (n, p) = (q.block_len, q.processing_elements);
    let log_term = (n / (4 * p)).trailing_zeros() as usize;
    Ok(2 * n + (n / p) * log_term + sorting_latency(q))
}

/// Coded throughput `f N / D` in bits per second.
pub fn throughput(q: &LatencyQuery) -> Result<f64> {
    let f = q
        .frequency_hz
        .ok_or_else(|| Error::Latency("throughput needs a clock frequency".into()))?;
    if !(f > 0.0) {
        return Err(Error::Latency(format!("frequency {f} must be positive")));
    }
    let cycles = decode_latency(q)?;
    Ok(f * q.block_len as f64 / cycles as f64)
}

//! Code definitions, Monte-Carlo construction and frozen-set files.

use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;

use crate::channel::AwgnChannel;
use crate::crc::CrcScheme;
use crate::error::{Error, Result};
use crate::rng::trial_rng;
use crate::sc_core::{load_root, metric_update_exact, Exact, ScState};

/// A polar code: block length `N = 2^n`, information set `A` and the values
/// of the frozen bits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolarCode {
    n: u32,
    info_set: Vec<usize>,
    frozen_values: Vec<u8>,
    is_info: Vec<bool>,
}

impl PolarCode {
    /// Code with all-zero frozen bits.
    pub fn new(n: u32, info_set: Vec<usize>) -> Result<Self> {
        if n > 24 {
            return Err(Error::InvalidCode(format!("n = {n} is too large")));
        }
        let len = 1usize << n;
        let k = info_set.len();
        Self::with_frozen_values(n, info_set, vec![0; len.saturating_sub(k)])
    }

    pub fn with_frozen_values(n: u32, info_set: Vec<usize>, frozen_values: Vec<u8>) -> Result<Self> {
        if n > 24 {
            return Err(Error::InvalidCode(format!("n = {n} is too large")));
        }
        let len = 1usize << n;
        if let Some(w) = info_set.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::InvalidCode(format!(
                "information set not strictly increasing at {} -> {}",
                w[0], w[1]
            )));
        }
        if let Some(&bad) = info_set.iter().find(|&&i| i >= len) {
            return Err(Error::InvalidCode(format!("index {bad} outside [0, {len})")));
        }
        if frozen_values.len() != len - info_set.len() {
            return Err(Error::LengthMismatch {
                expected: len - info_set.len(),
                actual: frozen_values.len(),
            });
        }
        if frozen_values.iter().any(|&b| b > 1) {
            return Err(Error::InvalidCode("frozen values must be binary".into()));
        }
        let mut is_info = vec![false; len];
        for &i in &info_set {
            is_info[i] = true;
        }
        Ok(Self {
            n,
            info_set,
            frozen_values,
            is_info,
        })
    }

    /// Rate-1 code of length `2^n`.
    pub fn rate_one(n: u32) -> Result<Self> {
        Self::new(n, (0..1usize << n).collect())
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Block length `N`.
    pub fn len(&self) -> usize {
        1usize << self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `|A|`.
    pub fn k(&self) -> usize {
        self.info_set.len()
    }

    pub fn rate(&self) -> f64 {
        self.k() as f64 / self.len() as f64
    }

    pub fn info_set(&self) -> &[usize] {
        &self.info_set
    }

    pub fn frozen_set(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| !self.is_info[i]).collect()
    }

    pub fn frozen_values(&self) -> &[u8] {
        &self.frozen_values
    }

    #[inline]
    pub fn is_info(&self, i: usize) -> bool {
        self.is_info[i]
    }

    pub fn info_mask(&self) -> &[bool] {
        &self.is_info
    }

    /// Length-`N` vector with frozen values in place and zeros on `A`.
    pub fn frozen_vector(&self) -> Vec<u8> {
        let mut u = vec![0u8; self.len()];
        let mut fv = self.frozen_values.iter();
        for (i, slot) in u.iter_mut().enumerate() {
            if !self.is_info[i] {
                *slot = *fv.next().expect("frozen value count checked at construction");
            }
        }
        u
    }

    /// Parses the frozen-set text format (`N=<int>` then `A=<indices>`).
    pub fn from_frozen_file_str(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let bad = |msg: String| Error::FrozenFile(msg);
        let first = lines.next().ok_or_else(|| bad("missing N= line".into()))?;
        let len: usize = first
            .strip_prefix("N=")
            .ok_or_else(|| bad(format!("expected 'N=<int>', got '{first}'")))?
            .trim()
            .parse()
            .map_err(|e| bad(format!("invalid N: {e}")))?;
        if !len.is_power_of_two() || len < 2 {
            return Err(bad(format!("N = {len} is not a power of two >= 2")));
        }
        let second = lines.next().ok_or_else(|| bad("missing A= line".into()))?;
        let list = second
            .strip_prefix("A=")
            .ok_or_else(|| bad(format!("expected 'A=<indices>', got '{second}'")))?
            .trim();
        if let Some(extra) = lines.next() {
            return Err(bad(format!("unexpected trailing line '{extra}'")));
        }
        let mut info_set = Vec::new();
        if !list.is_empty() {
            for tok in list.split(',') {
                let idx: usize = tok
                    .trim()
                    .parse()
                    .map_err(|e| bad(format!("invalid index '{}': {e}", tok.trim())))?;
                if idx >= len {
                    return Err(bad(format!("index {idx} out of range for N = {len}")));
                }
                if let Some(&prev) = info_set.last() {
                    if idx == prev {
                        return Err(bad(format!("duplicate index {idx}")));
                    }
                    if idx < prev {
                        return Err(bad(format!("indices not increasing at {prev} -> {idx}")));
                    }
                }
                info_set.push(idx);
            }
        }
        Self::new(len.trailing_zeros(), info_set)
    }

    pub fn to_frozen_file_string(&self) -> String {
        let mut s = format!("N={}\nA=", self.len());
        for (j, i) in self.info_set.iter().enumerate() {
            if j > 0 {
                s.push(',');
            }
            write!(s, "{i}").expect("writing to a String cannot fail");
        }
        s.push('\n');
        s
    }

    pub fn read_frozen_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::FrozenFile(format!("{}: {e}", path.display())))?;
        Self::from_frozen_file_str(&text)
    }

    pub fn write_frozen_file(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_frozen_file_string())
            .map_err(|e| Error::FrozenFile(format!("{}: {e}", path.display())))
    }
}

/// Number of maximal runs of consecutive frozen indices.
pub fn frozen_cluster_count(code: &PolarCode) -> usize {
    let mask = code.info_mask();
    mask.iter()
        .enumerate()
        .filter(|&(i, &info)| !info && (i == 0 || mask[i - 1]))
        .count()
}

/// Parameters of the genie-aided Monte-Carlo construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstructionParams {
    pub design_ebn0_db: f64,
    pub trials: u64,
    pub seed: u64,
}

impl Default for ConstructionParams {
    fn default() -> Self {
        Self {
            design_ebn0_db: 2.0,
            trials: 100_000,
            seed: 0,
        }
    }
}

/// Per-index reliability estimates from genie-aided SC decoding.
#[derive(Debug, Clone, PartialEq)]
pub struct BitChannelStats {
    pub trials: u64,
    /// Decision errors per index (decisions are corrected after counting).
    pub errors: Vec<u64>,
    /// Sum over trials of `-ln Pr[u_i = true | y, u_0^{i-1}]`; breaks ties
    /// between indices with equal error counts.
    pub soft_penalty: Vec<f64>,
}

impl BitChannelStats {
    pub fn error_rates(&self) -> Vec<f64> {
        self.errors
            .iter()
            .map(|&e| e as f64 / self.trials as f64)
            .collect()
    }

    /// Indices ordered from most to least reliable.
    pub fn reliability_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.errors.len()).collect();
        order.sort_by(|&a, &b| {
            self.errors[a]
                .cmp(&self.errors[b])
                .then(self.soft_penalty[a].total_cmp(&self.soft_penalty[b]))
                .then(a.cmp(&b))
        });
        order
    }
}

const CONSTRUCTION_CHUNK: u64 = 256;

/// Runs `trials` genie-aided SC decodings of the all-zero codeword at the
/// design SNR (rate `k / 2^n`).
pub fn estimate_bit_channels(n: u32, k: usize, params: &ConstructionParams) -> Result<BitChannelStats> {
    if n < 1 {
        return Err(Error::InvalidCode("n must be at least 1".into()));
    }
    let len = 1usize << n;
    if k == 0 || k > len {
        return Err(Error::InvalidCode(format!("K = {k} not in 1..={len}")));
    }
    if params.trials == 0 {
        return Err(Error::InvalidCode("construction needs at least one trial".into()));
    }
    let channel = AwgnChannel::new(params.design_ebn0_db, k as f64 / len as f64)?;
    let chunks = params.trials.div_ceil(CONSTRUCTION_CHUNK);
    let zeros = vec![0u8; len];
    let partials: Vec<(Vec<u64>, Vec<f64>)> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut errors = vec![0u64; len];
            let mut soft = vec![0f64; len];
            let mut state: ScState<f64> = ScState::new(n);
            let mut root = Vec::with_capacity(len);
            let mut y = Vec::with_capacity(len);
            let end = ((c + 1) * CONSTRUCTION_CHUNK).min(params.trials);
            for t in c * CONSTRUCTION_CHUNK..end {
                let mut rng = trial_rng(params.seed, u64::MAX, t);
                channel.transmit_into(&zeros, &mut rng, &mut y);
                let llrs = channel.channel_llrs(&y);
                load_root(&Exact, &llrs, &mut root).expect("power-of-two length");
                state.reset();
                for i in 0..len {
                    let l = state.decision_llr_unchecked(&Exact, &root, i);
                    if l < 0.0 {
                        errors[i] += 1;
                    }
                    soft[i] += metric_update_exact(0.0, l, 0);
                    state.commit_unchecked(i, 0);
                }
            }
            (errors, soft)
        })
        .collect();
    let mut errors = vec![0u64; len];
    let mut soft_penalty = vec![0f64; len];
    for (e, s) in partials {
        for i in 0..len {
            errors[i] += e[i];
            soft_penalty[i] += s[i];
        }
    }
    Ok(BitChannelStats {
        trials: params.trials,
        errors,
        soft_penalty,
    })
}

/// Genie-aided Monte-Carlo construction: the `K` indices with the fewest
/// estimated decision errors form the information set.
pub fn construct_monte_carlo(n: u32, k: usize, params: &ConstructionParams) -> Result<PolarCode> {
    if n < 1 {
        return Err(Error::InvalidCode("n must be at least 1".into()));
    }
    let len = 1usize << n;
    if k > len {
        return Err(Error::InvalidCode(format!("K = {k} exceeds N = {len}")));
    }
    if k == 0 {
        return PolarCode::new(n, Vec::new());
    }
    if k == len {
        return PolarCode::rate_one(n);
    }
    let stats = estimate_bit_channels(n, k, params)?;
    let mut info: Vec<usize> = stats.reliability_order().into_iter().take(k).collect();
    info.sort_unstable();
    PolarCode::new(n, info)
}

/// Constructs a code carrying `k_info` data bits plus an `r`-bit CRC. The
/// information set has `k_info + r` entries; the last `r` (in index order)
/// carry the CRC. Construction uses the effective rate `k_info / N`.
pub fn extend_with_crc(
    n: u32,
    k_info: usize,
    crc: Option<CrcScheme>,
    params: &ConstructionParams,
) -> Result<PolarCode> {
    let r = crc.map_or(0, |c| c.width());
    let len = 1usize << n.min(24);
    if k_info + r > len {
        return Err(Error::InvalidCode(format!(
            "K_info + r = {} exceeds N = {len}",
            k_info + r
        )));
    }
    if r == 0 {
        return construct_monte_carlo(n, k_info, params);
    }
    if n < 1 {
        return Err(Error::InvalidCode("n must be at least 1".into()));
    }
    let k = k_info + r;
    if k == len {
        return PolarCode::rate_one(n);
    }
    // simulate at the effective rate but rank for |A| = K_info + r
    let stats = estimate_bit_channels(n, k_info.max(1), params)?;
    let mut info: Vec<usize> = stats.reliability_order().into_iter().take(k).collect();
    info.sort_unstable();
    PolarCode::new(n, info)
}

//! LLR update rules and the successive-cancellation butterfly state.
//!
//! The transform `G_n = F^{⊗n} B_n` equals `B_n F^{⊗n}`, so decoding runs the
//! natural-order recursion on bit-reversed channel LLRs. Level `k` of the
//! decoding tree holds `2^k` LLRs; level `n` is the (reversed) channel and is
//! never written during a decode.

use std::fmt::Debug;

use crate::channel::{quantize, saturation_limit};
use crate::error::{Error, Result};

/// `ln((e^{a+b} + 1) / (e^a + e^b))`, evaluated without overflow.
#[inline]
pub fn f_minus_exact(a: f64, b: f64) -> f64 {
    let (abs_a, abs_b) = (a.abs(), b.abs());
    let sign = if (a < 0.0) != (b < 0.0) { -1.0 } else { 1.0 };
    // ln(1 + e^-p) - ln(1 + e^-q) with p = |a + b|, q = |a - b|; terms
    // below e^-40 are under f64 resolution of the result
    let (p, q) = ((a + b).abs(), (a - b).abs());
    let m = sign * abs_a.min(abs_b);
    if p > 40.0 && q > 40.0 {
        return m;
    }
    let ep = if p > 40.0 { 0.0 } else { (-p).exp() };
    let eq = if q > 40.0 { 0.0 } else { (-q).exp() };
    m + ((ep - eq) / (1.0 + eq)).ln_1p()
}

const SIGN: u64 = 1 << 63;

/// `sgn(a) sgn(b) min(|a|, |b|)`.
#[inline]
pub fn f_minus_minsum(a: f64, b: f64) -> f64 {
    // sign bits instead of branches so level loops vectorize
    let m = a.abs().min(b.abs());
    f64::from_bits(m.to_bits() | ((a.to_bits() ^ b.to_bits()) & SIGN))
}

#[inline]
pub fn f_minus_minsum_fixed(a: i32, b: i32) -> i32 {
    let m = a.abs().min(b.abs());
    let s = (a ^ b) >> 31;
    (m ^ s) - s
}

/// `(-1)^u a + b`.
#[inline]
pub fn f_plus(a: f64, b: f64, u: u8) -> f64 {
    b + f64::from_bits(a.to_bits() ^ (u64::from(u & 1) << 63))
}

/// Fixed-point `f+` saturating to `±limit`.
#[inline]
pub fn f_plus_fixed(a: i32, b: i32, u: u8, limit: i32) -> i32 {
    let neg = -i32::from(u & 1);
    (b + ((a ^ neg) - neg)).clamp(-limit, limit)
}

/// `ln(1 + e^x)` without overflow.
#[inline]
fn softplus(x: f64) -> f64 {
    x.max(0.0) + (-x.abs()).exp().ln_1p()
}

/// `phi(mu, lambda, u) = mu + ln(1 + e^{-(1 - 2u) lambda})`.
#[inline]
pub fn metric_update_exact(mu: f64, lambda: f64, u: u8) -> f64 {
    let signed = if u == 0 { lambda } else { -lambda };
    mu + softplus(-signed)
}

/// Hard-decision approximation: no penalty when `u` follows the LLR sign
/// (`sgn(0) = +1`), otherwise add `|lambda|`.
#[inline]
pub fn metric_update_approx(mu: f64, lambda: f64, u: u8) -> f64 {
    if u == hard_decision(lambda) {
        mu
    } else {
        mu + lambda.abs()
    }
}

/// Fixed-point approximate update saturating at `max_metric`.
#[inline]
pub fn metric_update_approx_fixed(mu: u32, lambda: i32, u: u8, max_metric: u32) -> u32 {
    let follows = u == u8::from(lambda < 0);
    if follows {
        mu
    } else {
        mu.saturating_add(lambda.unsigned_abs()).min(max_metric)
    }
}

/// `0` for `lambda >= 0`, otherwise `1`.
#[inline]
pub fn hard_decision(lambda: f64) -> u8 {
    u8::from(lambda < 0.0)
}

/// Number representation and update rules used by a decoder.
pub trait LlrArithmetic: Copy + Send + Sync + Debug {
    type Llr: Copy + Default + PartialOrd + Send + Sync + Debug;
    type Metric: Copy + PartialOrd + Send + Sync + Debug;
    /// One of the two metric children always equals the parent metric, so
    /// candidate lists built from sorted metrics suit the pruned sorter.
    const KEEPS_PARENT_METRIC: bool;

    fn from_channel(&self, llr: f64) -> Result<Self::Llr>;
    fn f_minus(&self, a: Self::Llr, b: Self::Llr) -> Self::Llr;
    fn f_plus(&self, a: Self::Llr, b: Self::Llr, u: u8) -> Self::Llr;
    fn decide(&self, lambda: Self::Llr) -> u8;
    fn metric_zero(&self) -> Self::Metric;
    /// Stands in for `+inf` when padding sorter inputs.
    fn metric_sentinel(&self) -> Self::Metric;
    fn metric_update(&self, mu: Self::Metric, lambda: Self::Llr, u: u8) -> Self::Metric;
    fn metric_to_f64(&self, mu: Self::Metric) -> f64;
    fn llr_to_f64(&self, lambda: Self::Llr) -> f64;
}

/// Floating point with the exact `f-` and the exact path-metric update.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Exact;

/// Floating-point min-sum with the approximate metric update.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct MinSum;

/// `Q`-bit LLRs and `M`-bit path metrics, min-sum updates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fixed {
    llr_bits: u32,
    metric_bits: u32,
    llr_limit: i32,
    metric_max: u32,
    scale: f64,
}

impl Fixed {
    pub fn new(llr_bits: u32, metric_bits: u32) -> Result<Self> {
        Self::with_scale(llr_bits, metric_bits, 1.0)
    }

    pub fn with_scale(llr_bits: u32, metric_bits: u32, scale: f64) -> Result<Self> {
        if !(2..=16).contains(&llr_bits) {
            return Err(Error::InvalidValue(format!("LLR width Q={llr_bits} not in 2..=16")));
        }
        if !(1..=31).contains(&metric_bits) {
            return Err(Error::InvalidValue(format!("metric width M={metric_bits} not in 1..=31")));
        }
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(Error::InvalidValue(format!("LLR scale {scale} must be positive")));
        }
        Ok(Self {
            llr_bits,
            metric_bits,
            llr_limit: saturation_limit(llr_bits),
            metric_max: (1u32 << metric_bits) - 1,
            scale,
        })
    }

    pub fn llr_bits(&self) -> u32 {
        self.llr_bits
    }

    pub fn metric_bits(&self) -> u32 {
        self.metric_bits
    }

    pub fn llr_limit(&self) -> i32 {
        self.llr_limit
    }

    pub fn metric_max(&self) -> u32 {
        self.metric_max
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }
}

impl LlrArithmetic for Exact {
    type Llr = f64;
    type Metric = f64;
    const KEEPS_PARENT_METRIC: bool = false;

    fn from_channel(&self, llr: f64) -> Result<f64> {
        Ok(llr)
    }
    #[inline]
    fn f_minus(&self, a: f64, b: f64) -> f64 {
        f_minus_exact(a, b)
    }
    #[inline]
    fn f_plus(&self, a: f64, b: f64, u: u8) -> f64 {
        f_plus(a, b, u)
    }
    #[inline]
    fn decide(&self, lambda: f64) -> u8 {
        hard_decision(lambda)
    }
    fn metric_zero(&self) -> f64 {
        0.0
    }
    fn metric_sentinel(&self) -> f64 {
        f64::INFINITY
    }
    #[inline]
    fn metric_update(&self, mu: f64, lambda: f64, u: u8) -> f64 {
        metric_update_exact(mu, lambda, u)
    }
    fn metric_to_f64(&self, mu: f64) -> f64 {
        mu
    }
    fn llr_to_f64(&self, lambda: f64) -> f64 {
        lambda
    }
}

impl LlrArithmetic for MinSum {
    type Llr = f64;
    type Metric = f64;
    const KEEPS_PARENT_METRIC: bool = true;

    fn from_channel(&self, llr: f64) -> Result<f64> {
        Ok(llr)
    }
    #[inline]
    fn f_minus(&self, a: f64, b: f64) -> f64 {
        f_minus_minsum(a, b)
    }
    #[inline]
    fn f_plus(&self, a: f64, b: f64, u: u8) -> f64 {
        f_plus(a, b, u)
    }
    #[inline]
    fn decide(&self, lambda: f64) -> u8 {
        hard_decision(lambda)
    }
    fn metric_zero(&self) -> f64 {
        0.0
    }
    fn metric_sentinel(&self) -> f64 {
        f64::INFINITY
    }
    #[inline]
    fn metric_update(&self, mu: f64, lambda: f64, u: u8) -> f64 {
        metric_update_approx(mu, lambda, u)
    }
    fn metric_to_f64(&self, mu: f64) -> f64 {
        mu
    }
    fn llr_to_f64(&self, lambda: f64) -> f64 {
        lambda
    }
}

impl LlrArithmetic for Fixed {
    type Llr = i32;
    type Metric = u32;
    const KEEPS_PARENT_METRIC: bool = true;

    fn from_channel(&self, llr: f64) -> Result<i32> {
        quantize(llr * self.scale, self.llr_bits)
    }
    #[inline]
    fn f_minus(&self, a: i32, b: i32) -> i32 {
        f_minus_minsum_fixed(a, b)
    }
    #[inline]
    fn f_plus(&self, a: i32, b: i32, u: u8) -> i32 {
        f_plus_fixed(a, b, u, self.llr_limit)
    }
    #[inline]
    fn decide(&self, lambda: i32) -> u8 {
        u8::from(lambda < 0)
    }
    fn metric_zero(&self) -> u32 {
        0
    }
    fn metric_sentinel(&self) -> u32 {
        self.metric_max
    }
    #[inline]
    fn metric_update(&self, mu: u32, lambda: i32, u: u8) -> u32 {
        metric_update_approx_fixed(mu, lambda, u, self.metric_max)
    }
    fn metric_to_f64(&self, mu: u32) -> f64 {
        f64::from(mu)
    }
    fn llr_to_f64(&self, lambda: i32) -> f64 {
        f64::from(lambda)
    }
}

#[inline]
fn level_range(k: u32) -> std::ops::Range<usize> {
    let start = (1usize << k) - 1;
    start..start + (1usize << k)
}

/// Intermediate LLRs for levels `0..n` (level `k` holds `2^k` values).
#[derive(Debug, Clone, PartialEq)]
pub struct LlrStageMemory<T> {
    n: u32,
    buf: Vec<T>,
}

impl<T: Copy + Default> LlrStageMemory<T> {
    pub fn new(n: u32) -> Self {
        Self {
            n,
            buf: vec![T::default(); (1usize << n) - 1],
        }
    }

    pub fn level(&self, k: u32) -> &[T] {
        &self.buf[level_range(k)]
    }
}

/// Partial sums: for each level `k < n`, the re-encoded bits of the most
/// recently completed left subtree of size `2^k`; level `n` holds the full
/// re-encoded word once the last bit is decided.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialSums {
    n: u32,
    buf: Vec<u8>,
}

impl PartialSums {
    pub fn new(n: u32) -> Self {
        Self {
            n,
            buf: vec![0; (1usize << (n + 1)) - 1],
        }
    }

    pub fn level(&self, k: u32) -> &[u8] {
        &self.buf[level_range(k)]
    }

    pub fn clear(&mut self) {
        self.buf.fill(0);
    }

    /// Records `u_hat` for bit `i` and folds it up to the first level where
    /// the enclosing subtree is a left child.
    pub fn update(&mut self, i: usize, u_hat: u8) {
        let j = fold_level(i, self.n);
        let (lower, rest) = self.buf.split_at_mut(level_range(j).start);
        let lower = &*lower;
        fold_partial_sums(&mut rest[..1usize << j], u_hat, |k| &lower[level_range(k)]);
    }
}

/// Fills one child level from its parent: `f-` for a left child, `f+`
/// with the left sibling's partial sums for a right child.
#[inline]
pub(crate) fn llr_level_step<A: LlrArithmetic>(
    arith: &A,
    parent: &[A::Llr],
    sums: &[u8],
    out: &mut [A::Llr],
    right_child: bool,
) {
    let half = out.len();
    let (lo, hi) = parent[..2 * half].split_at(half);
    if right_child {
        for (((o, &a), &b), &u) in out.iter_mut().zip(lo).zip(hi).zip(&sums[..half]) {
            *o = arith.f_plus(a, b, u);
        }
    } else {
        for ((o, &a), &b) in out.iter_mut().zip(lo).zip(hi) {
            *o = arith.f_minus(a, b);
        }
    }
}

/// Level receiving the folded partial sums after bit `i` of a length-`2^n`
/// code: the number of trailing ones of `i`.
#[inline]
pub(crate) fn fold_level(i: usize, n: u32) -> u32 {
    (!i).trailing_zeros().min(n)
}

/// Writes `u_hat` and the re-encoded left subtrees (levels `0..j`, read
/// through `lower`) into `dest`, the level-`j` partial sums.
#[inline]
pub(crate) fn fold_partial_sums<'a>(dest: &mut [u8], u_hat: u8, lower: impl Fn(u32) -> &'a [u8]) {
    let size = dest.len();
    dest[size - 1] = u_hat & 1;
    let j = size.trailing_zeros();
    for k in 0..j {
        let half = 1usize << k;
        let (head, tail) = dest[size - 2 * half..].split_at_mut(half);
        for ((h, &l), &t) in head.iter_mut().zip(&lower(k)[..half]).zip(&*tail) {
            *h = l ^ t;
        }
    }
}

/// Computes the decision LLR of bit `i` into `mem`, recomputing only the
/// levels invalidated since bit `i - 1`. `root` is the bit-reversed channel.
pub fn decision_llr<A: LlrArithmetic>(
    arith: &A,
    mem: &mut LlrStageMemory<A::Llr>,
    ps: &PartialSums,
    root: &[A::Llr],
    i: usize,
) -> A::Llr {
    let n = mem.n;
    let start = if i == 0 { n } else { i.trailing_zeros() + 1 };
    for k in (1..=start).rev() {
        let child = level_range(k - 1);
        let right_child = (i >> (k - 1)) & 1 == 1;
        let sums = &ps.buf[level_range(k - 1)];
        if k == n {
            llr_level_step(arith, root, sums, &mut mem.buf[child], right_child);
        } else {
            let (head, tail) = mem.buf.split_at_mut(level_range(k).start);
            llr_level_step(arith, tail, sums, &mut head[child], right_child);
        }
    }
    if n == 0 {
        root[0]
    } else {
        mem.buf[0]
    }
}

/// One SC decoding thread: LLR memory, partial sums and the next bit index.
#[derive(Debug, Clone, PartialEq)]
pub struct ScState<T> {
    n: u32,
    next: usize,
    llrs: LlrStageMemory<T>,
    sums: PartialSums,
}

impl<T: Copy + Default> ScState<T> {
    pub fn new(n: u32) -> Self {
        Self {
            n,
            next: 0,
            llrs: LlrStageMemory::new(n),
            sums: PartialSums::new(n),
        }
    }

    pub fn reset(&mut self) {
        self.next = 0;
        self.sums.clear();
    }

    /// Overwrites `self` with `other` without reallocating.
    pub fn copy_from(&mut self, other: &Self) {
        debug_assert_eq!(self.n, other.n);
        self.next = other.next;
        self.llrs.buf.copy_from_slice(&other.llrs.buf);
        self.sums.buf.copy_from_slice(&other.sums.buf);
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn next_index(&self) -> usize {
        self.next
    }

    pub fn llrs(&self) -> &LlrStageMemory<T> {
        &self.llrs
    }

    pub fn partial_sums(&self) -> &PartialSums {
        &self.sums
    }

    /// Decision LLR for bit `i`; `i` must be the next undecided bit.
    pub fn decision_llr<A: LlrArithmetic<Llr = T>>(
        &mut self,
        arith: &A,
        root: &[T],
        i: usize,
    ) -> Result<T> {
        if i != self.next {
            return Err(Error::OutOfOrder {
                expected: self.next,
                got: i,
            });
        }
        if root.len() != 1usize << self.n {
            return Err(Error::LengthMismatch {
                expected: 1usize << self.n,
                actual: root.len(),
            });
        }
        Ok(decision_llr(arith, &mut self.llrs, &self.sums, root, i))
    }

    /// Commits the decision for bit `i`.
    pub fn update_partial_sums(&mut self, i: usize, u_hat: u8) -> Result<()> {
        if i != self.next {
            return Err(Error::OutOfOrder {
                expected: self.next,
                got: i,
            });
        }
        self.sums.update(i, u_hat);
        self.next += 1;
        Ok(())
    }

    #[inline]
    pub(crate) fn decision_llr_unchecked<A: LlrArithmetic<Llr = T>>(
        &mut self,
        arith: &A,
        root: &[T],
        i: usize,
    ) -> T {
        debug_assert_eq!(i, self.next);
        decision_llr(arith, &mut self.llrs, &self.sums, root, i)
    }

    #[inline]
    pub(crate) fn commit_unchecked(&mut self, i: usize, u_hat: u8) {
        debug_assert_eq!(i, self.next);
        self.sums.update(i, u_hat);
        self.next += 1;
    }

    /// Re-encoded codeword `x_hat` once every bit is decided.
    pub fn codeword_estimate(&self) -> Option<Vec<u8>> {
        if self.next != 1usize << self.n {
            return None;
        }
        let mut x = self.sums.level(self.n).to_vec();
        crate::encoder::bit_reverse_in_place(&mut x);
        Some(x)
    }
}

/// Bit-reverses channel LLRs into decoder order.
pub fn load_root<A: LlrArithmetic>(arith: &A, channel: &[f64], root: &mut Vec<A::Llr>) -> Result<()> {
    if !channel.len().is_power_of_two() {
        return Err(Error::InvalidValue(format!(
            "channel length {} is not a power of two",
            channel.len()
        )));
    }
    root.clear();
    for &l in channel {
        root.push(arith.from_channel(l)?);
    }
    crate::encoder::bit_reverse_in_place(root);
    Ok(())
}

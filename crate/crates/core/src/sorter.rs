//! Functional models of the radix-2L metric sorters.
//!
//! Each sorter ranks its `2L` inputs from pairwise comparator outcomes and
//! counts the comparators it actually evaluates. Comparator results that are
//! known in advance (pruned sorter) are filled in without counting them.
//! Ties are resolved in favour of the lower list position.

use crate::error::{Error, Result};

/// One entry of the candidate list: a metric and where it came from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Candidate<M> {
    pub metric: M,
    /// Source path, or `usize::MAX` for padding entries.
    pub path: usize,
    pub bit: u8,
}

impl<M> Candidate<M> {
    pub fn new(metric: M, path: usize, bit: u8) -> Self {
        Self { metric, path, bit }
    }

    pub fn is_padding(&self) -> bool {
        self.path == usize::MAX
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SortResult<M> {
    /// The `L` smallest entries in nondecreasing order.
    pub entries: Vec<Candidate<M>>,
    pub comparators_used: usize,
}

/// Which comparator network to model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum SorterKind {
    #[default]
    Full,
    Pruned,
}

impl std::str::FromStr for SorterKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(Self::Full),
            "pruned" => Ok(Self::Pruned),
            other => Err(Error::InvalidValue(format!(
                "unknown sorter '{other}' (expected full or pruned)"
            ))),
        }
    }
}

impl std::fmt::Display for SorterKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Full => "full",
            Self::Pruned => "pruned",
        })
    }
}

/// `C(2L, 2) = L(2L - 1)`.
pub fn full_comparator_count(l: usize) -> usize {
    l * (2 * l).saturating_sub(1)
}

/// `(L - 1)^2`.
pub fn pruned_comparator_count(l: usize) -> usize {
    l.saturating_sub(1).pow(2)
}

fn check_len<M>(m: &[Candidate<M>], l: usize) -> Result<()> {
    if l == 0 {
        return Err(Error::InvalidListSize);
    }
    if m.len() != 2 * l {
        return Err(Error::LengthMismatch {
            expected: 2 * l,
            actual: m.len(),
        });
    }
    Ok(())
}

/// Writes the entries of rank `0..keep` into `out`, in rank order.
fn gather_into<M: Copy>(m: &[Candidate<M>], ranks: &[usize], keep: usize, out: &mut Vec<Candidate<M>>) {
    out.clear();
    out.extend_from_slice(&m[..keep]);
    let mut placed = 0;
    for (c, &r) in m.iter().zip(ranks) {
        if r < keep {
            out[r] = *c;
            placed += 1;
        }
    }
    assert_eq!(placed, keep, "ranks form a permutation for comparable metrics");
}

fn gather<M: Copy>(m: &[Candidate<M>], ranks: &[usize], keep: usize) -> Vec<Candidate<M>> {
    let mut out = Vec::with_capacity(keep);
    gather_into(m, ranks, keep, &mut out);
    out
}

/// Rank of each entry from every pairwise comparison; returns the
/// comparator count.
fn full_ranks<M: PartialOrd>(m: &[Candidate<M>], ranks: &mut Vec<usize>) -> usize {
    ranks.clear();
    ranks.resize(m.len(), 0);
    let mut comparators = 0;
    for i in 0..m.len() {
        for j in i + 1..m.len() {
            comparators += 1;
            if m[j].metric < m[i].metric {
                ranks[i] += 1;
            } else {
                ranks[j] += 1;
            }
        }
    }
    comparators
}

/// Compares every pair of the `2L` candidates.
pub fn full_radix_sort<M: Copy + PartialOrd>(m: &[Candidate<M>], l: usize) -> Result<SortResult<M>> {
    check_len(m, l)?;
    let mut ranks = Vec::new();
    let comparators = full_ranks(m, &mut ranks);
    Ok(SortResult {
        entries: gather(m, &ranks, l),
        comparators_used: comparators,
    })
}

/// Checks `m[2l] <= m[2l + 2]` and `m[2l] <= m[2l + 1]`.
pub fn check_pruned_preconditions<M: PartialOrd + std::fmt::Debug>(m: &[Candidate<M>]) -> Result<()> {
    for (l, pair) in m.chunks_exact(2).enumerate() {
        if !(pair[0].metric <= pair[1].metric) {
            return Err(Error::SorterPrecondition(format!(
                "m[{}] = {:?} exceeds m[{}] = {:?}",
                2 * l,
                pair[0].metric,
                2 * l + 1,
                pair[1].metric
            )));
        }
        if 2 * l + 2 < m.len() && !(pair[0].metric <= m[2 * l + 2].metric) {
            return Err(Error::SorterPrecondition(format!(
                "even entries not sorted: m[{}] = {:?} > m[{}] = {:?}",
                2 * l,
                pair[0].metric,
                2 * l + 2,
                m[2 * l + 2].metric
            )));
        }
    }
    Ok(())
}

/// Full ranking produced by the pruned comparator network. Exact for every
/// entry whose true rank is below `L`, and for all entries when the last
/// one is the maximum.
fn pruned_ranks<M: PartialOrd>(m: &[Candidate<M>], ranks: &mut Vec<usize>) -> usize {
    let len = m.len();
    let last = len - 1;
    ranks.clear();
    ranks.resize(len, 0);
    let mut comparators = 0;
    for i in 0..len {
        for j in i + 1..len {
            let j_first = if i % 2 == 0 || j == last {
                // known: even entries precede everything after them, and the
                // last entry is never among the L smallest
                false
            } else {
                comparators += 1;
                m[j].metric < m[i].metric
            };
            if j_first {
                ranks[i] += 1;
            } else {
                ranks[j] += 1;
            }
        }
    }
    comparators
}

/// Pruned radix-2L sorter; requires the ordering properties checked by
/// [`check_pruned_preconditions`].
pub fn pruned_radix_sort<M: Copy + PartialOrd + std::fmt::Debug>(
    m: &[Candidate<M>],
    l: usize,
) -> Result<SortResult<M>> {
    let mut out = Vec::with_capacity(l);
    let comparators = radix_sort_into(SorterKind::Pruned, m, l, &mut Vec::new(), &mut out)?;
    Ok(SortResult {
        entries: out,
        comparators_used: comparators,
    })
}

pub fn radix_sort<M: Copy + PartialOrd + std::fmt::Debug>(
    kind: SorterKind,
    m: &[Candidate<M>],
    l: usize,
) -> Result<SortResult<M>> {
    match kind {
        SorterKind::Full => full_radix_sort(m, l),
        SorterKind::Pruned => pruned_radix_sort(m, l),
    }
}

/// Like [`radix_sort`] but reuses caller buffers: `ranks` is scratch and
/// `out` receives the `L` survivors. Returns the comparator count.
pub fn radix_sort_into<M: Copy + PartialOrd + std::fmt::Debug>(
    kind: SorterKind,
    m: &[Candidate<M>],
    l: usize,
    ranks: &mut Vec<usize>,
    out: &mut Vec<Candidate<M>>,
) -> Result<usize> {
    check_len(m, l)?;
    let comparators = match kind {
        SorterKind::Full => full_ranks(m, ranks),
        SorterKind::Pruned => {
            check_pruned_preconditions(m)?;
            pruned_ranks(m, ranks)
        }
    };
    gather_into(m, ranks, l, out);
    Ok(comparators)
}

/// Same survivors, in the same order, as the full sorter, found by a stable
/// insertion pass instead of all `C(2L, 2)` comparisons.
pub(crate) fn smallest_stable_into<M: Copy + PartialOrd>(m: &[Candidate<M>], l: usize, out: &mut Vec<Candidate<M>>) {
    out.clear();
    for c in m {
        if out.len() == l && !(c.metric < out[l - 1].metric) {
            continue;
        }
        // insert after every entry that is not larger (earlier index wins ties)
        let pos = out.iter().rposition(|e| !(c.metric < e.metric)).map_or(0, |p| p + 1);
        if out.len() == l {
            out.pop();
        }
        out.insert(pos, *c);
    }
}

/// Result of sorting `L` existing path metrics through the pruned network.
#[derive(Debug, Clone, PartialEq)]
pub struct ExistingSort<M> {
    pub sorted: Vec<M>,
    /// `sorted[r] == input[order[r]]`.
    pub order: Vec<usize>,
    pub comparators_used: usize,
    /// Some input equals the `+inf` stand-in (only possible with saturating
    /// fixed-point metrics); ordering among such entries is unreliable.
    pub sentinel_collision: bool,
}

/// Sorts `L` nonnegative metrics by feeding
/// `[0, a_0, 0, a_1, ..., 0, a_{L-2}, a_{L-1}, +inf]` to the pruned sorter.
pub fn sort_existing_metrics<M: Copy + PartialOrd + std::fmt::Debug>(
    a: &[M],
    zero: M,
    infinity: M,
) -> Result<ExistingSort<M>> {
    let l = a.len();
    if l == 0 {
        return Err(Error::InvalidListSize);
    }
    if let Some(bad) = a.iter().find(|&&v| !(v >= zero)) {
        return Err(Error::InvalidValue(format!("metric {bad:?} is negative")));
    }
    let mut b = Vec::with_capacity(2 * l);
    for (idx, &v) in a[..l - 1].iter().enumerate() {
        b.push(Candidate::new(zero, usize::MAX, 0));
        b.push(Candidate::new(v, idx, 0));
    }
    b.push(Candidate::new(a[l - 1], l - 1, 0));
    b.push(Candidate::new(infinity, usize::MAX, 0));
    check_pruned_preconditions(&b)?;
    let mut ranks = Vec::new();
    let comparators = pruned_ranks(&b, &mut ranks);
    let ranked = gather(&b, &ranks, 2 * l);
    let order: Vec<usize> = ranked
        .iter()
        .filter(|c| !c.is_padding())
        .map(|c| c.path)
        .collect();
    Ok(ExistingSort {
        sorted: order.iter().map(|&i| a[i]).collect(),
        order,
        comparators_used: comparators,
        sentinel_collision: a.iter().any(|&v| v == infinity),
    })
}

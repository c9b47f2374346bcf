//! SC state shared between list paths.
//!
//! Every LLR level and partial-sum level is rewritten in full whenever it
//! is written, so a duplicated path can keep pointing at its parent's
//! buffers until one of them writes. Duplication then costs a refcount bump
//! per level instead of a copy of the whole tree.

use crate::sc_core::{fold_level, fold_partial_sums, llr_level_step, LlrArithmetic};

const NONE: u16 = u16::MAX;
/// Supports block lengths up to `2^(MAX_LEVELS - 1)`.
pub(crate) const MAX_LEVELS: usize = 16;

/// One path's view into a [`TreePool`]. Cheap to copy; cloning a path goes
/// through [`TreePool::share`].
#[derive(Debug, Clone, Copy)]
pub(crate) struct TreeHandle {
    llr: [u16; MAX_LEVELS],
    sums: [u16; MAX_LEVELS],
    /// Level-0 partial sum (the previous decision), kept inline.
    sum0: u8,
    next: usize,
}

#[derive(Debug)]
struct Levels<T> {
    size: usize,
    data: Vec<T>,
    refs: Vec<u32>,
    free: Vec<u16>,
}

impl<T: Copy + Default> Levels<T> {
    fn new(size: usize) -> Self {
        Self {
            size,
            data: Vec::new(),
            refs: Vec::new(),
            free: Vec::new(),
        }
    }

    fn reset(&mut self) {
        self.refs.fill(0);
        self.free.clear();
        self.free.extend((0..self.refs.len() as u16).rev());
    }

    /// Slot owned only by the caller; no data is copied since the caller
    /// is about to overwrite it.
    #[inline]
    fn make_unique(&mut self, slot: &mut u16) {
        if *slot != NONE {
            if self.refs[*slot as usize] == 1 {
                return;
            }
            self.refs[*slot as usize] -= 1;
        }
        let s = match self.free.pop() {
            Some(s) => s,
            None => {
                let s = u16::try_from(self.refs.len()).expect("more than 65535 live paths");
                self.refs.push(0);
                self.data.resize(self.data.len() + self.size, T::default());
                s
            }
        };
        self.refs[s as usize] = 1;
        *slot = s;
    }

    #[inline]
    fn release(&mut self, slot: u16) {
        if slot != NONE {
            let r = &mut self.refs[slot as usize];
            *r -= 1;
            if *r == 0 {
                self.free.push(slot);
            }
        }
    }

    #[inline]
    fn retain(&mut self, slot: u16) {
        if slot != NONE {
            self.refs[slot as usize] += 1;
        }
    }

    #[inline]
    fn get(&self, slot: u16) -> &[T] {
        let start = slot as usize * self.size;
        &self.data[start..start + self.size]
    }

    #[inline]
    fn get_mut(&mut self, slot: u16) -> &mut [T] {
        let start = slot as usize * self.size;
        &mut self.data[start..start + self.size]
    }
}

/// Buffers for all paths of one list decoder.
#[derive(Debug)]
pub(crate) struct TreePool<T> {
    n: u32,
    /// Levels `0..n`; level `n` is the channel.
    llr: Vec<Levels<T>>,
    /// Levels `0..=n`.
    sums: Vec<Levels<u8>>,
}

impl<T: Copy + Default> TreePool<T> {
    pub(crate) fn new(n: u32) -> Self {
        assert!((n as usize) < MAX_LEVELS, "block length 2^{n} too large");
        Self {
            n,
            llr: (0..n).map(|k| Levels::new(1 << k)).collect(),
            sums: (0..=n).map(|k| Levels::new(1 << k)).collect(),
        }
    }

    /// Drops every handle and returns a fresh one.
    pub(crate) fn reset(&mut self) -> TreeHandle {
        self.llr.iter_mut().for_each(Levels::reset);
        self.sums.iter_mut().for_each(Levels::reset);
        TreeHandle {
            llr: [NONE; MAX_LEVELS],
            sums: [NONE; MAX_LEVELS],
            sum0: 0,
            next: 0,
        }
    }

    pub(crate) fn share(&mut self, h: &TreeHandle) -> TreeHandle {
        for k in 0..self.n as usize {
            self.llr[k].retain(h.llr[k]);
        }
        for k in 0..=self.n as usize {
            self.sums[k].retain(h.sums[k]);
        }
        *h
    }

    pub(crate) fn release(&mut self, h: &TreeHandle) {
        for k in 0..self.n as usize {
            self.llr[k].release(h.llr[k]);
        }
        for k in 0..=self.n as usize {
            self.sums[k].release(h.sums[k]);
        }
    }

    /// Decision LLR of bit `h.next`. Level 0 is never stored.
    pub(crate) fn decision_llr<A: LlrArithmetic<Llr = T>>(&mut self, arith: &A, h: &mut TreeHandle, root: &[T]) -> T {
        let n = self.n;
        let i = h.next;
        if n == 0 {
            return root[0];
        }
        let start = if i == 0 { n } else { i.trailing_zeros() + 1 };
        for k in (2..=start).rev() {
            let c = (k - 1) as usize;
            let right_child = (i >> c) & 1 == 1;
            let sums: &[u8] = if right_child { self.sums[c].get(h.sums[c]) } else { &[] };
            let (below, above) = self.llr.split_at_mut(k as usize);
            let child = &mut below[c];
            child.make_unique(&mut h.llr[c]);
            let out = child.get_mut(h.llr[c]);
            let parent = if k == n { root } else { above[0].get(h.llr[k as usize]) };
            llr_level_step(arith, parent, sums, out, right_child);
        }
        let parent = if n == 1 { root } else { self.llr[1].get(h.llr[1]) };
        if i & 1 == 1 {
            arith.f_plus(parent[0], parent[1], h.sum0)
        } else {
            arith.f_minus(parent[0], parent[1])
        }
    }

    /// Commits `u_hat` as the decision for bit `h.next`.
    pub(crate) fn commit(&mut self, h: &mut TreeHandle, u_hat: u8) {
        let j = fold_level(h.next, self.n) as usize;
        h.next += 1;
        if j == 0 {
            h.sum0 = u_hat & 1;
            return;
        }
        let (lower, rest) = self.sums.split_at_mut(j);
        let dest = &mut rest[0];
        dest.make_unique(&mut h.sums[j]);
        let lower = &*lower;
        let slots = h.sums;
        let sum0 = [h.sum0];
        fold_partial_sums(dest.get_mut(h.sums[j]), u_hat, |k| {
            if k == 0 {
                &sum0
            } else {
                lower[k as usize].get(slots[k as usize])
            }
        });
    }
}

//! Deciders and witnesses for n-divisibility (ordinary and tail sense) and
//! n-reducibility.
//!
//! A word is n-divisible when it factors as `v·u_1···u_n` with contiguous
//! blocks `u_1 ≻ u_2 ≻ ... ≻ u_n`, each pair comparable and strictly
//! decreasing. The decider is a longest-chain dynamic program over the DAG
//! of candidate blocks: block `[s, e)` may be followed by `[e, e')` exactly
//! when `w[s..e) ≻ w[e..e')`. With the common-extension length
//! `L = lcp(s, e)` this holds iff `L < e - s`, `e + L < |w|`,
//! `w[s+L] > w[e+L]` and `e' > e + L`, so the admissible successors form a
//! suffix range of end points and the whole table fills in `O(|w|^2)`.
//!
//! Appending letters to the last block never breaks the chain (the first
//! difference with its predecessor lies inside the shared range), so a
//! chain may stop anywhere and its last block is stretched to the end of
//! the word.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{invalid, CoreResult};
use crate::lcp::LcpTable;
use crate::periodicity::{find_power, PowerOccurrence};
use crate::word::{compare_letters, LexOutcome, Word};

/// `w = v·u_1···u_n`, stored by positions.
///
/// Block `i` starts at `prefix_len` (for `i = 0`) or `cut_points[i - 1]`
/// and ends where the next one starts; the last block ends at `word_len`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NDivisionWitness {
    pub prefix_len: usize,
    pub cut_points: Vec<usize>,
    pub word_len: usize,
}

impl NDivisionWitness {
    pub fn block_count(&self) -> usize {
        self.cut_points.len() + 1
    }

    /// Block boundaries as half-open ranges.
    pub fn ranges(&self) -> Vec<(usize, usize)> {
        let mut starts = Vec::with_capacity(self.block_count());
        starts.push(self.prefix_len);
        starts.extend_from_slice(&self.cut_points);
        let mut out = Vec::with_capacity(starts.len());
        for (i, &s) in starts.iter().enumerate() {
            let e = starts.get(i + 1).copied().unwrap_or(self.word_len);
            out.push((s, e));
        }
        out
    }

    pub fn prefix(&self, w: &Word) -> Word {
        w.slice(0, self.prefix_len)
    }

    pub fn blocks(&self, w: &Word) -> Vec<Word> {
        self.ranges().into_iter().map(|(s, e)| w.slice(s, e)).collect()
    }

    /// Coverage plus strict comparable descent of adjacent blocks.
    pub fn validate(&self, w: &Word) -> bool {
        if self.word_len != w.len() || self.prefix_len >= w.len() {
            return false;
        }
        let ranges = self.ranges();
        if ranges.iter().any(|&(s, e)| s >= e) {
            return false;
        }
        let letters = w.letters();
        ranges.windows(2).all(|pair| {
            let (a, b) = (pair[0], pair[1]);
            compare_letters(&letters[a.0..a.1], &letters[b.0..b.1]) == LexOutcome::Greater
        })
    }
}

/// `n` full tails with increasing starts forming a strictly decreasing chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TailDivisionWitness {
    pub starts: Vec<usize>,
}

impl TailDivisionWitness {
    pub fn validate(&self, w: &Word) -> bool {
        let letters = w.letters();
        self.starts.iter().all(|&s| s < w.len())
            && self.starts.windows(2).all(|p| {
                p[0] < p[1] && compare_letters(&letters[p[0]..], &letters[p[1]..]) == LexOutcome::Greater
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReducibilityVerdict {
    NDivisible(NDivisionWitness),
    ContainsPower(PowerOccurrence),
    Neither,
}

impl ReducibilityVerdict {
    pub fn is_reducible(&self) -> bool {
        !matches!(self, ReducibilityVerdict::Neither)
    }
}

/// Chain lengths over the block DAG of one word.
pub(crate) struct BlockChains {
    n: usize,
    /// `chain[s][e]`: longest chain whose first block is `[s, e)`.
    chain: Vec<u32>,
    /// `suffix_max[s][x]`: max of `chain[s][e]` over `e >= x`.
    suffix_max: Vec<u32>,
    /// `first_successor_end[s][e]`: least admissible end of the next block,
    /// or `n + 1` when block `[s, e)` has no successor.
    first_successor_end: Vec<u32>,
}

impl BlockChains {
    pub(crate) fn new(w: &[u8]) -> Self {
        let n = w.len();
        let stride = n + 2;
        let lcp = LcpTable::new(w);
        let mut chain = vec![0u32; stride * stride];
        let mut suffix_max = vec![0u32; stride * stride];
        let mut first_successor_end = vec![(n + 1) as u32; stride * stride];
        for s in (0..n).rev() {
            for e in s + 1..=n {
                let mut best = 1;
                if e < n {
                    let l = lcp.get(s, e);
                    if l < e - s && e + l < n && w[s + l] > w[e + l] {
                        let lo = e + l + 1;
                        first_successor_end[s * stride + e] = lo as u32;
                        best += suffix_max[e * stride + lo];
                    }
                }
                chain[s * stride + e] = best;
            }
            for x in (s + 1..=n).rev() {
                let next = suffix_max[s * stride + x + 1];
                suffix_max[s * stride + x] = next.max(chain[s * stride + x]);
            }
        }
        BlockChains { n, chain, suffix_max, first_successor_end }
    }

    #[inline]
    fn idx(&self, s: usize, e: usize) -> usize {
        s * (self.n + 2) + e
    }

    pub(crate) fn longest(&self) -> usize {
        (0..self.n).map(|s| self.suffix_max[self.idx(s, s + 1)]).max().unwrap_or(0) as usize
    }

    /// Lexicographically earliest `(prefix_len, cut_points)` with `n` blocks.
    pub(crate) fn witness(&self, blocks: usize) -> Option<NDivisionWitness> {
        let n = self.n;
        let need = blocks as u32;
        let prefix_len = (0..n).find(|&s| self.suffix_max[self.idx(s, s + 1)] >= need)?;
        let mut cut_points = Vec::with_capacity(blocks.saturating_sub(1));
        let mut start = prefix_len;
        let mut lo = prefix_len + 1;
        for remaining in (2..=blocks).rev() {
            let end = (lo..=n)
                .find(|&e| self.chain[self.idx(start, e)] >= remaining as u32)
                .expect("suffix maximum promised a feasible end");
            cut_points.push(end);
            lo = self.first_successor_end[self.idx(start, end)] as usize;
            start = end;
        }
        Some(NDivisionWitness { prefix_len, cut_points, word_len: n })
    }
}

fn check_n(n: usize) -> CoreResult<()> {
    if n == 0 {
        return Err(invalid("n must be at least 1"));
    }
    Ok(())
}

/// An n-division of `w` if one exists, choosing the lexicographically
/// earliest `(prefix_len, cut_points)` vector.
pub fn is_n_divisible(w: &Word, n: usize) -> CoreResult<Option<NDivisionWitness>> {
    check_n(n)?;
    if w.len() < n {
        return Ok(None);
    }
    let witness = BlockChains::new(w.letters()).witness(n);
    debug_assert!(witness.as_ref().is_none_or(|wit| wit.validate(w)));
    Ok(witness)
}

/// Largest `n` for which `w` is n-divisible.
pub fn max_division_index(w: &Word) -> CoreResult<usize> {
    if w.is_empty() {
        return Err(invalid("the empty word has no division index"));
    }
    Ok(BlockChains::new(w.letters()).longest())
}

/// `chains[i]`: longest strictly decreasing chain of tails starting with
/// the tail at `i` (tails further right only).
pub(crate) fn tail_chain_lengths(w: &[u8], lcp: &LcpTable) -> Vec<usize> {
    let n = w.len();
    let mut chains = vec![1usize; n];
    for i in (0..n).rev() {
        for j in i + 1..n {
            if tail_greater(w, lcp, i, j) {
                chains[i] = chains[i].max(chains[j] + 1);
            }
        }
    }
    chains
}

/// Whether the tail at `i` is comparable with and greater than the tail at `j > i`.
#[inline]
pub(crate) fn tail_greater(w: &[u8], lcp: &LcpTable, i: usize, j: usize) -> bool {
    let l = lcp.get(i, j);
    j + l < w.len() && w[i + l] > w[j + l]
}

/// A tail-sense n-division (lexicographically earliest start vector).
pub fn is_tail_n_divisible(w: &Word, n: usize) -> CoreResult<Option<TailDivisionWitness>> {
    check_n(n)?;
    let letters = w.letters();
    if letters.len() < n {
        return Ok(None);
    }
    let lcp = LcpTable::new(letters);
    let chains = tail_chain_lengths(letters, &lcp);
    let Some(first) = (0..letters.len()).find(|&i| chains[i] >= n) else {
        return Ok(None);
    };
    let mut starts = vec![first];
    for remaining in (1..n).rev() {
        let prev = *starts.last().unwrap();
        let next = (prev + 1..letters.len())
            .find(|&j| chains[j] >= remaining && tail_greater(letters, &lcp, prev, j))
            .expect("chain length promised a successor");
        starts.push(next);
    }
    Ok(Some(TailDivisionWitness { starts }))
}

/// Longest tail-sense division of `w`.
pub fn max_tail_division_index(w: &Word) -> usize {
    let letters = w.letters();
    let lcp = LcpTable::new(letters);
    tail_chain_lengths(letters, &lcp).into_iter().max().unwrap_or(0)
}

/// Either a `d`-th power (preferred) or an n-division.
pub fn reducibility(w: &Word, n: usize, d: usize) -> CoreResult<ReducibilityVerdict> {
    check_n(n)?;
    if let Some(power) = find_power(w, d)? {
        return Ok(ReducibilityVerdict::ContainsPower(power));
    }
    Ok(match is_n_divisible(w, n)? {
        Some(witness) => ReducibilityVerdict::NDivisible(witness),
        None => ReducibilityVerdict::Neither,
    })
}

/// Maximum number of pairwise disjoint occurrences of any factor of
/// length `len` (greedy leftmost per distinct factor).
pub fn max_disjoint_repeats(w: &[u8], len: usize) -> usize {
    if len == 0 || len > w.len() {
        return 0;
    }
    let mut starts: Vec<usize> = (0..=w.len() - len).collect();
    starts.sort_by(|&a, &b| w[a..a + len].cmp(&w[b..b + len]).then(a.cmp(&b)));
    let mut best = 0;
    let mut i = 0;
    while i < starts.len() {
        let key = &w[starts[i]..starts[i] + len];
        let mut count = 0;
        let mut next_free = 0;
        while i < starts.len() && &w[starts[i]..starts[i] + len] == key {
            if starts[i] >= next_free {
                count += 1;
                next_free = starts[i] + len;
            }
            i += 1;
        }
        best = best.max(count);
    }
    best
}

/// If `w` has `n` disjoint equal factors of length `n·d`, it must be
/// n-reducible. Returns whether that implication held (vacuously true when
/// the hypothesis fails).
pub fn lemma_2_5_audit(w: &Word, n: usize, d: usize) -> CoreResult<bool> {
    check_n(n)?;
    if d < 2 {
        return Err(invalid("d must be at least 2"));
    }
    if max_disjoint_repeats(w.letters(), n * d) < n {
        return Ok(true);
    }
    Ok(reducibility(w, n, d)?.is_reducible())
}

/// If `w` is tail-sense `4nd`-divisible, it must be n-reducible.
pub fn lemma_2_6_audit(w: &Word, n: usize, d: usize) -> CoreResult<bool> {
    check_n(n)?;
    if d < 2 {
        return Err(invalid("d must be at least 2"));
    }
    if is_tail_n_divisible(w, 4 * n * d)?.is_none() {
        return Ok(true);
    }
    Ok(reducibility(w, n, d)?.is_reducible())
}

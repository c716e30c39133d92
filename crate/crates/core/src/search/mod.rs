//! Exhaustive search of the language of words that are neither
//! n-divisible nor contain a `d`-th power, and permutation counting.
//!
//! Both properties persist in super-words, so the avoiders form a prefix
//! tree that a depth-first search can enumerate completely. Each node
//! keeps a longest-common-extension table and, for every block ending at
//! the current length, the longest decreasing chain of contiguous blocks
//! ending with it; appending a letter only adds blocks ending at the new
//! end, so a node costs `O(len^2)`.

mod multilinear;

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{invalid, CoreResult};

pub use multilinear::{multilinear_count, multilinear_count_brute, multilinear_count_shapes};

/// Which divisibility notion prunes the tree besides `d`-th powers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Gate {
    /// Ordinary n-divisibility.
    #[default]
    Ordinary,
    /// Ordinary and tail-sense n-divisibility.
    Tail,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AvoiderQuery {
    pub n: usize,
    pub d: usize,
    pub l: usize,
    pub max_len: usize,
    pub gate: Gate,
}

impl AvoiderQuery {
    pub fn new(n: usize, d: usize, l: usize, max_len: usize) -> CoreResult<Self> {
        let q = AvoiderQuery { n, d, l, max_len, gate: Gate::Ordinary };
        q.check()?;
        Ok(q)
    }

    pub fn with_gate(mut self, gate: Gate) -> Self {
        self.gate = gate;
        self
    }

    fn check(&self) -> CoreResult<()> {
        if self.n < 1 || self.d < 2 || !(1..=255).contains(&self.l) || self.max_len < 1 {
            return Err(invalid(alloc::format!(
                "need n >= 1, d >= 2, 1 <= l <= 255, max_len >= 1 (n = {}, d = {}, l = {}, max_len = {})",
                self.n,
                self.d,
                self.l,
                self.max_len
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    /// Longest avoider found (0 when even single letters fail).
    pub extremal_length: usize,
    /// Lexicographically least avoider of that length.
    pub witness: Vec<u8>,
    /// `counts[k - 1]`: avoiders of length `k`, for `k = 1..=max_len`.
    pub counts: Vec<u64>,
    /// Avoiders visited.
    pub nodes: u64,
    /// Some avoider reached `max_len`, so the length is only a lower bound.
    pub ceiling_hit: bool,
}

impl SearchReport {
    fn empty(max_len: usize) -> Self {
        SearchReport { extremal_length: 0, witness: Vec::new(), counts: vec![0; max_len], nodes: 0, ceiling_hit: false }
    }

    /// Combines reports of disjoint parts of the tree. Associative and
    /// commutative.
    pub fn merge(mut self, other: &SearchReport) -> SearchReport {
        if self.counts.len() < other.counts.len() {
            self.counts.resize(other.counts.len(), 0);
        }
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
        self.nodes += other.nodes;
        self.ceiling_hit |= other.ceiling_hit;
        let better = match other.extremal_length.cmp(&self.extremal_length) {
            Ordering::Greater => true,
            Ordering::Equal => other.witness < self.witness,
            Ordering::Less => false,
        };
        if better {
            self.extremal_length = other.extremal_length;
            self.witness.clone_from(&other.witness);
        }
        self
    }

    fn record(&mut self, word: &[u8], max_len: usize) {
        let len = word.len();
        self.counts[len - 1] += 1;
        self.nodes += 1;
        if len > self.extremal_length || (len == self.extremal_length && word < self.witness.as_slice()) {
            self.extremal_length = len;
            self.witness = word.to_vec();
        }
        if len == max_len {
            self.ceiling_hit = true;
        }
    }
}

/// Incremental state of one root-to-node path.
pub(crate) struct PathState {
    n: usize,
    d: usize,
    gate: Gate,
    cap: usize,
    word: Vec<u8>,
    /// `lcp[i * cap + j]` for `i < j < len`.
    lcp: Vec<u32>,
    /// `chain[e * cap + s]`: longest decreasing block chain whose last
    /// block is `[s, e)`, for `s < e <= len`.
    chain: Vec<u32>,
}

impl PathState {
    pub(crate) fn new(n: usize, d: usize, gate: Gate, cap: usize) -> Self {
        let cap = cap + 1;
        PathState {
            n,
            d,
            gate,
            cap,
            word: Vec::with_capacity(cap),
            lcp: vec![0; cap * cap],
            chain: vec![0; cap * cap],
        }
    }

    pub(crate) fn word(&self) -> &[u8] {
        &self.word
    }

    #[inline]
    fn lcp(&self, i: usize, j: usize) -> usize {
        self.lcp[i * self.cap + j] as usize
    }

    /// Appends `c`; returns whether the extended word still avoids. The
    /// letter stays appended either way and must be removed with `pop`.
    pub(crate) fn push(&mut self, c: u8) -> bool {
        let old = self.word.len();
        self.word.push(c);
        let cap = self.cap;
        for j in 1..old {
            let reach = (old - j) as u32;
            for i in 0..j {
                let cell = &mut self.lcp[i * cap + j];
                if *cell == reach && self.word[i + old - j] == c {
                    *cell += 1;
                }
            }
        }
        for i in 0..old {
            self.lcp[i * cap + old] = u32::from(self.word[i] == c);
        }
        !self.has_new_power() && !self.extend_chains() && !(self.gate == Gate::Tail && self.tail_divisible())
    }

    pub(crate) fn pop(&mut self) {
        let len = self.word.len();
        let old = len - 1;
        let cap = self.cap;
        for j in 1..old {
            let reach = (len - j) as u32;
            for i in 0..j {
                let cell = &mut self.lcp[i * cap + j];
                if *cell == reach {
                    *cell -= 1;
                }
            }
        }
        self.word.pop();
    }

    /// A `d`-th power ending at the last letter.
    fn has_new_power(&self) -> bool {
        let len = self.word.len();
        (1..=len / self.d).any(|r| self.lcp(len - self.d * r, len - (self.d - 1) * r) >= (self.d - 1) * r)
    }

    /// Fills chain values for blocks ending at the new length; returns
    /// whether one reaches `n`.
    fn extend_chains(&mut self) -> bool {
        let len = self.word.len();
        let cap = self.cap;
        let mut divisible = false;
        for s in 0..len {
            let tail_len = len - s;
            let mut best = 1;
            for p in 0..s {
                let head_len = s - p;
                let l = self.lcp(p, s);
                if l < head_len && l < tail_len && self.word[p + l] > self.word[s + l] {
                    best = best.max(self.chain[s * cap + p] + 1);
                }
            }
            self.chain[len * cap + s] = best;
            divisible |= best as usize >= self.n;
        }
        divisible
    }

    fn tail_divisible(&self) -> bool {
        let len = self.word.len();
        let mut chains = vec![1usize; len];
        for i in (0..len).rev() {
            for j in i + 1..len {
                let l = self.lcp(i, j);
                if j + l < len && self.word[i + l] > self.word[j + l] {
                    chains[i] = chains[i].max(chains[j] + 1);
                }
            }
            if chains[i] >= self.n {
                return true;
            }
        }
        false
    }
}

/// Follows `prefix` from the root; `None` if some prefix of it fails.
fn walk(q: &AvoiderQuery, prefix: &[u8]) -> CoreResult<Option<PathState>> {
    q.check()?;
    if prefix.len() > q.max_len || prefix.iter().any(|&c| c == 0 || c as usize > q.l) {
        return Err(invalid("prefix outside the query's alphabet or length"));
    }
    let mut state = PathState::new(q.n, q.d, q.gate, q.max_len);
    for &c in prefix {
        if !state.push(c) {
            return Ok(None);
        }
    }
    Ok(Some(state))
}

fn dfs(q: &AvoiderQuery, state: &mut PathState, depth_limit: usize, report: &mut SearchReport, frontier: Option<&mut Vec<Vec<u8>>>) {
    // Iterative to keep stack use flat for long words.
    let base = state.word().len();
    let mut next_letter = vec![1u8; depth_limit + 2];
    let mut frontier = frontier;
    let mut depth = base;
    loop {
        if depth == depth_limit || next_letter[depth] as usize > q.l {
            if depth == depth_limit {
                if let Some(f) = frontier.as_deref_mut() {
                    f.push(state.word().to_vec());
                }
            }
            if depth == base {
                break;
            }
            state.pop();
            depth -= 1;
            continue;
        }
        let c = next_letter[depth];
        next_letter[depth] += 1;
        if state.push(c) {
            report.record(state.word(), q.max_len);
            depth += 1;
            next_letter[depth] = 1;
        } else {
            state.pop();
        }
    }
}

/// Avoiders strictly extending `prefix` (which must itself avoid).
pub fn explore_subtree(q: &AvoiderQuery, prefix: &[u8]) -> CoreResult<SearchReport> {
    let mut report = SearchReport::empty(q.max_len);
    if let Some(mut state) = walk(q, prefix)? {
        dfs(q, &mut state, q.max_len, &mut report, None);
    }
    Ok(report)
}

/// Avoiders of length at most `depth`, and those of length exactly `depth`
/// in lexicographic order as the roots of the remaining subtrees.
pub fn split_frontier(q: &AvoiderQuery, depth: usize) -> CoreResult<(SearchReport, Vec<Vec<u8>>)> {
    q.check()?;
    let depth = depth.min(q.max_len);
    let mut report = SearchReport::empty(q.max_len);
    let mut frontier = Vec::new();
    let mut state = PathState::new(q.n, q.d, q.gate, q.max_len);
    dfs(q, &mut state, depth, &mut report, Some(&mut frontier));
    Ok((report, frontier))
}

/// Exhaustive extremal length, witness and per-length counts.
pub fn extremal_length(q: &AvoiderQuery) -> CoreResult<SearchReport> {
    explore_subtree(q, &[])
}

pub fn count_avoiders(q: &AvoiderQuery) -> CoreResult<Vec<u64>> {
    Ok(extremal_length(q)?.counts)
}

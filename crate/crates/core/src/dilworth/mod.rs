//! Tail posets, cycle posets and their chain decompositions.
//!
//! Both posets are "planar": every element has a position and a
//! lexicographic rank, and `x < y` iff `x` is strictly left of `y` and
//! strictly lex-smaller. Sorting by position (ties by decreasing rank) turns
//! chains into strictly increasing rank subsequences, so first-fit patience
//! assignment is optimal and its back-pointers yield a maximum antichain of
//! the same size (the Dilworth certificate).

mod process;
mod selector;

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{invalid, CoreError, CoreResult};
use crate::periodicity::{PowerOccurrence, WordCycle};
use crate::word::{compare_letters, LexOutcome, Word};

pub use process::{process_check, process_check_positions, ProcessCheck};
pub use selector::{
    cycle_selector, cycle_selector_trace, lemma_4_6_audit, lemma_4_7_audit, main_lemma_audit, phi, psi,
    selector, selector_trace, CycleLemmaAudit, MainLemmaAudit, SelectorTuple,
};

/// A finite poset whose elements carry a position and a lexicographic rank.
pub trait PlanarPoset {
    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `(position, rank)` of element `idx`.
    fn coordinates(&self, idx: usize) -> (usize, usize);

    /// The strict order, evaluated from the underlying words.
    fn less(&self, a: usize, b: usize) -> bool;
}

/// The first `⌊|w|/d⌋` tails of `w`, ordered by `u < v` iff `u ≺ v` and
/// `u` starts left of `v`.
#[derive(Debug, Clone)]
pub struct TailPoset {
    word: Word,
    ranks: Vec<usize>,
}

/// Result of building a tail poset: the poset, or the power that made two
/// of the tails incomparable.
#[derive(Debug, Clone)]
pub enum TailPosetBuild {
    Poset(TailPoset),
    Power(PowerOccurrence),
}

impl TailPosetBuild {
    pub fn poset(self) -> Option<TailPoset> {
        match self {
            TailPosetBuild::Poset(p) => Some(p),
            TailPosetBuild::Power(_) => None,
        }
    }
}

pub fn build_tail_poset(w: &Word, d: usize) -> CoreResult<TailPosetBuild> {
    if d < 2 {
        return Err(invalid(alloc::format!("d must be at least 2, got {d}")));
    }
    let letters = w.letters();
    let count = letters.len() / d;
    // Tail j being a prefix of tail i (i < j < count) makes w[i..] periodic
    // with period j - i, long enough to hold d copies.
    for i in 0..count {
        for j in i + 1..count {
            if compare_letters(&letters[i..], &letters[j..]) == LexOutcome::IncomparablePrefix {
                let r = j - i;
                let power = PowerOccurrence { start: i, root: w.slice(i, j), exponent: d };
                debug_assert!(i + d * r <= letters.len());
                debug_assert!(power.is_valid_in(w));
                return Ok(TailPosetBuild::Power(power));
            }
        }
    }
    let mut order: Vec<usize> = (0..count).collect();
    order.sort_by(|&a, &b| letters[a..].cmp(&letters[b..]));
    let mut ranks = vec![0; count];
    for (rank, &start) in order.iter().enumerate() {
        ranks[start] = rank;
    }
    Ok(TailPosetBuild::Poset(TailPoset { word: w.clone(), ranks }))
}

impl TailPoset {
    pub fn word(&self) -> &Word {
        &self.word
    }

    /// Start positions of the elements, which are `0..len`.
    pub fn starts(&self) -> core::ops::Range<usize> {
        0..self.ranks.len()
    }
}

impl PlanarPoset for TailPoset {
    fn len(&self) -> usize {
        self.ranks.len()
    }

    fn coordinates(&self, idx: usize) -> (usize, usize) {
        (idx, self.ranks[idx])
    }

    fn less(&self, a: usize, b: usize) -> bool {
        let letters = self.word.letters();
        a < b && compare_letters(&letters[a..], &letters[b..]) == LexOutcome::Less
    }
}

/// All rotations `v(i, j)` of pairwise non-conjugate word-cycles of one
/// length `m`, numbered by cycle `i` (in order of appearance) and shift `j`.
/// Element `i·m + j` is `v(i, j)`.
#[derive(Debug, Clone)]
pub struct CyclePoset {
    cycles: Vec<WordCycle>,
    m: usize,
    ranks: Vec<usize>,
}

impl CyclePoset {
    pub fn new(cycles: Vec<WordCycle>) -> CoreResult<Self> {
        let m = cycles.first().map_or(0, |c| c.len());
        if cycles.iter().any(|c| c.len() != m) {
            return Err(invalid("all cycles of a cycle poset must share one length"));
        }
        for (i, a) in cycles.iter().enumerate() {
            for b in &cycles[..i] {
                if a.canonical() == b.canonical() {
                    return Err(invalid(alloc::format!("cycles {} and {} are conjugate", a.base(), b.base())));
                }
            }
        }
        let total = cycles.len() * m;
        let mut order: Vec<usize> = (0..total).collect();
        let word_of = |e: usize| cycles[e / m].shifts()[e % m].letters();
        order.sort_by(|&a, &b| word_of(a).cmp(word_of(b)));
        let mut ranks = vec![0; total];
        for (rank, &e) in order.iter().enumerate() {
            ranks[e] = rank;
        }
        Ok(CyclePoset { cycles, m, ranks })
    }

    pub fn cycles(&self) -> &[WordCycle] {
        &self.cycles
    }

    pub fn cycle_len(&self) -> usize {
        self.m
    }

    /// The word `v(i, j)` of element `idx`.
    pub fn element(&self, idx: usize) -> &Word {
        &self.cycles[idx / self.m].shifts()[idx % self.m]
    }
}

impl PlanarPoset for CyclePoset {
    fn len(&self) -> usize {
        self.ranks.len()
    }

    fn coordinates(&self, idx: usize) -> (usize, usize) {
        (idx / self.m, self.ranks[idx])
    }

    fn less(&self, a: usize, b: usize) -> bool {
        a / self.m < b / self.m
            && compare_letters(self.element(a).letters(), self.element(b).letters()) == LexOutcome::Less
    }
}

/// A partition of the poset into chains (colors `0..chain_count`) together
/// with an antichain of size `chain_count` certifying optimality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainDecomposition {
    pub color: Vec<usize>,
    pub chain_count: usize,
    /// Elements of each chain in increasing order.
    pub chains: Vec<Vec<usize>>,
    pub antichain: Vec<usize>,
}

impl ChainDecomposition {
    pub fn color_of(&self, idx: usize) -> usize {
        self.color[idx]
    }
}

pub fn chain_decompose<P: PlanarPoset + ?Sized>(poset: &P) -> CoreResult<ChainDecomposition> {
    let len = poset.len();
    let mut order: Vec<usize> = (0..len).collect();
    order.sort_by(|&a, &b| {
        let (pa, ra) = poset.coordinates(a);
        let (pb, rb) = poset.coordinates(b);
        pa.cmp(&pb).then(rb.cmp(&ra))
    });

    let mut chains: Vec<Vec<usize>> = Vec::new();
    let mut color = vec![usize::MAX; len];
    let mut back = vec![usize::MAX; len];
    for &x in &order {
        let (px, rx) = poset.coordinates(x);
        let slot = chains.iter().position(|chain| {
            let (pl, rl) = poset.coordinates(*chain.last().unwrap());
            pl < px && rl < rx
        });
        let k = slot.unwrap_or(chains.len());
        if k > 0 {
            back[x] = *chains[k - 1].last().unwrap();
        }
        if k == chains.len() {
            chains.push(Vec::new());
        }
        chains[k].push(x);
        color[x] = k;
    }

    let mut antichain = Vec::new();
    if let Some(last) = chains.last() {
        let mut cur = *last.last().unwrap();
        loop {
            antichain.push(cur);
            if back[cur] == usize::MAX {
                break;
            }
            cur = back[cur];
        }
        antichain.reverse();
    }

    for chain in &chains {
        if let Some(pair) = chain.windows(2).find(|p| !poset.less(p[0], p[1])) {
            return Err(CoreError::InvariantViolation(alloc::format!(
                "elements {} and {} share a chain but are not ordered",
                pair[0],
                pair[1]
            )));
        }
    }
    for (i, &a) in antichain.iter().enumerate() {
        for &b in &antichain[i + 1..] {
            if poset.less(a, b) || poset.less(b, a) {
                return Err(CoreError::InvariantViolation(alloc::format!(
                    "certificate elements {a} and {b} are comparable"
                )));
            }
        }
    }
    if antichain.len() != chains.len() {
        return Err(CoreError::InvariantViolation("antichain certificate is smaller than the chain count".into()));
    }

    Ok(ChainDecomposition { color, chain_count: chains.len(), chains, antichain })
}

/// A maximum antichain of the poset.
pub fn max_antichain<P: PlanarPoset + ?Sized>(poset: &P) -> CoreResult<Vec<usize>> {
    Ok(chain_decompose(poset)?.antichain)
}

/// Chain-count parameter for tail posets: `4nd - 1`.
pub fn p_nd(n: usize, d: usize) -> usize {
    4 * n * d - 1
}

/// Chain-count parameter for cycle posets: `n - 1`.
pub fn q_n(n: usize) -> usize {
    n.saturating_sub(1)
}

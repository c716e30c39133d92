//! Selector tuples over chain colorings and the run statistics ψ and φ.
//!
//! For a coloring of positions by chain, the tuple at position `i` holds,
//! for every color, the `p`-letter tail starting at the latest position
//! `f <= i` of that color, or θ when there is none. ψ(p) is the longest run
//! of consecutive positions with equal tuples. φ is the same statistic for
//! cycle posets, indexed by cycle rather than by letter position.
//!
//! Both statistics are non-increasing in the tail length: equal `b`-tails
//! have equal `a`-prefixes for `a < b`, so every run at length `b` is also a
//! run at length `a`.

use alloc::vec;
use alloc::vec::Vec;

use super::{build_tail_poset, chain_decompose, p_nd, q_n, ChainDecomposition, CyclePoset, PlanarPoset, TailPoset, TailPosetBuild};
use crate::divisibility::reducibility;
use crate::error::{invalid, CoreError, CoreResult};
use crate::word::{SelectorEntry, Word};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SelectorTuple {
    pub entries: Vec<SelectorEntry>,
}

fn check_mask(mask: Option<&[bool]>, len: usize) -> CoreResult<()> {
    match mask {
        Some(m) if m.len() != len => Err(invalid(alloc::format!(
            "position mask has {} entries for a region of {len} positions",
            m.len()
        ))),
        _ => Ok(()),
    }
}

fn tail_entry(word: &Word, start: usize, p: usize) -> SelectorEntry {
    let letters = word.letters();
    let end = (start + p).min(letters.len());
    SelectorEntry::Tail(letters[start..end].to_vec())
}

/// Tuples at every admitted position of the tail poset's region, in order.
///
/// Positions where `mask` is `false` neither update the tuple nor appear
/// in the trace. Tails running past the end of the word are cut short.
pub fn selector_trace(
    poset: &TailPoset,
    dec: &ChainDecomposition,
    p: usize,
    mask: Option<&[bool]>,
) -> CoreResult<Vec<(usize, SelectorTuple)>> {
    if p == 0 {
        return Err(invalid("tail length p must be at least 1"));
    }
    check_mask(mask, poset.len())?;
    let word = poset.word();
    let mut latest: Vec<Option<usize>> = vec![None; dec.chain_count];
    let mut out = Vec::with_capacity(poset.len());
    for i in poset.starts() {
        if mask.is_some_and(|m| !m[i]) {
            continue;
        }
        latest[dec.color_of(i)] = Some(i);
        let entries = latest
            .iter()
            .map(|f| f.map_or(SelectorEntry::Theta, |f| tail_entry(word, f, p)))
            .collect();
        out.push((i, SelectorTuple { entries }));
    }
    Ok(out)
}

/// The tuple at position `i` (all positions admitted).
pub fn selector(poset: &TailPoset, dec: &ChainDecomposition, p: usize, i: usize) -> CoreResult<SelectorTuple> {
    if i >= poset.len() {
        return Err(CoreError::OutOfRange { start: i, len: 1, word_len: poset.len() });
    }
    if p == 0 {
        return Err(invalid("tail length p must be at least 1"));
    }
    let word = poset.word();
    let entries = (0..dec.chain_count)
        .map(|j| {
            (0..=i)
                .rev()
                .find(|&f| dec.color_of(f) == j)
                .map_or(SelectorEntry::Theta, |f| tail_entry(word, f, p))
        })
        .collect();
    Ok(SelectorTuple { entries })
}

fn longest_run<T: PartialEq>(items: impl IntoIterator<Item = T>) -> usize {
    let mut best = 0;
    let mut run = 0;
    let mut prev: Option<T> = None;
    for item in items {
        run = if prev.as_ref() == Some(&item) { run + 1 } else { 1 };
        best = best.max(run);
        prev = Some(item);
    }
    best
}

/// ψ(p): the longest run of equal consecutive selector tuples.
pub fn psi(poset: &TailPoset, dec: &ChainDecomposition, p: usize, mask: Option<&[bool]>) -> CoreResult<usize> {
    Ok(longest_run(selector_trace(poset, dec, p, mask)?.into_iter().map(|(_, t)| t)))
}

/// Both sides of `ψ(a) <= p_{n,d}^k ψ(k·a) + k·a` on one word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MainLemmaAudit {
    /// The word was n-reducible, so the lemma does not apply.
    pub skipped: bool,
    pub psi_a: usize,
    pub psi_ka: usize,
    pub rhs: u128,
    pub chain_count: usize,
    pub holds: bool,
}

pub(crate) fn saturating_pow(base: u128, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base);
    }
    acc
}

pub fn main_lemma_audit(
    w: &Word,
    n: usize,
    d: usize,
    a: usize,
    k: usize,
    mask: Option<&[bool]>,
) -> CoreResult<MainLemmaAudit> {
    if a == 0 || k == 0 {
        return Err(invalid("a and k must be positive"));
    }
    let skipped = MainLemmaAudit { skipped: true, psi_a: 0, psi_ka: 0, rhs: 0, chain_count: 0, holds: true };
    if reducibility(w, n, d)?.is_reducible() {
        return Ok(skipped);
    }
    let poset = match build_tail_poset(w, d)? {
        TailPosetBuild::Poset(p) => p,
        TailPosetBuild::Power(_) => return Ok(skipped),
    };
    let dec = chain_decompose(&poset)?;
    let psi_a = psi(&poset, &dec, a, mask)?;
    let psi_ka = psi(&poset, &dec, k * a, mask)?;
    let rhs = saturating_pow(p_nd(n, d) as u128, k)
        .saturating_mul(psi_ka as u128)
        .saturating_add((k * a) as u128);
    Ok(MainLemmaAudit {
        skipped: false,
        psi_a,
        psi_ka,
        rhs,
        chain_count: dec.chain_count,
        holds: psi_a as u128 <= rhs,
    })
}

/// For every cycle, the `(color, shift)` pairs of its rotations.
fn cycle_colors(poset: &CyclePoset, dec: &ChainDecomposition) -> Vec<Vec<(usize, usize)>> {
    let m = poset.cycle_len();
    (0..poset.cycles().len())
        .map(|i| (0..m).map(|j| (dec.color_of(i * m + j), j)).collect())
        .collect()
}

/// Tuples `C^α(i)` for every cycle index `i`.
pub fn cycle_selector_trace(poset: &CyclePoset, dec: &ChainDecomposition, alpha: usize) -> CoreResult<Vec<SelectorTuple>> {
    let m = poset.cycle_len();
    if poset.cycles().is_empty() {
        return Ok(Vec::new());
    }
    if alpha == 0 || alpha > m {
        return Err(invalid(alloc::format!("alpha must lie in 1..={m}, got {alpha}")));
    }
    let colors = cycle_colors(poset, dec);
    let mut latest: Vec<Option<(usize, usize)>> = vec![None; dec.chain_count];
    let mut out = Vec::with_capacity(colors.len());
    for (i, pairs) in colors.iter().enumerate() {
        for &(color, shift) in pairs {
            latest[color] = Some((i, shift));
        }
        let entries = latest
            .iter()
            .map(|slot| {
                slot.map_or(SelectorEntry::Theta, |(f, j)| {
                    SelectorEntry::Tail(poset.cycles()[f].shifts()[j].letters()[..alpha].to_vec())
                })
            })
            .collect();
        out.push(SelectorTuple { entries });
    }
    Ok(out)
}

pub fn cycle_selector(poset: &CyclePoset, dec: &ChainDecomposition, alpha: usize, i: usize) -> CoreResult<SelectorTuple> {
    let trace = cycle_selector_trace(poset, dec, alpha)?;
    trace
        .into_iter()
        .nth(i)
        .ok_or(CoreError::OutOfRange { start: i, len: 1, word_len: poset.cycles().len() })
}

/// φ(α): the longest run of equal consecutive `C^α` tuples (0 without cycles).
pub fn phi(poset: &CyclePoset, dec: &ChainDecomposition, alpha: usize) -> CoreResult<usize> {
    Ok(longest_run(cycle_selector_trace(poset, dec, alpha)?))
}

/// An inequality `lhs <= rhs_num / rhs_den` checked on one cycle poset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleLemmaAudit {
    pub lhs: usize,
    pub rhs_num: u128,
    pub rhs_den: u128,
    pub holds: bool,
    /// The same inequality with `q_n` in place of `p_{n,d}` (cycle-run scaling audit).
    pub holds_with_qn: Option<bool>,
}

/// `φ(m) <= q_n / m` for cycles of length `m < n`.
pub fn lemma_4_6_audit(poset: &CyclePoset, dec: &ChainDecomposition, n: usize) -> CoreResult<CycleLemmaAudit> {
    let m = poset.cycle_len();
    if poset.cycles().is_empty() {
        return Ok(CycleLemmaAudit { lhs: 0, rhs_num: q_n(n) as u128, rhs_den: 1, holds: true, holds_with_qn: None });
    }
    if m >= n {
        return Err(CoreError::Precondition(alloc::format!("cycle length {m} must be below n = {n}")));
    }
    let lhs = phi(poset, dec, m)?;
    Ok(CycleLemmaAudit {
        lhs,
        rhs_num: q_n(n) as u128,
        rhs_den: m as u128,
        holds: (lhs * m) <= q_n(n),
        holds_with_qn: None,
    })
}

/// `φ(a) <= p_{n,d}^k φ(k·a)` for `a·k <= m`.
pub fn lemma_4_7_audit(
    poset: &CyclePoset,
    dec: &ChainDecomposition,
    n: usize,
    d: usize,
    a: usize,
    k: usize,
) -> CoreResult<CycleLemmaAudit> {
    if a == 0 || k == 0 {
        return Err(invalid("a and k must be positive"));
    }
    if poset.cycles().is_empty() {
        return Ok(CycleLemmaAudit { lhs: 0, rhs_num: 0, rhs_den: 1, holds: true, holds_with_qn: Some(true) });
    }
    let m = poset.cycle_len();
    if a * k > m {
        return Err(invalid(alloc::format!("a·k = {} exceeds the cycle length {m}", a * k)));
    }
    let lhs = phi(poset, dec, a)?;
    let phi_ka = phi(poset, dec, a * k)? as u128;
    let rhs = saturating_pow(p_nd(n, d) as u128, k).saturating_mul(phi_ka);
    let rhs_q = saturating_pow(q_n(n) as u128, k).saturating_mul(phi_ka);
    Ok(CycleLemmaAudit {
        lhs,
        rhs_num: rhs,
        rhs_den: 1,
        holds: lhs as u128 <= rhs,
        holds_with_qn: Some(lhs as u128 <= rhs_q),
    })
}

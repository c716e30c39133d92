//! Height decompositions over short words, essential periodic fragments,
//! and the fragment-excision procedure.

mod excise;

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::divisibility::{is_n_divisible, NDivisionWitness};
use crate::error::{invalid, CoreError, CoreResult};
use crate::lcp::LcpTable;
use crate::periodicity::WordCycle;
use crate::word::{compare_letters, Word};

pub use excise::{
    excise, fragment_statistics, ExcisionStep, ExcisionTrace, FragmentStatistics, PeriodicPieceAudit, PositionType,
};

/// `w = y_1^{k_1} ··· y_h^{k_h}` with every `|y_i| <= n - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeightDecomposition {
    pub factors: Vec<(Word, usize)>,
}

impl HeightDecomposition {
    pub fn height(&self) -> usize {
        self.factors.len()
    }

    pub fn reproduce(&self) -> Vec<u8> {
        let mut out = Vec::new();
        for (root, k) in &self.factors {
            for _ in 0..*k {
                out.extend_from_slice(root.letters());
            }
        }
        out
    }
}

/// Smallest `p < n` with `p | len` such that the window `[s, s+len)` has
/// period `p`.
fn short_root(lcp: &LcpTable, s: usize, len: usize, n: usize) -> Option<usize> {
    (1..n.min(len + 1)).find(|&p| len.is_multiple_of(p) && (p == len || lcp.get(s, s + p) >= len - p))
}

/// A factorization into the fewest powers of words shorter than `n`.
/// Among optimal factorizations the one with the longest first factor
/// (then longest second, and so on) is returned.
pub fn word_height(w: &Word, n: usize) -> CoreResult<HeightDecomposition> {
    if n < 2 {
        return Err(invalid(alloc::format!("height needs n >= 2, got {n}")));
    }
    let letters = w.letters();
    let len = letters.len();
    let lcp = LcpTable::new(letters);
    // best[i]: fewest factors covering letters[i..]; next[i]: end of the
    // first factor, root[i]: its root length.
    let mut best = vec![usize::MAX; len + 1];
    let mut next = vec![0; len + 1];
    let mut root = vec![0; len + 1];
    best[len] = 0;
    for s in (0..len).rev() {
        for e in (s + 1..=len).rev() {
            if best[e] == usize::MAX || best[e] + 1 >= best[s] {
                continue;
            }
            if let Some(p) = short_root(&lcp, s, e - s, n) {
                best[s] = best[e] + 1;
                next[s] = e;
                root[s] = p;
            }
        }
    }
    let mut factors = Vec::with_capacity(best[0]);
    let mut s = 0;
    while s < len {
        let (e, p) = (next[s], root[s]);
        factors.push((w.slice(s, s + p), (e - s) / p));
        s = e;
    }
    Ok(HeightDecomposition { factors })
}

/// One periodic fragment `x^exponent` occupying `[start, start + |x|·exponent)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fragment {
    pub start: usize,
    pub root: Word,
    pub exponent: usize,
}

impl Fragment {
    pub fn end(&self) -> usize {
        self.start + self.root.len() * self.exponent
    }
}

/// `w = y_0 x_1^{e_1} y_1 ··· x_s^{e_s} y_s` with `|x_i| < n`, `e_i > 2n`,
/// and every inner separator longer than `n` and comparable with the
/// period before it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EssentialFragments {
    pub fragments: Vec<Fragment>,
    /// `s + 1` half-open ranges; separator `i` follows fragment `i`.
    pub separators: Vec<(usize, usize)>,
}

impl EssentialFragments {
    pub fn count(&self) -> usize {
        self.fragments.len()
    }

    pub fn validate(&self, w: &Word, n: usize) -> bool {
        let letters = w.letters();
        let mut cursor = 0;
        for (i, f) in self.fragments.iter().enumerate() {
            let (s, e) = self.separators[i];
            if s != cursor || e != f.start || f.end() > letters.len() {
                return false;
            }
            if i > 0 && e - s <= n {
                return false;
            }
            let p = f.root.len();
            let exact = letters[f.start..f.end()].chunks(p).all(|c| c == f.root.letters());
            if !exact || p >= n || f.exponent <= 2 * n || !crate::periodicity::is_primitive(f.root.letters()) {
                return false;
            }
            if i > 0 {
                let prev = &self.fragments[i - 1];
                if !compare_letters(&letters[s..e], prev.root.letters()).is_comparable() {
                    return false;
                }
            }
            cursor = f.end();
        }
        self.separators.len() == self.fragments.len() + 1 && self.separators.last() == Some(&(cursor, letters.len()))
    }
}

/// Greedy left-to-right selection: at the leftmost position where a run
/// of period `p < n` covers more than `2n` full periods, take the run
/// reaching furthest right (whole periods only), then skip at least `n + 1`
/// letters before looking for the next one.
pub fn essential_fragments(w: &Word, n: usize) -> CoreResult<EssentialFragments> {
    if n < 2 {
        return Err(invalid(alloc::format!("essential fragments need n >= 2, got {n}")));
    }
    let letters = w.letters();
    let len = letters.len();
    let lcp = LcpTable::new(letters);
    let mut fragments = Vec::new();
    let mut separators = Vec::new();
    let mut cursor = 0;
    let mut i = 0;
    while i < len {
        let mut chosen: Option<(usize, usize)> = None;
        for p in 1..n {
            if i + p > len || !crate::periodicity::is_primitive(&letters[i..i + p]) {
                continue;
            }
            let run = p + lcp.get(i, i + p).min(len - i - p);
            let exponent = run / p;
            if exponent > 2 * n && chosen.is_none_or(|(q, e)| exponent * p > e * q) {
                chosen = Some((p, exponent));
            }
        }
        match chosen {
            Some((p, exponent)) => {
                let f = Fragment { start: i, root: w.slice(i, i + p), exponent };
                separators.push((cursor, i));
                cursor = f.end();
                i = cursor + n + 1;
                fragments.push(f);
            }
            None => i += 1,
        }
    }
    separators.push((cursor, len));
    let out = EssentialFragments { fragments, separators };
    if !out.validate(w, n) {
        return Err(CoreError::InvariantViolation("essential fragment selection failed validation".into()));
    }
    Ok(out)
}

/// One word-cycle per conjugacy class of the fragment roots of length `m`,
/// in order of first appearance.
pub fn cycle_representatives(fragments: &EssentialFragments, m: usize) -> Vec<WordCycle> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for f in fragments.fragments.iter().filter(|f| f.root.len() == m) {
        let cycle = WordCycle::new(f.root.clone()).expect("fragment roots are primitive");
        if seen.insert(cycle.canonical().letters().to_vec()) {
            out.push(cycle);
        }
    }
    out
}

/// Evidence that a word is n-divisible because one short period recurs
/// often enough: `occurrences` disjoint factors `x^{n-1} v` with `|v| = |x|`
/// and `v != x`, from which `n` are arranged into decreasing blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodRecurrenceCertificate {
    pub root: Word,
    /// Start of each `x^{n-1} v` factor.
    pub occurrences: Vec<usize>,
    pub witness: NDivisionWitness,
}

/// Disjoint occurrences of `x^{n-1} v` (`|v| = |x|`, `v != x`), each taken
/// at the end of a maximal run of `x`, left to right.
fn recurrences(letters: &[u8], x: &[u8], n: usize) -> Vec<usize> {
    let m = x.len();
    let need = (n - 1) * m;
    let mut out = Vec::new();
    let mut i = 0;
    while i + need + m <= letters.len() {
        if letters[i..i + m] != *x {
            i += 1;
            continue;
        }
        let mut run = 0;
        while i + (run + 1) * m <= letters.len() && letters[i + run * m..i + (run + 1) * m] == *x {
            run += 1;
        }
        let v_start = i + run * m;
        if run >= n - 1 && v_start + m <= letters.len() {
            let start = v_start - need;
            out.push(start);
            i = v_start + m;
        } else {
            i = v_start.max(i + 1);
        }
    }
    out
}

/// If some rotation `x` of a fragment root shorter than `n` recurs as
/// `x^{n-1} v` at least `2n - 1` times, build the resulting n-division.
pub fn period_recurrence_certificate(w: &Word, n: usize) -> CoreResult<Option<PeriodRecurrenceCertificate>> {
    let fragments = essential_fragments(w, n)?;
    let letters = w.letters();
    let mut tried: Vec<Vec<u8>> = Vec::new();
    for f in &fragments.fragments {
        let cycle = WordCycle::new(f.root.clone())?;
        for x in cycle.shifts() {
            let x = x.letters();
            if tried.iter().any(|t| t == x) {
                continue;
            }
            tried.push(x.to_vec());
            let occ = recurrences(letters, x, n);
            if occ.len() < 2 * n - 1 {
                continue;
            }
            let m = x.len();
            let v_of = |start: usize| &letters[start + (n - 1) * m..start + n * m];
            let greater: Vec<usize> = occ.iter().copied().filter(|&s| v_of(s) > x).collect();
            let smaller: Vec<usize> = occ.iter().copied().filter(|&s| v_of(s) < x).collect();
            // Block j keeps the last (j + 1) or (n - j) copies of x before v.
            let starts: Vec<usize> = if greater.len() >= n {
                greater[..n].iter().enumerate().map(|(j, &s)| s + (n - 1 - j) * m).collect()
            } else {
                smaller[..n].iter().enumerate().map(|(j, &s)| s + j * m).collect()
            };
            let witness = NDivisionWitness {
                prefix_len: starts[0],
                cut_points: starts[1..].to_vec(),
                word_len: letters.len(),
            };
            if !witness.validate(w) || is_n_divisible(w, n)?.is_none() {
                return Err(CoreError::InvariantViolation(alloc::format!(
                    "period recurrence blocks for {} do not divide the word",
                    Word::from_parts(w.alphabet(), x.to_vec())
                )));
            }
            return Ok(Some(PeriodRecurrenceCertificate {
                root: Word::from_parts(w.alphabet(), x.to_vec()),
                occurrences: occ,
                witness,
            }));
        }
    }
    Ok(None)
}

/// Whether `b` is a rotation of `a`.
pub fn cyclically_equivalent(a: &[u8], b: &[u8]) -> bool {
    a.len() == b.len()
        && (0..a.len().max(1)).any(|r| {
            let rotated = a[r..].iter().chain(&a[..r]);
            rotated.eq(b.iter())
        })
}

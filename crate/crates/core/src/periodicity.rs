//! Powers `u^t`, primitive roots, word-cycles and factor counting.
//!
//! Throughout, the exponent of a power is its repetition count: `abab`
//! is the power `(ab)^2`.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::error::{invalid, CoreError, CoreResult};
use crate::word::Word;

/// An occurrence of `root^exponent` at `start`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerOccurrence {
    pub start: usize,
    pub root: Word,
    pub exponent: usize,
}

impl PowerOccurrence {
    pub fn span(&self) -> usize {
        self.root.len() * self.exponent
    }

    /// Checks the occurrence against `w`.
    pub fn is_valid_in(&self, w: &Word) -> bool {
        let end = self.start + self.span();
        !self.root.is_empty()
            && end <= w.len()
            && w.letters()[self.start..end]
                .chunks(self.root.len())
                .all(|chunk| chunk == self.root.letters())
    }
}

/// Leftmost, then shortest-root, occurrence of a `d`-th power in `w`, as
/// `(start, root_len)`.
pub(crate) fn find_power_in(w: &[u8], d: usize) -> Option<(usize, usize)> {
    let n = w.len();
    for start in 0..n {
        let mut r = 1;
        while start + d * r <= n {
            let span = (d - 1) * r;
            if (0..span).all(|i| w[start + i] == w[start + i + r]) {
                return Some((start, r));
            }
            r += 1;
        }
    }
    None
}

pub fn find_power(w: &Word, d: usize) -> CoreResult<Option<PowerOccurrence>> {
    if d < 2 {
        return Err(invalid(alloc::format!("power exponent must be >= 2, got {d}")));
    }
    Ok(find_power_in(w.letters(), d).map(|(start, r)| PowerOccurrence {
        start,
        root: w.slice(start, start + r),
        exponent: d,
    }))
}

/// Length of the shortest period of `w` that divides `|w|`.
pub(crate) fn primitive_period(w: &[u8]) -> usize {
    let n = w.len();
    (1..=n)
        .find(|&p| n.is_multiple_of(p) && (p..n).all(|i| w[i] == w[i - p]))
        .unwrap_or(n)
}

/// Whether `w` cannot be written as `v^k` with `k > 1`.
pub fn is_primitive(w: &[u8]) -> bool {
    !w.is_empty() && primitive_period(w) == w.len()
}

/// `w = root^k` with `k` maximal.
pub fn primitive_root(w: &Word) -> CoreResult<(Word, usize)> {
    if w.is_empty() {
        return Err(invalid("the empty word has no primitive root"));
    }
    let p = primitive_period(w.letters());
    Ok((w.slice(0, p), w.len() / p))
}

/// Number of distinct length-`k` windows of `w`.
pub fn distinct_factors(w: &Word, k: usize) -> CoreResult<usize> {
    if k > w.len() {
        return Err(invalid(alloc::format!("factor length {k} exceeds word length {}", w.len())));
    }
    let set: BTreeSet<&[u8]> = w.letters().windows(k.max(1)).collect();
    Ok(if k == 0 { 1 } else { set.len() })
}

/// Checks the periodicity conclusion for a word of length `k·t` with at
/// most `k` distinct factors of length `k`: such a word contains a `t`-th
/// power. Returns the leftmost-shortest such power, or `None` if the word
/// (impossibly) has none.
///
/// For `t = 1` the whole word is returned as its own first power.
pub fn lemma_2_3_conclusion(w: &Word, k: usize, t: usize) -> CoreResult<Option<PowerOccurrence>> {
    if k == 0 || t == 0 || w.len() != k * t {
        return Err(CoreError::Precondition(alloc::format!(
            "need |w| = k·t with k, t >= 1 (|w| = {}, k = {k}, t = {t})",
            w.len()
        )));
    }
    let distinct = distinct_factors(w, k)?;
    if distinct > k {
        return Err(CoreError::Precondition(alloc::format!(
            "{distinct} distinct factors of length {k}, more than {k}"
        )));
    }
    if t == 1 {
        return Ok(Some(PowerOccurrence { start: 0, root: w.clone(), exponent: 1 }));
    }
    find_power(w, t)
}

/// A non-cyclic word together with all of its cyclic rotations.
///
/// `shifts[i]` starts at letter `i` of `base`, so `shifts[0] == base`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordCycle {
    base: Word,
    shifts: Vec<Word>,
}

impl WordCycle {
    pub fn new(base: Word) -> CoreResult<Self> {
        if !is_primitive(base.letters()) {
            return Err(invalid(alloc::format!("{base} is empty or a proper power")));
        }
        let m = base.len();
        let letters = base.letters();
        let shifts = (0..m)
            .map(|i| {
                let mut rotated = Vec::with_capacity(m);
                rotated.extend_from_slice(&letters[i..]);
                rotated.extend_from_slice(&letters[..i]);
                Word::from_parts(base.alphabet(), rotated)
            })
            .collect();
        Ok(WordCycle { base, shifts })
    }

    pub fn base(&self) -> &Word {
        &self.base
    }

    pub fn shifts(&self) -> &[Word] {
        &self.shifts
    }

    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    /// The lexicographically least rotation; equal for conjugate words.
    pub fn canonical(&self) -> &Word {
        self.shifts.iter().min_by(|a, b| a.letters().cmp(b.letters())).expect("non-empty cycle")
    }

    pub fn contains_rotation(&self, w: &[u8]) -> bool {
        self.shifts.iter().any(|s| s.letters() == w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Alphabet;

    fn w(s: &str) -> Word {
        Word::parse(s, Alphabet::new(3).unwrap()).unwrap()
    }

    fn brute_force_has_power(w: &[u8], d: usize) -> bool {
        for start in 0..w.len() {
            for end in start + 1..=w.len() {
                let len = end - start;
                if len % d != 0 {
                    continue;
                }
                let r = len / d;
                let root = &w[start..start + r];
                if w[start..end].chunks(r).all(|c| c == root) {
                    return true;
                }
            }
        }
        false
    }

    #[test]
    fn find_power_examples() {
        let p = find_power(&w("abab"), 2).unwrap().unwrap();
        assert_eq!((p.start, p.root.clone(), p.exponent), (0, w("ab"), 2));
        assert!(find_power(&w("abc"), 2).unwrap().is_none());
        assert!(find_power(&w("aabaabaa"), 3).unwrap().is_none());
        assert!(find_power(&w("abc"), 1).is_err());
    }

    #[test]
    fn find_power_tie_break() {
        // Squares "bb" at 1 and "abab" at 0: leftmost start wins.
        let p = find_power(&w("ababb"), 2).unwrap().unwrap();
        assert_eq!((p.start, p.root.len()), (0, 2));
        // At start 0 both "aa" and "aaaa" qualify; shortest root wins.
        let p = find_power(&w("aaaa"), 2).unwrap().unwrap();
        assert_eq!((p.start, p.root.len()), (0, 1));
    }

    #[test]
    fn find_power_matches_brute_force_exhaustively() {
        for len in 0..=10usize {
            for code in 0..2usize.pow(len as u32) {
                let letters: Vec<u8> = (0..len).map(|i| ((code >> i) & 1) as u8 + 1).collect();
                for d in 2..=4 {
                    assert_eq!(find_power_in(&letters, d).is_some(), brute_force_has_power(&letters, d));
                }
            }
        }
    }

    #[test]
    fn primitive_root_examples() {
        assert_eq!(primitive_root(&w("ababab")).unwrap(), (w("ab"), 3));
        assert_eq!(primitive_root(&w("abc")).unwrap(), (w("abc"), 1));
        assert_eq!(primitive_root(&w("aaaa")).unwrap(), (w("a"), 4));
        assert!(primitive_root(&w("")).is_err());
    }

    #[test]
    fn distinct_factor_examples() {
        assert_eq!(distinct_factors(&w("aaaa"), 2).unwrap(), 1);
        assert_eq!(distinct_factors(&w("abab"), 2).unwrap(), 2);
        let abcd = Word::parse("abcd", Alphabet::new(4).unwrap()).unwrap();
        assert_eq!(distinct_factors(&abcd, 2).unwrap(), 3);
        assert!(distinct_factors(&w("ab"), 3).is_err());
    }

    #[test]
    fn power_conclusion_examples() {
        let p = lemma_2_3_conclusion(&w("ababab"), 2, 3).unwrap().unwrap();
        assert_eq!(p.root, w("ab"));
        let p = lemma_2_3_conclusion(&w("aaa"), 1, 3).unwrap().unwrap();
        assert_eq!(p.root, w("a"));
        assert!(matches!(lemma_2_3_conclusion(&w("abc"), 1, 3), Err(CoreError::Precondition(_))));
        assert!(matches!(lemma_2_3_conclusion(&w("abca"), 3, 1), Err(CoreError::Precondition(_))));
    }

    #[test]
    fn whole_word_periodicity_is_not_implied() {
        // Two distinct 2-factors in a word of length 4, yet "aaab" != (aa)^2.
        // The word does contain the square "aa".
        let v = w("aaab");
        assert_eq!(distinct_factors(&v, 2).unwrap(), 2);
        assert_ne!(v, w("aa").pow(2));
        let p = lemma_2_3_conclusion(&v, 2, 2).unwrap().unwrap();
        assert_eq!((p.start, p.root.clone()), (0, w("a")));
    }

    #[test]
    fn word_cycle_rotations() {
        let c = WordCycle::new(w("abc")).unwrap();
        let shifts: Vec<_> = c.shifts().iter().map(|s| s.to_text()).collect();
        assert_eq!(shifts, ["abc", "bca", "cab"]);
        assert_eq!(c.canonical(), &w("abc"));
        assert!(WordCycle::new(w("abab")).is_err());
        assert_eq!(WordCycle::new(w("ba")).unwrap().canonical(), WordCycle::new(w("ab")).unwrap().canonical());
    }
}

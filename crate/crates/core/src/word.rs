//! Alphabets, words, the lexicographic order with prefix-incomparability,
//! tails and k-tails.
//!
//! Letters are ranks `1..=l`. Two words are comparable unless one is a
//! proper prefix of the other; comparable words are ordered by their first
//! differing letter.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{invalid, CoreError, CoreResult};

/// An ordered alphabet `a_1 < a_2 < ... < a_l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Alphabet(u8);

impl Alphabet {
    pub fn new(size: usize) -> CoreResult<Self> {
        match u8::try_from(size) {
            Ok(s) if s >= 1 => Ok(Alphabet(s)),
            _ => Err(invalid(alloc::format!("alphabet size must be in 1..=255, got {size}"))),
        }
    }

    pub fn size(self) -> usize {
        self.0 as usize
    }

    /// Whether the textual form uses `a..z` rather than dotted ranks.
    pub fn is_lettered(self) -> bool {
        self.0 <= 26
    }

    pub fn contains(self, rank: u8) -> bool {
        rank >= 1 && rank <= self.0
    }
}

/// Outcome of comparing two words.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LexOutcome {
    Equal,
    Less,
    Greater,
    /// One word is a proper prefix of the other.
    IncomparablePrefix,
}

impl LexOutcome {
    pub fn is_comparable(self) -> bool {
        !matches!(self, LexOutcome::IncomparablePrefix)
    }
}

/// A finite word over an explicit alphabet.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    alphabet: Alphabet,
    letters: Vec<u8>,
}

impl Word {
    pub fn new(alphabet: Alphabet, letters: Vec<u8>) -> CoreResult<Self> {
        if let Some(pos) = letters.iter().position(|&r| !alphabet.contains(r)) {
            return Err(invalid(alloc::format!(
                "letter rank {} at position {pos} outside alphabet of size {}",
                letters[pos],
                alphabet.size()
            )));
        }
        Ok(Word { alphabet, letters })
    }

    pub fn empty(alphabet: Alphabet) -> Self {
        Word { alphabet, letters: Vec::new() }
    }

    /// Parses `abc` (alphabets up to 26 letters) or `1.2.3` (any alphabet).
    ///
    /// Dotted input is accepted for small alphabets as well.
    pub fn parse(text: &str, alphabet: Alphabet) -> CoreResult<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Word::empty(alphabet));
        }
        let letters = if alphabet.is_lettered() && !text.contains('.') && !text.bytes().all(|b| b.is_ascii_digit()) {
            text.chars()
                .map(|c| {
                    if c.is_ascii_lowercase() {
                        Ok(c as u8 - b'a' + 1)
                    } else {
                        Err(invalid(alloc::format!("unexpected character {c:?} in word")))
                    }
                })
                .collect::<CoreResult<Vec<u8>>>()?
        } else {
            text.split('.')
                .map(|part| {
                    part.parse::<u8>()
                        .map_err(|_| invalid(alloc::format!("bad letter rank {part:?}")))
                })
                .collect::<CoreResult<Vec<u8>>>()?
        };
        Word::new(alphabet, letters)
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<u8> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Copies a window of this word into a new word over the same alphabet.
    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word { alphabet: self.alphabet, letters: self.letters[start..end].to_vec() }
    }

    /// `self` repeated `times` times.
    pub fn pow(&self, times: usize) -> Word {
        Word { alphabet: self.alphabet, letters: self.letters.repeat(times) }
    }

    pub fn concat(&self, other: &Word) -> CoreResult<Word> {
        same_alphabet(self, other)?;
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Word { alphabet: self.alphabet, letters })
    }

    pub(crate) fn from_parts(alphabet: Alphabet, letters: Vec<u8>) -> Word {
        debug_assert!(letters.iter().all(|&r| alphabet.contains(r)));
        Word { alphabet, letters }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.letters.len());
        if self.alphabet.is_lettered() {
            out.extend(self.letters.iter().map(|&r| (b'a' + r - 1) as char));
        } else {
            for (i, r) in self.letters.iter().enumerate() {
                if i > 0 {
                    out.push('.');
                }
                out.push_str(&alloc::format!("{r}"));
            }
        }
        out
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn same_alphabet(u: &Word, v: &Word) -> CoreResult<()> {
    if u.alphabet != v.alphabet {
        return Err(invalid(alloc::format!(
            "words over different alphabets ({} vs {})",
            u.alphabet.size(),
            v.alphabet.size()
        )));
    }
    Ok(())
}

/// Compares raw letter sequences.
pub fn compare_letters(u: &[u8], v: &[u8]) -> LexOutcome {
    for (a, b) in u.iter().zip(v) {
        match a.cmp(b) {
            Ordering::Less => return LexOutcome::Less,
            Ordering::Greater => return LexOutcome::Greater,
            Ordering::Equal => {}
        }
    }
    if u.len() == v.len() {
        LexOutcome::Equal
    } else {
        LexOutcome::IncomparablePrefix
    }
}

pub fn compare(u: &Word, v: &Word) -> CoreResult<LexOutcome> {
    same_alphabet(u, v)?;
    Ok(compare_letters(&u.letters, &v.letters))
}

/// The `k` letters of `w` starting at `start`.
pub fn k_tail(w: &Word, start: usize, k: usize) -> CoreResult<Word> {
    if start.checked_add(k).is_none_or(|end| end > w.len()) {
        return Err(CoreError::OutOfRange { start, len: k, word_len: w.len() });
    }
    Ok(w.slice(start, start + k))
}

/// A suffix of `source` starting at `start`, optionally cut to its first
/// `truncation` letters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TailRef<'a> {
    source: &'a Word,
    start: usize,
    truncation: Option<usize>,
}

impl<'a> TailRef<'a> {
    pub fn new(source: &'a Word, start: usize, truncation: Option<usize>) -> CoreResult<Self> {
        if start >= source.len() {
            return Err(CoreError::OutOfRange { start, len: 1, word_len: source.len() });
        }
        if let Some(k) = truncation {
            if start + k > source.len() {
                return Err(CoreError::OutOfRange { start, len: k, word_len: source.len() });
            }
        }
        Ok(TailRef { source, start, truncation })
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn truncation(&self) -> Option<usize> {
        self.truncation
    }

    pub fn source(&self) -> &'a Word {
        self.source
    }

    pub fn letters(&self) -> &'a [u8] {
        let end = self.truncation.map_or(self.source.len(), |k| self.start + k);
        &self.source.letters()[self.start..end]
    }

    /// Value snapshot of the tail.
    pub fn word(&self) -> Word {
        Word::from_parts(self.source.alphabet(), self.letters().to_vec())
    }
}

/// Whether `u` starts strictly left of `v`.
pub fn leftmost_first(u: &TailRef<'_>, v: &TailRef<'_>) -> bool {
    debug_assert!(core::ptr::eq(u.source, v.source) || u.source == v.source);
    u.start < v.start
}

/// The sentinel word that is lexicographically smaller than every word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Theta;

impl Theta {
    pub fn compare(&self, _w: &Word) -> Ordering {
        Ordering::Less
    }
}

/// An entry of a selector tuple: the sentinel or an actual (truncated) tail.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SelectorEntry {
    Theta,
    Tail(Vec<u8>),
}

impl SelectorEntry {
    pub fn is_theta(&self) -> bool {
        matches!(self, SelectorEntry::Theta)
    }
}

impl PartialOrd for SelectorEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SelectorEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (SelectorEntry::Theta, SelectorEntry::Theta) => Ordering::Equal,
            (SelectorEntry::Theta, _) => Ordering::Less,
            (_, SelectorEntry::Theta) => Ordering::Greater,
            (SelectorEntry::Tail(a), SelectorEntry::Tail(b)) => a.cmp(b),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn w(s: &str) -> Word {
        Word::parse(s, Alphabet::new(26).unwrap()).unwrap()
    }

    #[test]
    fn compare_examples() {
        assert_eq!(compare(&w("ab"), &w("ac")).unwrap(), LexOutcome::Less);
        assert_eq!(compare(&w("a"), &w("ab")).unwrap(), LexOutcome::IncomparablePrefix);
        assert_eq!(compare(&w("ab"), &w("a")).unwrap(), LexOutcome::IncomparablePrefix);
        assert_eq!(compare(&w("ba"), &w("ba")).unwrap(), LexOutcome::Equal);
        assert_eq!(compare(&w("c"), &w("abc")).unwrap(), LexOutcome::Greater);
    }

    #[test]
    fn compare_rejects_mixed_alphabets() {
        let u = Word::parse("ab", Alphabet::new(2).unwrap()).unwrap();
        let v = Word::parse("ab", Alphabet::new(3).unwrap()).unwrap();
        assert!(matches!(compare(&u, &v), Err(CoreError::InvalidInput(_))));
    }

    #[test]
    fn k_tail_examples() {
        assert_eq!(k_tail(&w("abcde"), 1, 3).unwrap(), w("bcd"));
        assert_eq!(k_tail(&w("abc"), 0, 3).unwrap(), w("abc"));
        assert!(matches!(k_tail(&w("abc"), 2, 2), Err(CoreError::OutOfRange { .. })));
    }

    #[test]
    fn leftmost_examples() {
        let src = w("abcdefg");
        let t = |s| TailRef::new(&src, s, None).unwrap();
        assert!(leftmost_first(&t(2), &t(5)));
        assert!(!leftmost_first(&t(5), &t(2)));
        assert!(!leftmost_first(&t(3), &t(3)));
    }

    #[test]
    fn tail_ref_bounds() {
        let src = w("abc");
        assert!(TailRef::new(&src, 3, None).is_err());
        assert!(TailRef::new(&src, 1, Some(3)).is_err());
        assert_eq!(TailRef::new(&src, 1, Some(2)).unwrap().word(), w("bc"));
    }

    #[test]
    fn theta_below_everything() {
        assert_eq!(Theta.compare(&w("a")), Ordering::Less);
        assert!(SelectorEntry::Theta < SelectorEntry::Tail(vec![1]));
        assert!(SelectorEntry::Theta < SelectorEntry::Tail(vec![]));
        assert_eq!(SelectorEntry::Theta, SelectorEntry::Theta);
    }

    #[test]
    fn text_round_trip() {
        let big = Alphabet::new(30).unwrap();
        let word = Word::parse("1.30.2", big).unwrap();
        assert_eq!(word.letters(), &[1, 30, 2]);
        assert_eq!(word.to_text(), "1.30.2");
        assert!(Word::parse("1.31", big).is_err());
        let small = Alphabet::new(3).unwrap();
        assert_eq!(Word::parse("cab", small).unwrap().letters(), &[3, 1, 2]);
        assert!(Word::parse("abd", small).is_err());
        assert!(Word::parse("", small).unwrap().is_empty());
        assert!(Alphabet::new(0).is_err());
    }
}

//! Std companion to `shirshov-core`: JSON and CSV encodings, the
//! multi-threaded avoider search, the randomized audit harness and
//! golden-fixture handling used by the `shirshov` binary.

pub mod error;
pub mod formats;
pub mod golden;
pub mod harness;
pub mod parallel;

pub use error::{Error, Result};

use shirshov_core::{Alphabet, Word};

/// Parses a word; without an explicit alphabet size the largest letter
/// used fixes it.
pub fn parse_word(text: &str, alphabet: Option<usize>) -> Result<Word> {
    let text = text.trim();
    let size = match alphabet {
        Some(l) => l,
        None if text.bytes().all(|b| b.is_ascii_lowercase()) => {
            text.bytes().map(|b| (b - b'a' + 1) as usize).max().unwrap_or(1)
        }
        None => Word::parse(text, Alphabet::new(255)?)?.letters().iter().copied().max().unwrap_or(1) as usize,
    };
    Ok(Word::parse(text, Alphabet::new(size)?)?)
}

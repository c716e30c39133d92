#![allow(dead_code)]

use proptest::prelude::*;
use shirshov_core::divisibility::is_n_divisible;
use shirshov_core::periodicity::find_power;
use shirshov_core::{Alphabet, Word};

pub fn word(letters: &[u8], l: usize) -> Word {
    Word::new(Alphabet::new(l).unwrap(), letters.to_vec()).unwrap()
}

pub fn avoids(letters: &[u8], n: usize, d: usize, l: usize) -> bool {
    let w = word(letters, l);
    find_power(&w, d).unwrap().is_none() && is_n_divisible(&w, n).unwrap().is_none()
}

/// Extends letter by letter, trying `choice, choice + 1, ...` (cyclically)
/// at each step and keeping the first letter that still avoids; stops
/// when every letter fails.
pub fn avoider_walk(choices: &[u8], n: usize, d: usize, l: usize) -> Word {
    let mut letters: Vec<u8> = Vec::new();
    'outer: for &choice in choices {
        for off in 0..l {
            let c = ((choice as usize + off) % l) as u8 + 1;
            letters.push(c);
            if avoids(&letters, n, d, l) {
                continue 'outer;
            }
            letters.pop();
        }
        break;
    }
    word(&letters, l)
}

/// `(n, d, l, word)` with the word avoiding n-divisibility and `d`-th powers.
pub fn avoider() -> impl Strategy<Value = (usize, usize, usize, Word)> {
    (2usize..=4, 2usize..=4, 2usize..=4)
        .prop_flat_map(|(n, d, l)| {
            let d = d.max(n);
            (Just(n), Just(d), Just(l), prop::collection::vec(any::<u8>(), 1..48))
        })
        .prop_map(|(n, d, l, choices)| {
            let w = avoider_walk(&choices, n, d, l);
            (n, d, l, w)
        })
}

/// Concatenation of random short roots raised to random exponents.
pub fn power_rich(n: usize) -> impl Strategy<Value = Word> {
    let block = (prop::collection::vec(1u8..=3, 1..=3), 0usize..(6 * n), prop::collection::vec(1u8..=3, 0..=3));
    prop::collection::vec(block, 1..20).prop_map(|blocks| {
        let mut letters = Vec::new();
        for (root, exp, sep) in blocks {
            for _ in 0..exp {
                letters.extend_from_slice(&root);
            }
            letters.extend_from_slice(&sep);
        }
        word(&letters, 3)
    })
}

/// All words of length `len` over `1..=l`.
pub fn all_words(len: usize, l: usize) -> impl Iterator<Item = Vec<u8>> {
    (0..l.pow(len as u32)).map(move |code| (0..len).map(|i| (code / l.pow(i as u32) % l) as u8 + 1).collect())
}

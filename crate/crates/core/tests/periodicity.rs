mod common;

use common::{all_words, word};
use proptest::prelude::*;
use shirshov_core::dilworth::{build_tail_poset, TailPosetBuild};
use shirshov_core::periodicity::{distinct_factors, find_power, is_primitive, lemma_2_3_conclusion, primitive_root};
use shirshov_core::{compare_letters, LexOutcome};

proptest! {
    #[test]
    fn primitive_root_is_idempotent(u in prop::collection::vec(1u8..=2, 1..10), k in 1usize..4) {
        let w = word(&u, 2).pow(k);
        let (root, e) = primitive_root(&w).unwrap();
        prop_assert!(is_primitive(root.letters()));
        prop_assert_eq!(root.pow(e), w);
        prop_assert_eq!(primitive_root(&root).unwrap(), (root.clone(), 1));
        prop_assert!(e >= k);
    }

    #[test]
    fn found_powers_are_real(u in prop::collection::vec(1u8..=3, 0..20), d in 2usize..5) {
        let w = word(&u, 3);
        if let Some(p) = find_power(&w, d).unwrap() {
            prop_assert!(p.is_valid_in(&w));
            prop_assert_eq!(p.exponent, d);
        }
    }
}

/// Without a d-th power, the first floor(|w|/d) tails are pairwise
/// comparable; with an incomparable pair the builder hands back a power.
#[test]
fn first_tails_comparable_or_power_exhaustive() {
    for len in 0..=12 {
        for letters in all_words(len, 2) {
            let w = word(&letters, 2);
            for d in 2..=4 {
                let m = len / d;
                let comparable = (0..m).all(|i| {
                    (i + 1..m).all(|j| compare_letters(&letters[i..], &letters[j..]) != LexOutcome::IncomparablePrefix)
                });
                match build_tail_poset(&w, d).unwrap() {
                    TailPosetBuild::Poset(_) => assert!(comparable, "{w} d={d}"),
                    TailPosetBuild::Power(p) => {
                        assert!(p.is_valid_in(&w), "{w} d={d}");
                        assert!(!comparable);
                    }
                }
                if find_power(&w, d).unwrap().is_none() {
                    assert!(comparable, "{w} d={d}");
                }
            }
        }
    }
}

/// A word of length k·t with at most k distinct factors of length k
/// contains a t-th power.
#[test]
fn few_factors_force_a_power_exhaustive() {
    for len in 1..=12 {
        for letters in all_words(len, 2) {
            let w = word(&letters, 2);
            for k in 1..=len {
                if len % k != 0 || distinct_factors(&w, k).unwrap() > k {
                    continue;
                }
                let t = len / k;
                let p = lemma_2_3_conclusion(&w, k, t).unwrap();
                let p = p.unwrap_or_else(|| panic!("{w} k={k} t={t}: no power"));
                assert_eq!(p.exponent, t);
                assert!(p.is_valid_in(&w));
            }
        }
    }
}

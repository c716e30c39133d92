mod common;

use common::{avoider, word};
use proptest::prelude::*;
use shirshov_core::dilworth::*;
use shirshov_core::height::{cycle_representatives, essential_fragments};
use shirshov_core::periodicity::WordCycle;
use shirshov_core::{Alphabet, SelectorEntry, Word};

fn width_brute<P: PlanarPoset>(p: &P) -> usize {
    let n = p.len();
    (0u32..1 << n)
        .filter(|mask| {
            let items: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            items.iter().all(|&a| items.iter().all(|&b| !p.less(a, b)))
        })
        .map(|mask| mask.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

fn decomposed(d: usize, w: &Word) -> (TailPoset, ChainDecomposition) {
    let poset = build_tail_poset(w, d).unwrap().poset().expect("avoiders have no d-th power");
    let dec = chain_decompose(&poset).unwrap();
    (poset, dec)
}

proptest! {
    #[test]
    fn chains_are_optimal_on_tail_posets((_n, d, _l, w) in avoider()) {
        let (poset, dec) = decomposed(d, &w);
        prop_assert_eq!(dec.antichain.len(), dec.chain_count);
        for chain in &dec.chains {
            for pair in chain.windows(2) {
                prop_assert!(poset.less(pair[0], pair[1]));
            }
        }
        if poset.len() <= 12 {
            prop_assert_eq!(dec.chain_count, width_brute(&poset));
        }
    }

    #[test]
    fn latest_positions_only_move_right((_n, d, _l, w) in avoider(), p in 1usize..4) {
        let (poset, dec) = decomposed(d, &w);
        let trace = selector_trace(&poset, &dec, p, None).unwrap();
        for pair in trace.windows(2) {
            for (a, b) in pair[0].1.entries.iter().zip(&pair[1].1.entries) {
                // Once set, an entry is never reset to θ.
                prop_assert!(!(matches!(a, SelectorEntry::Tail(_)) && b.is_theta()));
            }
        }
    }

    #[test]
    fn psi_never_grows_with_tail_length((_n, d, _l, w) in avoider(), a in 1usize..5, extra in 1usize..5) {
        let (poset, dec) = decomposed(d, &w);
        let b = a + extra;
        prop_assert!(psi(&poset, &dec, a, None).unwrap() >= psi(&poset, &dec, b, None).unwrap());
    }

    #[test]
    fn main_lemma_on_avoiders((n, d, _l, w) in avoider(), a in 1usize..4, k in 1usize..4) {
        let audit = main_lemma_audit(&w, n, d, a, k, None).unwrap();
        prop_assert!(!audit.skipped);
        prop_assert!(audit.holds, "{:?}", audit);
    }

    #[test]
    fn main_lemma_with_masks((n, d, _l, w) in avoider(), bits in prop::collection::vec(any::<bool>(), 64)) {
        let m = w.len() / d;
        let mask = &bits[..m];
        let audit = main_lemma_audit(&w, n, d, 1, 2, Some(mask)).unwrap();
        prop_assert!(audit.holds);
    }

    #[test]
    fn process_bound_on_random_sequences(k in 2usize..5, p in 2usize..4, seq in prop::collection::vec(1usize..5, 0..40)) {
        let seq: Vec<usize> = seq.into_iter().map(|s| (s - 1) % (k - 1) + 1).collect();
        let check = process_check_positions(&seq, k, p).unwrap();
        if check.hypothesis {
            prop_assert!(check.within_bound);
        }
    }
}

#[test]
fn binary_main_lemma_exhaustive() {
    // n = d = 2 over two letters: every non-reducible word.
    for len in 1..=6 {
        for letters in common::all_words(len, 2) {
            let w = word(&letters, 2);
            let audit = main_lemma_audit(&w, 2, 2, 1, 3, None).unwrap();
            assert!(audit.holds);
        }
    }
}

#[test]
fn psi_can_drop_when_the_tail_grows() {
    // The increasing direction fails: longer tails separate more tuples.
    let w = Word::parse("cbbccbccbc", Alphabet::new(3).unwrap()).unwrap();
    let (poset, dec) = decomposed(3, &w);
    assert_eq!(psi(&poset, &dec, 1, None).unwrap(), 2);
    assert_eq!(psi(&poset, &dec, 2, None).unwrap(), 1);
}

#[test]
fn process_bound_attained() {
    // k = 3, p = 2: the bound 3 is reached by 2 1 2.
    let check = process_check_positions(&[2, 1, 2], 3, 2).unwrap();
    assert!(check.hypothesis && check.within_bound);
    let check = process_check_positions(&[2, 1, 2, 1], 3, 2).unwrap();
    assert!(!check.hypothesis);
}

proptest! {
    #[test]
    fn cycle_audits_on_fragment_cycles(w in common::power_rich(3)) {
        let n = 3;
        let frags = essential_fragments(&w, n).unwrap();
        for m in 1..n {
            let cycles = cycle_representatives(&frags, m);
            let poset = CyclePoset::new(cycles).unwrap();
            let dec = chain_decompose(&poset).unwrap();
            if poset.len() <= 12 {
                prop_assert_eq!(dec.chain_count, width_brute(&poset));
            }
            if m < n {
                prop_assert!(lemma_4_6_audit(&poset, &dec, n).unwrap().holds);
            }
            for a in 1..=m {
                for k in 1..=m / a {
                    prop_assert!(lemma_4_7_audit(&poset, &dec, n, n, a, k).unwrap().holds);
                }
            }
            for alpha in 1..m {
                if poset.len() > 0 {
                    prop_assert!(phi(&poset, &dec, alpha).unwrap() >= phi(&poset, &dec, alpha + 1).unwrap());
                }
            }
        }
    }
}

#[test]
fn single_cycle_phi() {
    let c = WordCycle::new(Word::parse("ab", Alphabet::new(2).unwrap()).unwrap()).unwrap();
    let poset = CyclePoset::new(vec![c]).unwrap();
    let dec = chain_decompose(&poset).unwrap();
    let audit = lemma_4_6_audit(&poset, &dec, 3).unwrap();
    assert_eq!(audit.lhs, 1);
    assert!(audit.holds);
}

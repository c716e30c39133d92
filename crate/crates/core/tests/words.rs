use proptest::prelude::*;
use shirshov_core::{compare, compare_letters, k_tail, Alphabet, LexOutcome, Word};

fn letters() -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(1u8..=3, 0..12)
}

fn flip(o: LexOutcome) -> LexOutcome {
    match o {
        LexOutcome::Less => LexOutcome::Greater,
        LexOutcome::Greater => LexOutcome::Less,
        other => other,
    }
}

proptest! {
    #[test]
    fn comparison_is_antisymmetric(u in letters(), v in letters()) {
        prop_assert_eq!(compare_letters(&u, &v), flip(compare_letters(&v, &u)));
    }

    #[test]
    fn comparison_is_transitive(u in letters(), v in letters(), w in letters()) {
        if compare_letters(&u, &v) == LexOutcome::Less && compare_letters(&v, &w) == LexOutcome::Less {
            prop_assert_eq!(compare_letters(&u, &w), LexOutcome::Less);
        }
    }

    #[test]
    fn incomparable_means_proper_prefix(u in letters(), v in letters()) {
        let is_prefix = u.len() != v.len() && (u.starts_with(&v) || v.starts_with(&u));
        prop_assert_eq!(compare_letters(&u, &v) == LexOutcome::IncomparablePrefix, is_prefix);
    }

    #[test]
    fn comparable_order_survives_extension(u in letters(), v in letters(), x in letters(), y in letters()) {
        let before = compare_letters(&u, &v);
        if matches!(before, LexOutcome::Less | LexOutcome::Greater) {
            let ux: Vec<u8> = u.iter().chain(&x).copied().collect();
            let vy: Vec<u8> = v.iter().chain(&y).copied().collect();
            prop_assert_eq!(compare_letters(&ux, &vy), before);
        }
    }

    #[test]
    fn text_round_trip(u in letters()) {
        let a = Alphabet::new(3).unwrap();
        let w = Word::new(a, u.clone()).unwrap();
        prop_assert_eq!(Word::parse(&w.to_text(), a).unwrap(), w);
        let big = Alphabet::new(40).unwrap();
        let w = Word::new(big, u).unwrap();
        prop_assert_eq!(Word::parse(&w.to_text(), big).unwrap(), w);
    }

    #[test]
    fn k_tails_are_windows(u in letters(), start in 0usize..12, k in 0usize..12) {
        let w = Word::new(Alphabet::new(3).unwrap(), u.clone()).unwrap();
        match k_tail(&w, start, k) {
            Ok(t) => prop_assert_eq!(t.letters(), &u[start..start + k]),
            Err(_) => prop_assert!(start + k > u.len()),
        }
    }
}

#[test]
fn mixed_alphabets_are_rejected() {
    let a = Word::parse("ab", Alphabet::new(2).unwrap()).unwrap();
    let b = Word::parse("ab", Alphabet::new(3).unwrap()).unwrap();
    assert!(compare(&a, &b).is_err());
}

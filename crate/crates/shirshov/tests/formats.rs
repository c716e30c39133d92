use proptest::prelude::*;
use shirshov::formats::{excision_jsonl, parse_excision_jsonl, replay_excision, WitnessJson};
use shirshov_core::divisibility::is_n_divisible;
use shirshov_core::height::excise;
use shirshov_core::{Alphabet, Word};

fn word_strategy(l: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(1..=l as u8, 0..max_len).prop_map(move |v| Word::new(Alphabet::new(l).unwrap(), v).unwrap())
}

fn power_rich() -> impl Strategy<Value = Word> {
    let block = (prop::collection::vec(1u8..=3, 1..=3), 0usize..14, prop::collection::vec(1u8..=3, 0..=2));
    prop::collection::vec(block, 1..8).prop_map(|blocks| {
        let mut letters = Vec::new();
        for (root, e, sep) in blocks {
            letters.extend(root.repeat(e));
            letters.extend(sep);
        }
        Word::new(Alphabet::new(3).unwrap(), letters).unwrap()
    })
}

proptest! {
    #[test]
    fn witness_json_round_trip(w in word_strategy(3, 14), n in 1usize..5) {
        if let Some(wit) = is_n_divisible(&w, n).unwrap() {
            let text = serde_json::to_string(&WitnessJson::from(&wit)).unwrap();
            let back: WitnessJson = serde_json::from_str(&text).unwrap();
            prop_assert_eq!(back.into_witness(w.len()), wit);
        }
    }

    #[test]
    fn excision_lines_round_trip(w in power_rich()) {
        let trace = excise(&w, 2, 64).unwrap();
        let text = excision_jsonl(&trace).unwrap();
        let steps = parse_excision_jsonl(&text).unwrap();
        let last = replay_excision(&w, &steps).unwrap();
        let (expected, _) = trace.word_after(trace.steps.len()).unwrap();
        prop_assert_eq!(last.letters(), expected.as_slice());
    }
}

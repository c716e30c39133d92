mod common;

use std::collections::HashMap;

use common::{all_words, avoids};
use num_bigint::BigUint;
use shirshov_core::bounds::{psi_exact, LadderBase};
use shirshov_core::search::*;

const GRID: [(usize, usize, usize); 14] = [
    (2, 2, 1), (2, 2, 2), (2, 3, 2), (2, 4, 2), (3, 3, 2), (3, 4, 2), (2, 2, 3), (2, 3, 3), (3, 3, 3),
    (2, 2, 4), (3, 3, 1), (4, 4, 1), (4, 4, 2), (2, 4, 3),
];

fn extremal_grid() -> HashMap<(usize, usize, usize), SearchReport> {
    GRID.iter()
        .map(|&(n, d, l)| ((n, d, l), extremal_length(&AvoiderQuery::new(n, d, l, 200).unwrap()).unwrap()))
        .collect()
}

#[test]
fn witnesses_are_maximal_avoiders() {
    for ((n, d, l), r) in extremal_grid() {
        assert!(!r.ceiling_hit);
        assert_eq!(r.witness.len(), r.extremal_length);
        assert!(avoids(&r.witness, n, d, l));
        for c in 1..=l as u8 {
            let mut ext = r.witness.clone();
            ext.push(c);
            assert!(!avoids(&ext, n, d, l));
            ext.pop();
            ext.insert(0, c);
            assert!(!avoids(&ext, n, d, l));
        }
        let last = r.counts[r.extremal_length - 1];
        assert!(last > 0);
        assert!(r.counts[r.extremal_length..].iter().all(|&c| c == 0));
    }
}

#[test]
fn extremal_length_grows_with_each_parameter() {
    let grid = extremal_grid();
    for (&(n, d, l), r) in &grid {
        for bigger in [(n + 1, d, l), (n, d + 1, l), (n, d, l + 1)] {
            if let Some(s) = grid.get(&bigger) {
                assert!(r.extremal_length <= s.extremal_length, "{:?} vs {bigger:?}", (n, d, l));
            }
        }
    }
}

#[test]
fn extremal_length_stays_below_the_ladder() {
    for ((n, d, l), r) in extremal_grid() {
        for base in [LadderBase::Two, LadderBase::Three] {
            let psi = psi_exact(n as u64, d as u64, l as u64, base);
            assert!(BigUint::from(r.extremal_length + 1) <= psi);
        }
    }
}

#[test]
fn counts_match_enumeration() {
    for (n, d, l, max_len) in [(2, 2, 2, 6), (3, 3, 2, 12), (3, 4, 2, 12), (2, 3, 3, 7), (3, 3, 3, 8)] {
        let counts = count_avoiders(&AvoiderQuery::new(n, d, l, max_len).unwrap()).unwrap();
        for k in 1..=max_len {
            let brute = all_words(k, l).filter(|w| avoids(w, n, d, l)).count() as u64;
            assert_eq!(counts[k - 1], brute, "n={n} d={d} l={l} k={k}");
            assert!(brute <= (l as u64).pow(k as u32));
        }
    }
}

#[test]
fn worker_split_depth_does_not_matter() {
    let q = AvoiderQuery::new(3, 3, 3, 40).unwrap();
    let whole = extremal_length(&q).unwrap();
    for depth in [1, 3, 6] {
        let (mut report, frontier) = split_frontier(&q, depth).unwrap();
        for prefix in frontier.iter().rev() {
            report = report.merge(&explore_subtree(&q, prefix).unwrap());
        }
        assert_eq!(report, whole);
    }
}

fn catalan(k: u128) -> u128 {
    (0..k).fold(1, |c, i| c * 2 * (2 * i + 1) / (i + 2))
}

#[test]
fn catalan_and_latyshev() {
    for k in 1..=16 {
        assert_eq!(multilinear_count(3, k).unwrap(), catalan(k as u128), "k={k}");
    }
    for m in 1..=5usize {
        for k in 1..=8usize {
            let c = multilinear_count(m, k).unwrap();
            assert!(c <= ((m as u128).saturating_sub(1)).pow(2 * k as u32), "m={m} k={k}");
            assert_eq!(c, multilinear_count_brute(m, k).unwrap());
        }
    }
}

//! Slow, obviously-correct reference implementations. Nothing here calls
//! into the deciders it is used to check; only the word type and letter
//! comparison are shared.

use shirshov_core::{compare_letters, LexOutcome};

/// Longest chain of contiguous blocks `u_1 u_2 ... u_k` inside `w` with
/// every block strictly greater than the next, trying every cut.
pub fn longest_block_chain(w: &[u8]) -> usize {
    fn from(w: &[u8], s: usize, e: usize, memo: &mut Vec<Vec<usize>>) -> usize {
        if memo[s][e] != 0 {
            return memo[s][e];
        }
        let mut best = 1;
        for e2 in e + 1..=w.len() {
            if compare_letters(&w[s..e], &w[e..e2]) == LexOutcome::Greater {
                best = best.max(1 + from(w, e, e2, memo));
            }
        }
        memo[s][e] = best;
        best
    }
    let len = w.len();
    let mut memo = vec![vec![0; len + 1]; len + 1];
    let mut best = 0;
    for s in 0..len {
        for e in s + 1..=len {
            best = best.max(from(w, s, e, &mut memo));
        }
    }
    best
}

pub fn divisible_naive(w: &[u8], n: usize) -> bool {
    longest_block_chain(w) >= n
}

/// Some factor `x^d` with `x` nonempty.
pub fn has_power_naive(w: &[u8], d: usize) -> bool {
    let len = w.len();
    (1..=len / d.max(1)).any(|r| (0..=len - d * r).any(|s| (s + r..s + d * r).all(|i| w[i] == w[i - r])))
}

/// Largest set of pairwise incomparable elements among `0..n`.
pub fn brute_width(n: usize, less: impl Fn(usize, usize) -> bool) -> usize {
    assert!(n <= 20);
    (0u32..1 << n)
        .filter(|mask| {
            let items: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            items.iter().all(|&a| items.iter().all(|&b| !less(a, b)))
        })
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

pub fn catalan(k: u128) -> u128 {
    (0..k).fold(1, |c, i| c * 2 * (2 * i + 1) / (i + 2))
}

/// Permutations of `1..=k` without a decreasing subsequence of length `n`,
/// by listing all of them.
pub fn permutations_avoiding_descent(n: usize, k: usize) -> u128 {
    fn longest_decreasing(p: &[usize]) -> usize {
        let mut best = vec![1; p.len()];
        for i in 0..p.len() {
            for j in 0..i {
                if p[j] > p[i] {
                    best[i] = best[i].max(best[j] + 1);
                }
            }
        }
        best.into_iter().max().unwrap_or(0)
    }
    fn walk(prefix: &mut Vec<usize>, used: &mut [bool], n: usize, count: &mut u128) {
        if longest_decreasing(prefix) >= n {
            return;
        }
        if prefix.len() == used.len() {
            *count += 1;
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                walk(prefix, used, n, count);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut count = 0;
    walk(&mut Vec::new(), &mut vec![false; k], n, &mut count);
    count
}

/// All words of length `len` over `1..=l`, in counting order.
pub fn all_words(len: usize, l: usize) -> impl Iterator<Item = Vec<u8>> {
    (0..l.pow(len as u32)).map(move |code| (0..len).map(|i| (code / l.pow(i as u32) % l) as u8 + 1).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert_eq!(longest_block_chain(&[3, 2, 1]), 3);
        assert_eq!(longest_block_chain(&[1, 2, 3]), 1);
        assert_eq!(longest_block_chain(&[]), 0);
        assert!(has_power_naive(&[1, 2, 1, 2], 2));
        assert!(!has_power_naive(&[1, 2, 1], 2));
        assert_eq!(catalan(5), 42);
        assert_eq!(permutations_avoiding_descent(3, 5), 42);
        assert_eq!(permutations_avoiding_descent(2, 6), 1);
        assert_eq!(brute_width(3, |a, b| a < b), 1);
        assert_eq!(brute_width(3, |_, _| false), 3);
    }
}

//! Permutations of `1..=k` with no decreasing subsequence of length `n`.
//!
//! Two independent counts: direct enumeration, and the sum of squared
//! standard-tableau counts over shapes with fewer than `n` rows (longest
//! decreasing subsequence equals the number of rows under the
//! Robinson-Schensted correspondence).

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{invalid, CoreError, CoreResult};

/// Largest `k` enumerated permutation by permutation.
pub const BRUTE_FORCE_MAX_K: usize = 9;
/// Largest `k` for which `k!` fits the shape-sum arithmetic.
pub const SHAPES_MAX_K: usize = 30;

fn longest_decreasing(perm: &[usize]) -> usize {
    // Patience piles over the reversed order.
    let mut piles: Vec<usize> = Vec::new();
    for &x in perm {
        let pos = piles.partition_point(|&top| top > x);
        if pos == piles.len() {
            piles.push(x);
        } else {
            piles[pos] = x;
        }
    }
    piles.len()
}

pub fn multilinear_count_brute(n: usize, k: usize) -> CoreResult<u128> {
    if k > BRUTE_FORCE_MAX_K {
        return Err(invalid(alloc::format!("enumeration is limited to k <= {BRUTE_FORCE_MAX_K}, got {k}")));
    }
    let mut perm: Vec<usize> = (1..=k).collect();
    let mut count = u128::from(longest_decreasing(&perm) < n);
    // Heap's algorithm.
    let mut c = vec![0usize; k];
    let mut i = 0;
    while i < k {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            count += u128::from(longest_decreasing(&perm) < n);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(count)
}

fn partitions(k: usize, max_part: usize, max_rows: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k == 0 {
        out.push(prefix.clone());
        return;
    }
    if max_rows == 0 {
        return;
    }
    for part in (1..=max_part.min(k)).rev() {
        prefix.push(part);
        partitions(k - part, part, max_rows - 1, prefix, out);
        prefix.pop();
    }
}

/// Standard tableaux of shape `lambda` by the hook length formula.
fn tableaux(lambda: &[usize]) -> u128 {
    let k: usize = lambda.iter().sum();
    let numer: u128 = (1..=k as u128).product();
    let mut hooks: Vec<u128> = Vec::with_capacity(k);
    for (r, &row) in lambda.iter().enumerate() {
        for c in 0..row {
            let below = lambda[r + 1..].iter().filter(|&&len| len > c).count();
            hooks.push((row - c + below) as u128);
        }
    }
    let denom: u128 = hooks.iter().product();
    debug_assert_eq!(numer % denom, 0);
    numer / denom
}

pub fn multilinear_count_shapes(n: usize, k: usize) -> CoreResult<u128> {
    if k > SHAPES_MAX_K {
        return Err(invalid(alloc::format!("shape counting is limited to k <= {SHAPES_MAX_K}, got {k}")));
    }
    if n == 0 {
        return Ok(0);
    }
    let mut shapes = Vec::new();
    partitions(k, k, n - 1, &mut Vec::new(), &mut shapes);
    Ok(shapes.iter().map(|s| tableaux(s).pow(2)).sum())
}

/// Enumeration for `k <= 9` (checked against shape counting), shape
/// counting beyond.
pub fn multilinear_count(n: usize, k: usize) -> CoreResult<u128> {
    let shapes = multilinear_count_shapes(n, k)?;
    if k <= BRUTE_FORCE_MAX_K {
        let brute = multilinear_count_brute(n, k)?;
        if brute != shapes {
            return Err(CoreError::InvariantViolation(alloc::format!(
                "n = {n}, k = {k}: enumeration gives {brute}, shapes give {shapes}"
            )));
        }
    }
    Ok(shapes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalan() {
        let expected = [1u128, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796];
        for (k, &c) in (1..=10).zip(&expected) {
            assert_eq!(multilinear_count(3, k).unwrap(), c);
        }
    }

    #[test]
    fn only_identity_for_n_two() {
        for k in 0..=12 {
            assert_eq!(multilinear_count(2, k).unwrap(), 1);
        }
        assert_eq!(multilinear_count(1, 3).unwrap(), 0);
        assert_eq!(multilinear_count(1, 0).unwrap(), 1);
    }

    #[test]
    fn large_n_counts_everything() {
        assert_eq!(multilinear_count(10, 9).unwrap(), 362_880);
        assert!(multilinear_count_brute(3, 10).is_err());
        assert!(multilinear_count(3, 31).is_err());
    }
}

//! Length bound for sequences of unit vectors under a "smaller marker
//! in between" rule.
//!
//! A sequence of unit vectors of length `k - 1` is described by the
//! positions `1..=k-1` of their single `1`. The rule: whenever `p`
//! vectors have their `1` at the same place `s`, some vector strictly
//! between the first and the last of them has its `1` before `s`.
//! Every sequence obeying the rule has length at most `p^(k-1) - 1`.

use alloc::vec;
use alloc::vec::Vec;

use super::selector::saturating_pow;
use crate::error::{invalid, CoreResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProcessCheck {
    pub hypothesis: bool,
    /// `p^(k-1) - 1`, saturating.
    pub bound: u128,
    /// `|seq| <= bound`; only meaningful when the hypothesis holds.
    pub within_bound: bool,
}

/// Checks a sequence given as unit vectors.
pub fn process_check(seq: &[Vec<u8>], k: usize, p: usize) -> CoreResult<ProcessCheck> {
    let mut positions = Vec::with_capacity(seq.len());
    for (idx, v) in seq.iter().enumerate() {
        if v.len() + 1 != k {
            return Err(invalid(alloc::format!("element {idx} has length {}, expected {}", v.len(), k.saturating_sub(1))));
        }
        let ones: Vec<usize> = v.iter().enumerate().filter(|(_, &b)| b != 0).map(|(i, _)| i).collect();
        if ones.len() != 1 || v[ones[0]] != 1 {
            return Err(invalid(alloc::format!("element {idx} is not a unit vector")));
        }
        positions.push(ones[0] + 1);
    }
    process_check_positions(&positions, k, p)
}

/// Checks a sequence given by the 1-based place of each vector's `1`.
pub fn process_check_positions(positions: &[usize], k: usize, p: usize) -> CoreResult<ProcessCheck> {
    if k < 2 || p == 0 {
        return Err(invalid("need k >= 2 and p >= 1"));
    }
    if let Some(&bad) = positions.iter().find(|&&s| s == 0 || s >= k) {
        return Err(invalid(alloc::format!("position {bad} outside 1..={}", k - 1)));
    }
    let bound = saturating_pow(p as u128, k - 1) - 1;
    let within_bound = positions.len() as u128 <= bound;

    // Any p occurrences of s span p consecutive ones, so checking every
    // window of consecutive occurrences suffices.
    let mut occurrences: Vec<Vec<usize>> = vec![Vec::new(); k];
    for (idx, &s) in positions.iter().enumerate() {
        occurrences[s].push(idx);
    }
    let hypothesis = (1..k).all(|s| {
        occurrences[s].windows(p).all(|win| {
            let (first, last) = (win[0], win[p - 1]);
            positions[first + 1..last].iter().any(|&t| t < s)
        })
    });
    Ok(ProcessCheck { hypothesis, bound, within_bound })
}

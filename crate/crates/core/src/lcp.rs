use alloc::vec;
use alloc::vec::Vec;

use crate::word::LexOutcome;

/// Longest-common-extension table: `get(i, j)` is the length of the longest
/// common prefix of the suffixes starting at `i` and `j`.
///
/// Quadratic in space, which is fine for the word lengths handled here.
#[derive(Debug, Clone)]
pub struct LcpTable {
    n: usize,
    table: Vec<u32>,
}

impl LcpTable {
    pub fn new(w: &[u8]) -> Self {
        let n = w.len();
        let stride = n + 1;
        let mut table = vec![0u32; stride * stride];
        for i in (0..n).rev() {
            for j in (0..n).rev() {
                if w[i] == w[j] {
                    table[i * stride + j] = table[(i + 1) * stride + j + 1] + 1;
                }
            }
        }
        LcpTable { n, table }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> usize {
        self.table[i * (self.n + 1) + j] as usize
    }

    /// Compares the windows `w[a..a+la)` and `w[b..b+lb)` in O(1).
    #[inline]
    pub fn compare_windows(&self, w: &[u8], a: usize, la: usize, b: usize, lb: usize) -> LexOutcome {
        let common = self.get(a, b).min(la).min(lb);
        if common < la && common < lb {
            if w[a + common] > w[b + common] {
                LexOutcome::Greater
            } else {
                LexOutcome::Less
            }
        } else if la == lb {
            LexOutcome::Equal
        } else {
            LexOutcome::IncomparablePrefix
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::compare_letters;

    #[test]
    fn matches_naive_comparison() {
        let w = [1u8, 2, 1, 2, 1, 1, 2, 3, 1, 2];
        let t = LcpTable::new(&w);
        for a in 0..w.len() {
            for b in 0..w.len() {
                for la in 0..=w.len() - a {
                    for lb in 0..=w.len() - b {
                        assert_eq!(
                            t.compare_windows(&w, a, la, b, lb),
                            compare_letters(&w[a..a + la], &w[b..b + lb])
                        );
                    }
                }
            }
        }
    }
}

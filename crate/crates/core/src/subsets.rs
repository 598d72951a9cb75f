//! Fixed-size subsets of `0..n` in increasing mask order.

use crate::digraph::{VertexSet, MAX_VERTICES};

/// All `k`-subsets of `0..n` (Gosper's hack).
pub fn k_subsets(n: usize, k: usize) -> KSubsets {
    assert!(n <= MAX_VERTICES, "subsets of {n} vertices");
    let next = if k > n { None } else { Some((1u128 << k) - 1) };
    KSubsets {
        next,
        limit: 1u128 << n,
    }
}

pub struct KSubsets {
    next: Option<u128>,
    limit: u128,
}

impl Iterator for KSubsets {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        let cur = self.next?;
        self.next = if cur == 0 {
            None
        } else {
            let low = cur & cur.wrapping_neg();
            let ripple = cur + low;
            let ones = ((ripple ^ cur) >> 2) / low;
            Some(ripple | ones).filter(|&m| m < self.limit)
        };
        Some(VertexSet::from_bits(cur as u64))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::binomial;

    #[test]
    fn counts_match_binomials() {
        for n in 0..=10 {
            for k in 0..=n + 1 {
                let subsets: Vec<_> = k_subsets(n, k).collect();
                assert_eq!(subsets.len(), usize::try_from(&binomial(n, k)).unwrap());
                assert!(subsets.iter().all(|s| s.len() == k));
                assert!(subsets.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn top_vertex_of_a_full_mask() {
        assert_eq!(k_subsets(64, 64).count(), 1);
        assert_eq!(k_subsets(64, 1).last().unwrap().bits(), 1 << 63);
    }
}

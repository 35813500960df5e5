//! Permutations of `1..=k` in one-line notation.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let k = images.len();
        let mut seen = vec![false; k];
        for &v in &images {
            if v == 0 || v > k || seen[v - 1] {
                return invalid(format!("{images:?} is not a permutation of 1..={k}"));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation(images))
    }

    pub fn identity(k: usize) -> Self {
        Permutation((1..=k).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// The image of `i` for `i` in `1..=k`.
    pub fn apply(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len(), "composing permutations of different size");
        Permutation(other.0.iter().map(|&i| self.apply(i)).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation(inv)
    }

    /// All permutations of `1..=k` in lexicographic order.
    pub fn all(k: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur = Permutation::identity(k).0;
        loop {
            out.push(Permutation(cur.clone()));
            // next lexicographic permutation
            let Some(i) = (1..k).rev().find(|&i| cur[i - 1] < cur[i]) else {
                break;
            };
            let j = (i..k).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }

    /// Block sum: `self` on `1..=a` followed by `other` shifted by `a`.
    pub fn block_sum(&self, other: &Permutation) -> Permutation {
        let a = self.len();
        let mut v = self.0.clone();
        v.extend(other.0.iter().map(|&x| x + a));
        Permutation(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumerates_in_lex_order() {
        let all = Permutation::all(3);
        let imgs: Vec<_> = all.iter().map(|p| p.images().to_vec()).collect();
        assert_eq!(
            imgs,
            vec![vec![1, 2, 3], vec![1, 3, 2], vec![2, 1, 3], vec![2, 3, 1], vec![3, 1, 2], vec![3, 2, 1]]
        );
        assert_eq!(Permutation::all(0).len(), 1);
        assert_eq!(Permutation::all(5).len(), 120);
    }

    #[test]
    fn compose_and_inverse() {
        for p in Permutation::all(4) {
            assert_eq!(p.compose(&p.inverse()), Permutation::identity(4));
            for q in Permutation::all(4) {
                let pq = p.compose(&q);
                for i in 1..=4 {
                    assert_eq!(pq.apply(i), p.apply(q.apply(i)));
                }
            }
        }
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert!(Permutation::new(vec![2, 3]).is_err());
    }
}

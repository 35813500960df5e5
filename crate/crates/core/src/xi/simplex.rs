use serde::Serialize;

use crate::combinat::{Diagram, LabelMap};
use crate::error::{invalid, Result};

/// An `ℓ`-simplex: a diagram with ordered maps `σᵢ: [ℓ] -> f⁻¹(i)`, stored as
/// global positions of `[m]`. Field order gives the canonical ordering
/// `(ℓ, f, h, σ)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct XiSimplex {
    pub ell: usize,
    pub diagram: Diagram,
    pub sigmas: Vec<Vec<usize>>,
}

impl XiSimplex {
    /// Checks that each `σᵢ` is weakly increasing of length `ℓ + 1` with values in `f⁻¹(i)`.
    pub fn new(diagram: Diagram, ell: usize, sigmas: Vec<Vec<usize>>) -> Result<XiSimplex> {
        if sigmas.len() != diagram.k() {
            return invalid(format!("{} coordinate maps for arity {}", sigmas.len(), diagram.k()));
        }
        for (i, s) in sigmas.iter().enumerate() {
            if s.len() != ell + 1 {
                return invalid(format!("coordinate map {} has length {}, expected {}", i + 1, s.len(), ell + 1));
            }
            if s.windows(2).any(|w| w[0] > w[1]) {
                return invalid(format!("coordinate map {} is not weakly increasing", i + 1));
            }
            if s.iter().any(|&p| p >= diagram.len() || diagram.f().get(p) != i + 1) {
                return invalid(format!("coordinate map {} leaves its fiber", i + 1));
            }
        }
        Ok(XiSimplex { ell, diagram, sigmas })
    }

    pub fn k(&self) -> usize {
        self.diagram.k()
    }

    /// Some `j` with `σᵢ(j) = σᵢ(j+1)` for every `i`.
    pub fn is_degenerate(&self) -> bool {
        (0..self.ell).any(|j| self.sigmas.iter().all(|s| s[j] == s[j + 1]))
    }

    /// Full support and no adjacent positions equal in both `f` and `h`.
    pub fn is_normal(&self) -> bool {
        let mut hit = vec![false; self.diagram.len()];
        for s in &self.sigmas {
            for &p in s {
                hit[p] = true;
            }
        }
        let f = self.diagram.f().values();
        let h = self.diagram.h();
        hit.iter().all(|&b| b) && (1..f.len()).all(|p| f[p] != f[p - 1] || h[p] != h[p - 1])
    }

    /// `d_j`: drop index `j` of every coordinate map, then normalise.
    pub fn face(&self, j: usize) -> XiSimplex {
        assert!(self.ell >= 1 && j <= self.ell, "face index out of range");
        let sigmas = self
            .sigmas
            .iter()
            .map(|s| s.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, &p)| p).collect())
            .collect();
        reduce_simplex(&XiSimplex { ell: self.ell - 1, diagram: self.diagram.clone(), sigmas })
    }

    /// `s_j`: repeat index `j` of every coordinate map.
    pub fn degeneracy(&self, j: usize) -> XiSimplex {
        assert!(j <= self.ell, "degeneracy index out of range");
        let sigmas = self
            .sigmas
            .iter()
            .map(|s| {
                let mut t = s.clone();
                t.insert(j, s[j]);
                t
            })
            .collect();
        XiSimplex { ell: self.ell + 1, diagram: self.diagram.clone(), sigmas }
    }
}

/// Normal form: delete positions hit by no coordinate map, collapse each
/// maximal run of adjacent positions with equal `f` and `h` to one position,
/// and renumber.
pub fn reduce_simplex(raw: &XiSimplex) -> XiSimplex {
    let d = &raw.diagram;
    let mut hit = vec![false; d.len()];
    for s in &raw.sigmas {
        for &p in s {
            hit[p] = true;
        }
    }
    let (f, h) = (d.f().values(), d.h());
    let mut new_pos = vec![usize::MAX; d.len()];
    let mut nf: Vec<usize> = Vec::new();
    let mut nh: Vec<usize> = Vec::new();
    for p in 0..d.len() {
        if !hit[p] {
            continue;
        }
        if nf.last() != Some(&f[p]) || nh.last() != Some(&h[p]) {
            nf.push(f[p]);
            nh.push(h[p]);
        }
        new_pos[p] = nf.len() - 1;
    }
    let diagram = Diagram::new(LabelMap::new_unchecked(d.k(), nf), nh, d.s()).expect("h stays monotone");
    let sigmas = raw.sigmas.iter().map(|s| s.iter().map(|&p| new_pos[p]).collect()).collect();
    XiSimplex { ell: raw.ell, diagram, sigmas }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn simplex(k: usize, f: &[usize], h: &[usize], s: usize, sigmas: &[&[usize]]) -> XiSimplex {
        let d = Diagram::from_parts(k, f.to_vec(), h.to_vec(), s).unwrap();
        let ell = sigmas[0].len() - 1;
        XiSimplex::new(d, ell, sigmas.iter().map(|x| x.to_vec()).collect()).unwrap()
    }

    #[test]
    fn worked_examples() {
        let raw = simplex(2, &[1, 2, 1], &[0, 0, 0], 0, &[&[0], &[1]]);
        assert_eq!(reduce_simplex(&raw), simplex(2, &[1, 2], &[0, 0], 0, &[&[0], &[1]]));
        let x = simplex(1, &[1, 1], &[0, 1], 1, &[&[0, 1]]);
        assert_eq!(reduce_simplex(&x), x);
        let raw = simplex(2, &[1, 2, 1, 2], &[0, 0, 0, 0], 0, &[&[0], &[3]]);
        let r = reduce_simplex(&raw);
        assert_eq!(r, simplex(2, &[1, 2], &[0, 0], 0, &[&[0], &[1]]));
        assert!(r.is_normal());
    }

    #[test]
    fn merges_runs() {
        // after dropping position 1 the two 1-labelled positions become adjacent
        let raw = simplex(2, &[1, 2, 1, 2], &[0, 0, 0, 0], 0, &[&[0, 2], &[3, 3]]);
        let r = reduce_simplex(&raw);
        assert_eq!(r, simplex(2, &[1, 2], &[0, 0], 0, &[&[0, 0], &[1, 1]]));
        assert!(r.is_degenerate());
    }

    #[test]
    fn validation() {
        let d = Diagram::from_parts(2, vec![1, 2], vec![0, 0], 0).unwrap();
        assert!(XiSimplex::new(d.clone(), 0, vec![vec![1], vec![1]]).is_err());
        assert!(XiSimplex::new(d.clone(), 1, vec![vec![0], vec![1]]).is_err());
        assert!(XiSimplex::new(d, 0, vec![vec![0]]).is_err());
    }

    #[test]
    fn faces_and_degeneracies() {
        let x = simplex(2, &[1, 2, 1], &[0, 0, 0], 0, &[&[0, 0, 2], &[1, 1, 1]]);
        assert!(x.is_degenerate());
        let y = simplex(2, &[1, 2, 1], &[0, 0, 0], 0, &[&[0, 2], &[1, 1]]);
        assert!(!y.is_degenerate());
        for j in 0..=1 {
            assert_eq!(y.degeneracy(j).face(j), y);
            assert_eq!(y.degeneracy(j).face(j + 1), y);
        }
        assert_eq!(y.face(0), simplex(2, &[2, 1], &[0, 0], 0, &[&[1], &[0]]));
        assert_eq!(y.face(1), simplex(2, &[1, 2], &[0, 0], 0, &[&[0], &[1]]));
    }
}

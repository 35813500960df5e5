use serde::Serialize;

use super::Bound;
use crate::combinat::{complexity, Diagram, LabelMap};
use crate::error::{Error, Result};

/// A nondegenerate diagram of bounded complexity; the cell has dimension `m + 1 - k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Cell {
    pub diagram: Diagram,
    pub dim: usize,
}

impl Cell {
    pub fn new(diagram: Diagram) -> Result<Cell> {
        if !diagram.is_nondegenerate() {
            return Err(Error::Invalid("cells are indexed by nondegenerate diagrams".into()));
        }
        let dim = diagram.cell_dim().max(0) as usize;
        Ok(Cell { diagram, dim })
    }
}

struct Search {
    k: usize,
    s: usize,
    bound: Bound,
    max_len: usize,
    f: Vec<usize>,
    h: Vec<usize>,
    seen: Vec<usize>,
    /// per ordered pair (a, b) flattened: last label of {a,b} seen, and block count
    last: Vec<usize>,
    blocks: Vec<usize>,
    out: Vec<Cell>,
}

impl Search {
    fn pair(&self, a: usize, b: usize) -> usize {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        (a - 1) * self.k + (b - 1)
    }

    fn emit(&mut self) {
        if self.seen.iter().all(|&c| c > 0) {
            let f = LabelMap::new_unchecked(self.k, self.f.clone());
            let d = Diagram::new(f, self.h.clone(), self.s).expect("h is monotone");
            let dim = self.f.len() - self.k;
            self.out.push(Cell { diagram: d, dim });
        }
    }

    fn extend(&mut self) {
        self.emit();
        if self.f.len() == self.max_len {
            return;
        }
        let missing = self.seen.iter().filter(|&&c| c == 0).count();
        if self.f.len() + missing > self.max_len {
            return;
        }
        let (lf, lh) = (self.f.last().copied(), self.h.last().copied().unwrap_or(0));
        for hv in lh..=self.s {
            for v in 1..=self.k {
                if lf == Some(v) && hv == lh && !self.h.is_empty() {
                    continue;
                }
                // update pair statistics, remembering what to undo
                let mut undo = Vec::with_capacity(self.k);
                let mut ok = true;
                for w in 1..=self.k {
                    if w == v {
                        continue;
                    }
                    let p = self.pair(v, w);
                    undo.push((p, self.last[p], self.blocks[p]));
                    if self.last[p] != v {
                        self.last[p] = v;
                        self.blocks[p] += 1;
                        if !self.bound.admits(self.blocks[p] - 1) {
                            ok = false;
                        }
                    }
                }
                if ok {
                    self.f.push(v);
                    self.h.push(hv);
                    self.seen[v - 1] += 1;
                    self.extend();
                    self.seen[v - 1] -= 1;
                    self.f.pop();
                    self.h.pop();
                }
                for (p, l, b) in undo {
                    self.last[p] = l;
                    self.blocks[p] = b;
                }
            }
        }
    }
}

/// All cells: nondegenerate diagrams into `[s]` with complexity within
/// `bound`, optionally only those of dimension at most `max_dim`. Sorted by
/// dimension, then `f`, then `h`.
pub fn enumerate_cells(bound: Bound, k: usize, s: usize, max_dim: Option<usize>) -> Result<Vec<Cell>> {
    let structural = match bound {
        // each adjacent label change is a block boundary of some pair, and
        // inside one level of h every adjacent pair changes label
        Bound::Finite(n) => Some(n * k * k.saturating_sub(1) / 2 + s + 1),
        Bound::Unbounded => None,
    };
    let max_len = match (structural, max_dim) {
        (Some(a), Some(d)) => a.min(d + k),
        (Some(a), None) => a,
        (None, Some(d)) => d + k,
        (None, None) => return Err(Error::TruncationRequired),
    };
    let mut search = Search {
        k,
        s,
        bound,
        max_len: max_len.max(k),
        f: Vec::new(),
        h: Vec::new(),
        seen: vec![0; k],
        last: vec![0; k * k],
        blocks: vec![0; k * k],
        out: Vec::new(),
    };
    if k == 0 {
        search.emit();
    } else {
        search.extend();
    }
    let mut cells = search.out;
    debug_assert!(cells.iter().all(|c| c.diagram.is_nondegenerate() && bound.admits(complexity(c.diagram.f()))));
    cells.sort_by(|a, b| (a.dim, &a.diagram).cmp(&(b.dim, &b.diagram)));
    Ok(cells)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(cells: &[Cell]) -> Vec<(Vec<usize>, usize)> {
        cells.iter().map(|c| (c.diagram.f().values().to_vec(), c.dim)).collect()
    }

    #[test]
    fn worked_examples() {
        let c = enumerate_cells(2.into(), 2, 0, None).unwrap();
        assert_eq!(words(&c), vec![(vec![1, 2], 0), (vec![2, 1], 0), (vec![1, 2, 1], 1), (vec![2, 1, 2], 1)]);
        let c = enumerate_cells(1.into(), 3, 0, None).unwrap();
        assert_eq!(c.len(), 6);
        assert!(c.iter().all(|x| x.dim == 0));
        assert_eq!(enumerate_cells(1.into(), 1, 0, None).unwrap().len(), 1);
        let c = enumerate_cells(Bound::Unbounded, 2, 0, Some(5)).unwrap();
        for d in 0..=5 {
            assert_eq!(c.iter().filter(|x| x.dim == d).count(), 2);
        }
        assert_eq!(c.len(), 12);
        assert!(enumerate_cells(Bound::Unbounded, 2, 0, None).is_err());
    }

    #[test]
    fn arity_zero_and_one() {
        let c = enumerate_cells(2.into(), 0, 3, None).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].dim, 0);
        // k = 1: f constant, h strictly increasing: subsets of [s]
        let c = enumerate_cells(1.into(), 1, 2, None).unwrap();
        assert_eq!(c.len(), 7);
    }

    #[test]
    fn matches_brute_force() {
        // every (f, h) up to the structural length bound, filtered directly
        for (n, k, s) in [(1usize, 2usize, 1usize), (2, 2, 1), (2, 3, 0), (3, 2, 0), (1, 3, 1)] {
            let max_len = n * k * (k - 1) / 2 + s + 1;
            let mut expected = Vec::new();
            for len in 0..=max_len {
                let total = (k.pow(len as u32)) * (s + 1).pow(len as u32);
                for code in 0..total {
                    let mut c = code;
                    let mut f = Vec::new();
                    let mut h = Vec::new();
                    for _ in 0..len {
                        f.push(c % k + 1);
                        c /= k;
                        h.push(c % (s + 1));
                        c /= s + 1;
                    }
                    if h.windows(2).any(|w| w[0] > w[1]) {
                        continue;
                    }
                    let d = Diagram::from_parts(k, f, h, s).unwrap();
                    if d.is_nondegenerate() && complexity(d.f()) <= n {
                        expected.push(d);
                    }
                }
            }
            expected.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
            let got: Vec<Diagram> =
                enumerate_cells(n.into(), k, s, None).unwrap().into_iter().map(|c| c.diagram).collect();
            assert_eq!(got, expected, "n={n} k={k} s={s}");
        }
    }
}

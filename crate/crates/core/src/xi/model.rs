use std::collections::HashMap;

use rayon::prelude::*;
use serde_json::{json, Map, Value};

use super::cells::{enumerate_cells, Cell};
use super::simplex::XiSimplex;
use super::Bound;
use crate::berger::{q_membership, BergerElem};
use crate::error::{Error, Result};
use crate::homology::{BoundaryMatrix, ChainComplex, ToChainComplex};

/// A face entry: index of the normalised face in the previous degree, or
/// `None` when the face is degenerate.
pub type Face = Option<u32>;

/// The nondegenerate simplices of the model, degree by degree, with faces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XiModel {
    pub bound: Bound,
    pub k: usize,
    pub s: usize,
    pub max_dim: Option<usize>,
    cells: Vec<Cell>,
    simplices: Vec<Vec<XiSimplex>>,
    faces: Vec<Vec<Vec<Face>>>,
}

/// Full-support lattice paths through the fibers of a cell: each step moves
/// every coordinate by 0 or 1, and at least one coordinate moves.
fn cell_simplices(cell: &Cell) -> Vec<XiSimplex> {
    let d = &cell.diagram;
    let fibers: Vec<Vec<usize>> = (1..=d.k()).map(|i| d.f().fiber(i)).collect();
    let ends: Vec<usize> = fibers.iter().map(|f| f.len() - 1).collect();
    let mut out = Vec::new();
    let mut path: Vec<Vec<usize>> = vec![vec![0; d.k()]];
    fn walk(
        d: &crate::combinat::Diagram,
        fibers: &[Vec<usize>],
        ends: &[usize],
        path: &mut Vec<Vec<usize>>,
        out: &mut Vec<XiSimplex>,
    ) {
        let cur = path.last().unwrap().clone();
        if cur.as_slice() == ends {
            let sigmas = (0..fibers.len()).map(|i| path.iter().map(|idx| fibers[i][idx[i]]).collect()).collect();
            out.push(XiSimplex { ell: path.len() - 1, diagram: d.clone(), sigmas });
            return;
        }
        let movable: Vec<usize> = (0..ends.len()).filter(|&i| cur[i] < ends[i]).collect();
        for mask in 1u64..(1 << movable.len()) {
            let mut next = cur.clone();
            for (b, &i) in movable.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    next[i] += 1;
                }
            }
            path.push(next);
            walk(d, fibers, ends, path, out);
            path.pop();
        }
    }
    walk(d, &fibers, &ends, &mut path, &mut out);
    out
}

/// The model with complexity at most `n` and target `[s]`.
pub fn build_model(n: usize, k: usize, s: usize) -> XiModel {
    build_model_bounded(Bound::Finite(n), k, s, None).expect("finite bounds need no truncation")
}

/// The model for any bound; an unbounded model needs `max_dim`, and then
/// consists of the cells of dimension at most `max_dim`.
pub fn build_model_bounded(bound: Bound, k: usize, s: usize, max_dim: Option<usize>) -> Result<XiModel> {
    if bound == Bound::Finite(0) {
        return Err(Error::Invalid("the complexity bound must be positive".into()));
    }
    let cells = enumerate_cells(bound, k, s, max_dim)?;
    let per_cell: Vec<Vec<XiSimplex>> = cells.par_iter().map(cell_simplices).collect();
    let top = cells.iter().map(|c| c.dim).max().map_or(0, |d| d + 1);
    let mut simplices: Vec<Vec<XiSimplex>> = vec![Vec::new(); top];
    for x in per_cell.into_iter().flatten() {
        simplices[x.ell].push(x);
    }
    for level in &mut simplices {
        level.sort();
    }
    let faces = face_tables(&simplices);
    Ok(XiModel { bound, k, s, max_dim, cells, simplices, faces })
}

fn face_tables(simplices: &[Vec<XiSimplex>]) -> Vec<Vec<Vec<Face>>> {
    let index: Vec<HashMap<&XiSimplex, u32>> =
        simplices.iter().map(|l| l.iter().enumerate().map(|(i, x)| (x, i as u32)).collect()).collect();
    (0..simplices.len())
        .map(|ell| {
            if ell == 0 {
                return vec![Vec::new(); simplices[0].len()];
            }
            simplices[ell]
                .par_iter()
                .map(|x| {
                    (0..=ell)
                        .map(|j| {
                            let y = x.face(j);
                            if y.is_degenerate() {
                                None
                            } else {
                                Some(*index[ell - 1].get(&y).expect("faces of the model stay in the model"))
                            }
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

impl XiModel {
    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn simplices(&self, ell: usize) -> &[XiSimplex] {
        self.simplices.get(ell).map_or(&[], |v| v.as_slice())
    }

    pub fn top_degree(&self) -> Option<usize> {
        self.simplices.len().checked_sub(1)
    }

    pub fn counts(&self) -> Vec<usize> {
        self.simplices.iter().map(|l| l.len()).collect()
    }

    /// Face `j` of simplex `i` in degree `ell`.
    pub fn face(&self, ell: usize, i: usize, j: usize) -> Face {
        self.faces[ell][i][j]
    }

    pub fn index_of(&self, x: &XiSimplex) -> Option<usize> {
        self.simplices.get(x.ell)?.binary_search(x).ok()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .enumerate()
            .map(|(d, l)| if d % 2 == 0 { l.len() as i64 } else { -(l.len() as i64) })
            .sum()
    }

    /// Alternating count of cells.
    pub fn cell_euler_characteristic(&self) -> i64 {
        self.cells.iter().map(|c| if c.dim % 2 == 0 { 1 } else { -1 }).sum()
    }

    pub fn to_json(&self) -> Value {
        let mut simplices = Map::new();
        let mut faces = Map::new();
        for (ell, level) in self.simplices.iter().enumerate() {
            let xs: Vec<Value> = level
                .iter()
                .map(|x| json!({"f": x.diagram.f().values(), "h": x.diagram.h(), "sigmas": x.sigmas}))
                .collect();
            simplices.insert(ell.to_string(), Value::Array(xs));
            if ell > 0 {
                faces.insert(ell.to_string(), json!(self.faces[ell]));
            }
        }
        let cells: Vec<Value> =
            self.cells.iter().map(|c| json!({"f": c.diagram.f().values(), "h": c.diagram.h(), "dim": c.dim})).collect();
        json!({
            "n": self.bound,
            "k": self.k,
            "s": self.s,
            "cells": cells,
            "simplices": simplices,
            "faces": faces,
        })
    }
}

impl ToChainComplex for XiModel {
    fn chain_complex(&self) -> ChainComplex {
        let generators = self.counts();
        let boundaries = (1..self.simplices.len())
            .map(|ell| {
                let cols = self.faces[ell]
                    .iter()
                    .map(|fs| {
                        fs.iter()
                            .enumerate()
                            .filter_map(|(j, f)| f.map(|r| (r, if j % 2 == 0 { 1 } else { -1 })))
                            .collect()
                    })
                    .collect();
                BoundaryMatrix::from_columns(generators[ell - 1], cols)
            })
            .collect();
        ChainComplex::new(generators, boundaries).expect("shapes agree by construction")
    }
}

/// The sub-model of simplices whose label map has invariant below `x`.
pub fn restrict_to_bt(model: &XiModel, x: &BergerElem) -> Result<XiModel> {
    if x.k() != model.k {
        return Err(Error::Arity(format!("element of arity {} for a model of arity {}", x.k(), model.k)));
    }
    let keep_cell = |d: &crate::combinat::Diagram| q_membership(d.f(), x);
    let mut cells = Vec::new();
    for c in &model.cells {
        if keep_cell(&c.diagram)? {
            cells.push(c.clone());
        }
    }
    let mut keep: Vec<Vec<bool>> = Vec::with_capacity(model.simplices.len());
    for level in &model.simplices {
        keep.push(level.iter().map(|s| keep_cell(&s.diagram)).collect::<Result<Vec<bool>>>()?);
    }
    let new_index: Vec<Vec<Option<u32>>> = keep
        .iter()
        .map(|k| {
            let mut next = 0;
            k.iter()
                .map(|&b| {
                    b.then(|| {
                        next += 1;
                        next - 1
                    })
                })
                .collect()
        })
        .collect();
    let mut simplices: Vec<Vec<XiSimplex>> = Vec::new();
    let mut faces: Vec<Vec<Vec<Face>>> = Vec::new();
    for (ell, level) in model.simplices.iter().enumerate() {
        let mut xs = Vec::new();
        let mut fs = Vec::new();
        for (i, s) in level.iter().enumerate() {
            if !keep[ell][i] {
                continue;
            }
            xs.push(s.clone());
            let row: Vec<Face> = model.faces[ell][i]
                .iter()
                .map(|f| f.map(|r| new_index[ell - 1][r as usize].expect("the sub-model is closed under faces")))
                .collect();
            fs.push(row);
        }
        simplices.push(xs);
        faces.push(fs);
    }
    while simplices.last().is_some_and(|l| l.is_empty()) {
        simplices.pop();
        faces.pop();
    }
    Ok(XiModel { bound: model.bound, k: model.k, s: model.s, max_dim: model.max_dim, cells, simplices, faces })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::berger::enumerate;
    use crate::homology::homology;

    #[test]
    fn worked_examples() {
        let m = build_model(2, 2, 0);
        assert_eq!(m.euler_characteristic(), 0);
        assert_eq!(homology(&m.chain_complex()).unwrap().betti, vec![1, 1]);
        let m = build_model(1, 2, 0);
        assert_eq!(m.counts(), vec![2]);
        let m = build_model(1, 1, 0);
        assert_eq!(m.counts(), vec![1]);
        assert_eq!(build_model(1, 3, 0).euler_characteristic(), 6);
        assert_eq!(build_model(3, 2, 0).euler_characteristic(), 2);
    }

    #[test]
    fn simplex_counts() {
        assert_eq!(build_model(2, 3, 0).counts(), vec![6, 24, 18]);
        assert_eq!(build_model(3, 2, 0).counts(), vec![2, 4, 4]);
        assert_eq!(build_model(2, 4, 0).counts(), vec![24, 312, 672, 384]);
        assert_eq!(build_model(3, 3, 0).counts(), vec![6, 84, 462, 918, 720, 180]);
    }

    #[test]
    fn euler_characteristics_agree() {
        for (n, k, s) in [(2, 2, 0), (2, 3, 1), (3, 2, 2), (1, 3, 2), (2, 2, 3)] {
            let m = build_model(n, k, s);
            assert_eq!(m.euler_characteristic(), m.cell_euler_characteristic(), "{n} {k} {s}");
            assert_eq!(m.chain_complex().euler_characteristic(), m.euler_characteristic());
        }
    }

    #[test]
    fn simplicial_identities_on_faces() {
        for (n, k, s) in [(2, 2, 1), (2, 3, 0), (3, 2, 1)] {
            let m = build_model(n, k, s);
            for ell in 2..m.counts().len() {
                for x in m.simplices(ell) {
                    for j in 1..=ell {
                        for i in 0..j {
                            assert_eq!(x.face(j).face(i), x.face(i).face(j - 1));
                        }
                    }
                }
            }
            m.chain_complex().check_square_zero().unwrap();
        }
    }

    #[test]
    fn positive_s_is_contractible_factor() {
        // the target [s] contributes a contractible factor
        for (n, k) in [(2, 2), (1, 3), (2, 3)] {
            let base = homology(&build_model(n, k, 0).chain_complex()).unwrap();
            for s in 1..=2 {
                let h = homology(&build_model(n, k, s).chain_complex()).unwrap();
                assert_eq!(h.trimmed_betti(), base.trimmed_betti(), "n={n} k={k} s={s}");
            }
        }
    }

    #[test]
    fn restriction_examples() {
        let m = build_model(2, 2, 0);
        let x = BergerElem::new(2, 2, vec![0], vec![1, 2]).unwrap();
        let r = restrict_to_bt(&m, &x).unwrap();
        assert_eq!(r.counts(), vec![1]);
        assert_eq!(r.simplices(0)[0].diagram.f().values(), &[1, 2]);
        let x = BergerElem::new(2, 2, vec![1], vec![1, 2]).unwrap();
        let r = restrict_to_bt(&m, &x).unwrap();
        let words: Vec<Vec<usize>> = r.cells().iter().map(|c| c.diagram.f().values().to_vec()).collect();
        assert_eq!(words, vec![vec![1, 2], vec![2, 1], vec![1, 2, 1]]);
        assert!(homology(&r.chain_complex()).unwrap().is_point());
    }

    #[test]
    fn restrictions_cover_the_model() {
        let m = build_model(2, 3, 0);
        let mut covered: Vec<Vec<bool>> = m.counts().iter().map(|&c| vec![false; c]).collect();
        for x in enumerate(2, 3) {
            let r = restrict_to_bt(&m, &x).unwrap();
            for l in 0..r.counts().len() {
                for s in r.simplices(l) {
                    covered[l][m.index_of(s).unwrap()] = true;
                }
            }
        }
        assert!(covered.iter().flatten().all(|&b| b));
    }

    #[test]
    fn json_shape() {
        let v = build_model(2, 2, 0).to_json();
        assert_eq!(v["cells"].as_array().unwrap().len(), 4);
        assert_eq!(v["simplices"]["0"].as_array().unwrap().len(), 2);
        assert_eq!(v["faces"]["1"].as_array().unwrap().len(), 2);
        let v = build_model_bounded(Bound::Unbounded, 2, 0, Some(2)).unwrap().to_json();
        assert_eq!(v["n"], "inf");
    }
}

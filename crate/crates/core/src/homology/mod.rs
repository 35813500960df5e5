//! Sparse chain complexes and exact integral homology.

pub mod elim;
mod reduce;
pub mod snf;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{invalid, Error, Result};
use crate::Int;

/// Anything with a normalized chain complex.
pub trait ToChainComplex {
    fn chain_complex(&self) -> ChainComplex;
}

/// Boundary matrices of a model: alternating face sums, degenerate faces zero.
pub fn boundary_matrices<M: ToChainComplex>(model: &M) -> ChainComplex {
    model.chain_complex()
}

/// A sparse matrix as sorted `(row, col, value)` triplets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseIntMatrix<T = Int> {
    pub rows: usize,
    pub cols: usize,
    triplets: Vec<(usize, usize, T)>,
}

impl<T: Clone + Zero + PartialEq> SparseIntMatrix<T> {
    /// Sorts by `(row, col)`; rejects duplicates, zeros and out-of-range indices.
    pub fn new(rows: usize, cols: usize, mut triplets: Vec<(usize, usize, T)>) -> Result<Self> {
        triplets.sort_by_key(|t| (t.0, t.1));
        for w in triplets.windows(2) {
            if (w[0].0, w[0].1) == (w[1].0, w[1].1) {
                return invalid(format!("duplicate entry at ({}, {})", w[0].0, w[0].1));
            }
        }
        for t in &triplets {
            if t.0 >= rows || t.1 >= cols {
                return invalid(format!("entry ({}, {}) outside a {rows}x{cols} matrix", t.0, t.1));
            }
            if t.2.is_zero() {
                return invalid("explicit zero entry");
            }
        }
        Ok(SparseIntMatrix { rows, cols, triplets })
    }

    pub fn triplets(&self) -> &[(usize, usize, T)] {
        &self.triplets
    }
}

impl<T: crate::scalar::IntegerScalar> SparseIntMatrix<T> {
    pub fn to_dense(&self) -> snf::DenseMatrix<T> {
        let mut m = snf::DenseMatrix::zeros(self.rows, self.cols);
        for (r, c, v) in &self.triplets {
            m.set(*r, *c, v.clone());
        }
        m
    }
}

/// Smith normal form of a sparse matrix over arbitrary precision integers.
pub fn smith_normal_form(m: &SparseIntMatrix<Int>) -> crate::SmithForm {
    snf::smith_normal_form(&m.to_dense())
}

/// A boundary map stored by columns; each column is sorted by row with
/// nonzero machine-integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryMatrix {
    rows: usize,
    col_ptr: Vec<usize>,
    entries: Vec<(u32, i64)>,
}

impl BoundaryMatrix {
    /// Builds from unsorted columns, summing repeated rows and dropping zeros.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(u32, i64)>>) -> Self {
        let mut col_ptr = Vec::with_capacity(columns.len() + 1);
        col_ptr.push(0);
        let mut entries: Vec<(u32, i64)> = Vec::with_capacity(columns.iter().map(|c| c.len()).sum());
        for mut c in columns {
            c.sort_unstable_by_key(|e| e.0);
            let start = entries.len();
            for (r, v) in c {
                debug_assert!((r as usize) < rows);
                if entries.len() > start && entries[entries.len() - 1].0 == r {
                    entries.last_mut().unwrap().1 += v;
                } else {
                    entries.push((r, v));
                }
            }
            // drop cancelled entries
            let mut w = start;
            for i in start..entries.len() {
                if entries[i].1 != 0 {
                    entries[w] = entries[i];
                    w += 1;
                }
            }
            entries.truncate(w);
            col_ptr.push(entries.len());
        }
        BoundaryMatrix { rows, col_ptr, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.col_ptr.len() - 1
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn column(&self, j: usize) -> &[(u32, i64)] {
        &self.entries[self.col_ptr[j]..self.col_ptr[j + 1]]
    }

    pub fn transpose(&self) -> BoundaryMatrix {
        let mut counts = vec![0usize; self.rows + 1];
        for e in &self.entries {
            counts[e.0 as usize + 1] += 1;
        }
        for i in 0..self.rows {
            counts[i + 1] += counts[i];
        }
        let mut fill = counts.clone();
        let mut entries = vec![(0u32, 0i64); self.entries.len()];
        for j in 0..self.cols() {
            for &(r, v) in self.column(j) {
                entries[fill[r as usize]] = (j as u32, v);
                fill[r as usize] += 1;
            }
        }
        BoundaryMatrix { rows: self.cols(), col_ptr: counts, entries }
    }

    /// Triplets sorted by `(row, col)`.
    pub fn to_sparse(&self) -> SparseIntMatrix<i64> {
        let t = self.transpose();
        let mut triplets = Vec::with_capacity(self.nnz());
        for r in 0..self.rows {
            for &(c, v) in t.column(r) {
                triplets.push((r, c as usize, v));
            }
        }
        SparseIntMatrix { rows: self.rows, cols: self.cols(), triplets }
    }
}

/// Generator counts per degree and boundaries `∂_d: C_d -> C_{d-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    generators: Vec<usize>,
    /// `boundaries[d - 1]` is `∂_d`.
    boundaries: Vec<BoundaryMatrix>,
}

impl ChainComplex {
    pub fn new(generators: Vec<usize>, boundaries: Vec<BoundaryMatrix>) -> Result<Self> {
        if boundaries.len() != generators.len().saturating_sub(1) {
            return invalid(format!(
                "{} generator degrees need {} boundaries, got {}",
                generators.len(),
                generators.len().saturating_sub(1),
                boundaries.len()
            ));
        }
        for (i, b) in boundaries.iter().enumerate() {
            if b.rows() != generators[i] || b.cols() != generators[i + 1] {
                return invalid(format!("boundary in degree {} has the wrong shape", i + 1));
            }
        }
        Ok(ChainComplex { generators, boundaries })
    }

    pub fn empty() -> Self {
        ChainComplex { generators: Vec::new(), boundaries: Vec::new() }
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// `∂_d` for `d >= 1`.
    pub fn boundary(&self, d: usize) -> Option<&BoundaryMatrix> {
        d.checked_sub(1).and_then(|i| self.boundaries.get(i))
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.generators.iter().enumerate().map(|(d, &n)| if d % 2 == 0 { n as i64 } else { -(n as i64) }).sum()
    }

    /// Verifies `∂_d ∘ ∂_{d+1} = 0` in every degree.
    pub fn check_square_zero(&self) -> Result<()> {
        let bad = (1..self.boundaries.len()).into_par_iter().find_first(|&i| {
            let (lo, hi) = (&self.boundaries[i - 1], &self.boundaries[i]);
            let mut acc: Vec<i64> = vec![0; lo.rows()];
            let mut touched: Vec<u32> = Vec::new();
            for j in 0..hi.cols() {
                for &(r, v) in hi.column(j) {
                    for &(r2, w) in lo.column(r as usize) {
                        if acc[r2 as usize] == 0 {
                            touched.push(r2);
                        }
                        acc[r2 as usize] += v * w;
                    }
                }
                let nonzero = touched.iter().any(|&t| acc[t as usize] != 0);
                for &t in &touched {
                    acc[t as usize] = 0;
                }
                touched.clear();
                if nonzero {
                    return true;
                }
            }
            false
        });
        match bad {
            Some(i) => Err(Error::NotAComplex(i)),
            None => Ok(()),
        }
    }

    pub fn to_json(&self) -> Value {
        let boundaries: Vec<Value> = self
            .boundaries
            .iter()
            .enumerate()
            .map(|(i, b)| {
                let s = b.to_sparse();
                let triplets: Vec<Value> = s.triplets().iter().map(|&(r, c, v)| json!([r, c, v])).collect();
                json!({"deg": i + 1, "rows": b.rows(), "cols": b.cols(), "triplets": triplets})
            })
            .collect();
        json!({"generators": self.generators, "boundaries": boundaries})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        #[derive(Deserialize)]
        struct B {
            deg: usize,
            rows: usize,
            cols: usize,
            triplets: Vec<(usize, usize, i64)>,
        }
        #[derive(Deserialize)]
        struct C {
            generators: Vec<usize>,
            boundaries: Vec<B>,
        }
        let c: C = serde_json::from_value(v.clone())?;
        let mut boundaries = Vec::with_capacity(c.boundaries.len());
        for (i, b) in c.boundaries.into_iter().enumerate() {
            if b.deg != i + 1 {
                return invalid(format!("boundary {} has degree {}", i + 1, b.deg));
            }
            let s = SparseIntMatrix::new(b.rows, b.cols, b.triplets)?;
            let mut columns = vec![Vec::new(); b.cols];
            for &(r, c, v) in s.triplets() {
                columns[c].push((r as u32, v));
            }
            boundaries.push(BoundaryMatrix::from_columns(b.rows, columns));
        }
        ChainComplex::new(c.generators, boundaries)
    }

    /// The subcomplex on the cells flagged in `keep`, which must be closed under faces.
    pub fn restrict(&self, keep: &[Vec<bool>]) -> ChainComplex {
        let index: Vec<Vec<Option<u32>>> = keep
            .iter()
            .map(|k| {
                let mut next = 0u32;
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
        let generators: Vec<usize> = keep.iter().map(|k| k.iter().filter(|&&b| b).count()).collect();
        let boundaries = self
            .boundaries
            .iter()
            .enumerate()
            .map(|(i, b)| {
                let cols = (0..b.cols())
                    .filter(|&j| keep[i + 1][j])
                    .map(|j| b.column(j).iter().filter_map(|&(r, v)| index[i][r as usize].map(|r2| (r2, v))).collect())
                    .collect();
                BoundaryMatrix::from_columns(generators[i], cols)
            })
            .collect();
        ChainComplex { generators, boundaries }
    }
}

/// Betti numbers and torsion coefficients per degree.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HomologyGroups {
    pub betti: Vec<usize>,
    /// Invariant factors greater than one, in divisibility order.
    pub torsion: Vec<Vec<Int>>,
}

impl HomologyGroups {
    pub fn is_torsion_free(&self) -> bool {
        self.torsion.iter().all(|t| t.is_empty())
    }

    /// Homology of a point: `H_0 = Z`, everything else zero.
    pub fn is_point(&self) -> bool {
        self.betti.first() == Some(&1) && self.betti[1..].iter().all(|&b| b == 0) && self.is_torsion_free()
    }

    /// Betti numbers with trailing zeros removed.
    pub fn trimmed_betti(&self) -> Vec<usize> {
        let mut b = self.betti.clone();
        while b.last() == Some(&0) {
            b.pop();
        }
        b
    }

    pub fn to_json(&self) -> Value {
        let torsion: Vec<Value> =
            self.torsion.iter().map(|t| Value::Array(t.iter().map(int_to_json).collect())).collect();
        json!({"betti": self.betti, "torsion": torsion})
    }
}

fn int_to_json(x: &Int) -> Value {
    match u64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

impl Serialize for HomologyGroups {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

fn groups_from_factors(ranks_dims: &[usize], factors: &[Vec<Int>], extra_h0: usize) -> HomologyGroups {
    // factors[d] are the invariant factors of ∂_{d+1}
    let top = ranks_dims.len();
    let rank = |d: usize| factors.get(d).map_or(0, |f| f.len());
    let mut betti = Vec::with_capacity(top);
    let mut torsion = Vec::with_capacity(top);
    for d in 0..top {
        let incoming = if d == 0 { 0 } else { rank(d - 1) };
        betti.push(ranks_dims[d] - incoming - rank(d) + if d == 0 { extra_h0 } else { 0 });
        let t: Vec<Int> =
            factors.get(d).map_or(Vec::new(), |f| f.iter().filter(|x| !x.is_one()).map(|x| x.abs()).collect());
        torsion.push(t);
    }
    HomologyGroups { betti, torsion }
}

fn columns_of(b: &BoundaryMatrix) -> Vec<Vec<(u32, i64)>> {
    (0..b.cols()).map(|j| b.column(j).to_vec()).collect()
}

/// Integral homology; the complex is first shrunk by removing collapsible
/// and coreducible pairs, then each residual boundary is diagonalised.
pub fn homology(cc: &ChainComplex) -> Result<HomologyGroups> {
    cc.check_square_zero()?;
    let red = reduce::reduce(cc);
    let residual = cc.restrict(&red.alive);
    Ok(homology_of_checked(&residual, red.set_aside))
}

/// Integral homology by elimination on the full complex, without the pair
/// removal step. Slower; kept as an independent path for cross-checks.
pub fn homology_unreduced(cc: &ChainComplex) -> Result<HomologyGroups> {
    cc.check_square_zero()?;
    Ok(homology_of_checked(cc, 0))
}

fn homology_of_checked(cc: &ChainComplex, extra_h0: usize) -> HomologyGroups {
    let factors: Vec<Vec<Int>> =
        cc.boundaries.par_iter().map(|b| elim::invariant_factors(b.rows(), &columns_of(b))).collect();
    groups_from_factors(&cc.generators, &factors, extra_h0)
}

/// Betti numbers over `Z/p` computed by modular elimination.
pub fn betti_mod_p(cc: &ChainComplex, p: u64) -> Result<Vec<usize>> {
    cc.check_square_zero()?;
    let ranks: Vec<usize> = cc.boundaries.par_iter().map(|b| elim::rank_mod_p(b.rows(), &columns_of(b), p)).collect();
    Ok((0..cc.generators.len())
        .map(|d| {
            let incoming = if d == 0 { 0 } else { ranks[d - 1] };
            cc.generators[d] - incoming - ranks.get(d).copied().unwrap_or(0)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Simplicial chain complex of a complex given by its top simplices.
    pub(crate) fn simplicial(tops: &[Vec<u32>]) -> ChainComplex {
        use std::collections::BTreeSet;
        let mut faces: BTreeSet<Vec<u32>> = BTreeSet::new();
        for t in tops {
            let n = t.len();
            for mask in 1u32..(1 << n) {
                let s: Vec<u32> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| t[i]).collect();
                faces.insert(s);
            }
        }
        let dim = faces.iter().map(|f| f.len()).max().unwrap_or(0);
        let by_dim: Vec<Vec<Vec<u32>>> =
            (1..=dim).map(|l| faces.iter().filter(|f| f.len() == l).cloned().collect()).collect();
        let generators = by_dim.iter().map(|v| v.len()).collect();
        let boundaries = (1..dim)
            .map(|d| {
                let cols = by_dim[d]
                    .iter()
                    .map(|s| {
                        (0..s.len())
                            .map(|j| {
                                let mut f = s.clone();
                                f.remove(j);
                                let r = by_dim[d - 1].binary_search(&f).unwrap() as u32;
                                (r, if j % 2 == 0 { 1 } else { -1 })
                            })
                            .collect()
                    })
                    .collect();
                BoundaryMatrix::from_columns(by_dim[d - 1].len(), cols)
            })
            .collect();
        ChainComplex::new(generators, boundaries).unwrap()
    }

    fn rp2() -> ChainComplex {
        let t = [
            [0, 1, 2],
            [0, 2, 3],
            [0, 3, 4],
            [0, 4, 5],
            [0, 1, 5],
            [1, 2, 4],
            [2, 3, 5],
            [1, 3, 4],
            [2, 4, 5],
            [1, 3, 5],
        ];
        let tops: Vec<Vec<u32>> = t
            .iter()
            .map(|x| {
                let mut v = x.to_vec();
                v.sort();
                v
            })
            .collect();
        simplicial(&tops)
    }

    #[test]
    fn two_points() {
        let cc = ChainComplex::new(vec![2], vec![]).unwrap();
        let h = homology(&cc).unwrap();
        assert_eq!(h.betti, vec![2]);
    }

    #[test]
    fn projective_plane() {
        let cc = rp2();
        assert_eq!(cc.generators(), &[6, 15, 10]);
        for h in [homology(&cc).unwrap(), homology_unreduced(&cc).unwrap()] {
            assert_eq!(h.betti, vec![1, 0, 0]);
            assert_eq!(h.torsion, vec![vec![], vec![Int::from(2)], vec![]]);
        }
        assert_eq!(betti_mod_p(&cc, 2).unwrap(), vec![1, 1, 1]);
    }

    #[test]
    fn circle_and_spheres() {
        let circle = simplicial(&[vec![0, 1], vec![1, 2], vec![0, 2]]);
        assert_eq!(homology(&circle).unwrap().betti, vec![1, 1]);
        let s2 = simplicial(&[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]);
        assert_eq!(homology(&s2).unwrap().betti, vec![1, 0, 1]);
        let two_circles = simplicial(&[vec![0, 1], vec![1, 2], vec![0, 2], vec![3, 4], vec![4, 5], vec![3, 5]]);
        assert_eq!(homology(&two_circles).unwrap().betti, vec![2, 2]);
    }

    #[test]
    fn non_augmented_cellular_complex() {
        // one vertex, one edge with boundary 2v: H_0 = Z/2
        let cc = ChainComplex::new(vec![1, 1], vec![BoundaryMatrix::from_columns(1, vec![vec![(0, 2)]])]).unwrap();
        let h = homology(&cc).unwrap();
        assert_eq!(h.betti, vec![0, 0]);
        assert_eq!(h.torsion[0], vec![Int::from(2)]);
        // cellular projective plane: e0, e1 with ∂ = 0, e2 with ∂ = 2 e1
        let cc = ChainComplex::new(
            vec![1, 1, 1],
            vec![BoundaryMatrix::from_columns(1, vec![vec![]]), BoundaryMatrix::from_columns(1, vec![vec![(0, 2)]])],
        )
        .unwrap();
        let h = homology(&cc).unwrap();
        assert_eq!(h.betti, vec![1, 0, 0]);
        assert_eq!(h.torsion[1], vec![Int::from(2)]);
    }

    #[test]
    fn rejects_non_complexes() {
        let cc = ChainComplex::new(
            vec![1, 1, 1],
            vec![
                BoundaryMatrix::from_columns(1, vec![vec![(0, 1)]]),
                BoundaryMatrix::from_columns(1, vec![vec![(0, 1)]]),
            ],
        )
        .unwrap();
        assert_eq!(homology(&cc), Err(Error::NotAComplex(1)));
    }

    #[test]
    fn json_round_trip_is_sorted() {
        let cc = rp2();
        let v = cc.to_json();
        let back = ChainComplex::from_json(&v).unwrap();
        assert_eq!(back, cc);
        for b in v["boundaries"].as_array().unwrap() {
            let t = b["triplets"].as_array().unwrap();
            let keys: Vec<(u64, u64)> = t.iter().map(|x| (x[0].as_u64().unwrap(), x[1].as_u64().unwrap())).collect();
            let mut sorted = keys.clone();
            sorted.sort();
            assert_eq!(keys, sorted);
        }
        let empty = ChainComplex::empty();
        assert_eq!(empty.to_json().to_string(), r#"{"boundaries":[],"generators":[]}"#);
        assert_eq!(ChainComplex::from_json(&empty.to_json()).unwrap(), empty);
    }

    #[test]
    fn euler_characteristic_matches_betti() {
        let cc = rp2();
        let h = homology(&cc).unwrap();
        let chi: i64 = h.betti.iter().enumerate().map(|(d, &b)| if d % 2 == 0 { b as i64 } else { -(b as i64) }).sum();
        assert_eq!(chi, cc.euler_characteristic());
    }
}

//! Finite simplicial sets given by their nondegenerate simplices and face
//! maps in normal form.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::homology::{BoundaryMatrix, ChainComplex, ToChainComplex};

/// A simplex in normal form: a nondegenerate simplex `base` of dimension
/// `base_dim` together with a monotone surjection `[p] -> [base_dim]`.
/// The empty surjection is the unique simplex of the augmented (empty) degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Simplex {
    pub base_dim: usize,
    pub base: usize,
    pub surj: Vec<usize>,
}

impl Simplex {
    pub fn empty() -> Self {
        Simplex { base_dim: 0, base: 0, surj: Vec::new() }
    }

    pub fn nondegenerate(dim: usize, index: usize) -> Self {
        Simplex { base_dim: dim, base: index, surj: (0..=dim).collect() }
    }

    /// `-1` for the empty simplex.
    pub fn degree(&self) -> isize {
        self.surj.len() as isize - 1
    }

    pub fn is_empty(&self) -> bool {
        self.surj.is_empty()
    }

    pub fn is_degenerate(&self) -> bool {
        !self.is_empty() && self.surj.len() != self.base_dim + 1
    }
}

/// True iff `g` is weakly increasing with values below `target`.
pub(crate) fn is_monotone_into(g: &[usize], target: usize) -> bool {
    g.windows(2).all(|w| w[0] <= w[1]) && g.iter().all(|&v| v < target)
}

fn is_monotone_onto(g: &[usize], dim: usize) -> bool {
    !g.is_empty() && g[0] == 0 && g.windows(2).all(|w| w[1] == w[0] || w[1] == w[0] + 1) && g[g.len() - 1] == dim
}

/// All monotone surjections `[p] -> [d]`, in lexicographic order.
pub fn surjections(p: usize, d: usize) -> Vec<Vec<usize>> {
    fn go(p: usize, d: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p + 1 {
            if cur[p] == d {
                out.push(cur.clone());
            }
            return;
        }
        let last = cur[cur.len() - 1];
        let left = p + 1 - cur.len();
        for v in [last, last + 1] {
            if v <= d && d - v < left {
                cur.push(v);
                go(p, d, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    if d <= p {
        go(p, d, &mut vec![0], &mut out);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinSimplicialSet {
    name: String,
    counts: Vec<usize>,
    /// `faces[d][x][i]` is `d_i` of the `x`-th nondegenerate `d`-simplex;
    /// `faces[0]` holds empty lists.
    faces: Vec<Vec<Vec<Simplex>>>,
}

impl FinSimplicialSet {
    pub fn new(name: impl Into<String>, counts: Vec<usize>, faces: Vec<Vec<Vec<Simplex>>>) -> Result<Self> {
        let x = FinSimplicialSet { name: name.into(), counts, faces };
        x.validate()?;
        Ok(x)
    }

    fn validate(&self) -> Result<()> {
        if self.faces.len() != self.counts.len() {
            return invalid("one face table per dimension");
        }
        for (d, table) in self.faces.iter().enumerate() {
            if table.len() != self.counts[d] {
                return invalid(format!("dimension {d}: {} face lists for {} simplices", table.len(), self.counts[d]));
            }
            for (x, faces) in table.iter().enumerate() {
                let expected = if d == 0 { 0 } else { d + 1 };
                if faces.len() != expected {
                    return invalid(format!("simplex ({d},{x}) has {} faces", faces.len()));
                }
                for y in faces {
                    if y.degree() != d as isize - 1
                        || y.base_dim >= self.counts.len()
                        || y.base >= self.counts[y.base_dim]
                        || !is_monotone_onto(&y.surj, y.base_dim)
                    {
                        return invalid(format!("bad face {y:?} of ({d},{x})"));
                    }
                }
            }
        }
        for d in 2..self.counts.len() {
            for x in 0..self.counts[d] {
                let s = Simplex::nondegenerate(d, x);
                for j in 1..=d {
                    for i in 0..j {
                        let a = self.face(&self.face(&s, j)?, i)?;
                        let b = self.face(&self.face(&s, i)?, j - 1)?;
                        if a != b {
                            return invalid(format!("d_{i} d_{j} != d_{} d_{i} on ({d},{x})", j - 1));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The simplicial set of a simplicial complex on ordered vertices,
    /// given by its facets as vertex lists.
    pub fn from_complex(name: impl Into<String>, facets: &[Vec<usize>]) -> Result<Self> {
        let mut all: Vec<Vec<usize>> = Vec::new();
        for facet in facets {
            let mut f = facet.clone();
            f.sort_unstable();
            f.dedup();
            if f.is_empty() || f.len() > 20 {
                return invalid("facets must be nonempty and small");
            }
            for mask in 1u32..(1 << f.len()) {
                all.push((0..f.len()).filter(|b| mask >> b & 1 == 1).map(|b| f[b]).collect());
            }
        }
        all.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        all.dedup();
        let top = all.last().map_or(0, |s| s.len());
        let mut by_dim: Vec<Vec<Vec<usize>>> = vec![Vec::new(); top];
        for s in all {
            by_dim[s.len() - 1].push(s);
        }
        let index: Vec<BTreeMap<Vec<usize>, usize>> =
            by_dim.iter().map(|l| l.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect()).collect();
        let faces = by_dim
            .iter()
            .enumerate()
            .map(|(d, list)| {
                list.iter()
                    .map(|s| {
                        if d == 0 {
                            return Vec::new();
                        }
                        (0..=d)
                            .map(|i| {
                                let mut t = s.clone();
                                t.remove(i);
                                Simplex::nondegenerate(d - 1, index[d - 1][&t])
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let counts = by_dim.iter().map(Vec::len).collect();
        FinSimplicialSet::new(name, counts, faces)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Top dimension of a nondegenerate simplex.
    pub fn dim(&self) -> usize {
        self.counts.len().saturating_sub(1)
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn count(&self, d: usize) -> usize {
        self.counts.get(d).copied().unwrap_or(0)
    }

    fn check(&self, s: &Simplex) -> Result<()> {
        if s.is_empty()
            || (s.base_dim < self.counts.len()
                && s.base < self.counts[s.base_dim]
                && is_monotone_onto(&s.surj, s.base_dim))
        {
            Ok(())
        } else {
            invalid(format!("{s:?} is not a simplex of {}", self.name))
        }
    }

    /// `g^* σ` for a monotone map `g: [m] -> [deg σ]`, in normal form.
    pub fn pullback(&self, s: &Simplex, g: &[usize]) -> Result<Simplex> {
        self.check(s)?;
        if !is_monotone_into(g, s.surj.len()) {
            return invalid(format!("{g:?} is not a monotone map into [{}]", s.degree()));
        }
        if g.is_empty() {
            return Ok(Simplex::empty());
        }
        let mut map: Vec<usize> = g.iter().map(|&a| s.surj[a]).collect();
        let (mut dim, mut base) = (s.base_dim, s.base);
        loop {
            let mut hit = vec![false; dim + 1];
            for &v in &map {
                hit[v] = true;
            }
            let Some(j) = (0..=dim).rev().find(|&j| !hit[j]) else {
                return Ok(Simplex { base_dim: dim, base, surj: map });
            };
            let face = &self.faces[dim][base][j];
            for v in map.iter_mut() {
                *v = face.surj[if *v > j { *v - 1 } else { *v }];
            }
            dim = face.base_dim;
            base = face.base;
        }
    }

    pub fn face(&self, s: &Simplex, i: usize) -> Result<Simplex> {
        let p = s.surj.len();
        if i >= p {
            return invalid(format!("face {i} of a simplex of degree {}", s.degree()));
        }
        let g: Vec<usize> = (0..p).filter(|&a| a != i).collect();
        self.pullback(s, &g)
    }

    pub fn degeneracy(&self, s: &Simplex, i: usize) -> Result<Simplex> {
        self.check(s)?;
        if i >= s.surj.len() {
            return invalid(format!("degeneracy {i} of a simplex of degree {}", s.degree()));
        }
        let mut surj = s.surj.clone();
        surj.insert(i, surj[i]);
        Ok(Simplex { surj, ..s.clone() })
    }

    /// Restriction of `σ` to the face spanned by the vertices in `u`.
    pub fn restrict(&self, s: &Simplex, u: &[usize]) -> Result<Simplex> {
        if u.is_empty() {
            return invalid("restriction to an empty set of vertices");
        }
        if u.windows(2).any(|w| w[0] >= w[1]) {
            return invalid("vertex subset must be strictly increasing");
        }
        self.pullback(s, u)
    }

    /// All simplices of degree `p`, degenerate ones included, sorted. Degree
    /// `-1` gives the empty simplex.
    pub fn simplices(&self, p: isize) -> Vec<Simplex> {
        if p < 0 {
            return vec![Simplex::empty()];
        }
        let p = p as usize;
        let mut out = Vec::new();
        for d in 0..=p.min(self.dim()) {
            let surs = surjections(p, d);
            for base in 0..self.count(d) {
                for s in &surs {
                    out.push(Simplex { base_dim: d, base, surj: s.clone() });
                }
            }
        }
        if self.counts.is_empty() {
            out.clear();
        }
        out.sort();
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serialisable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let x: FinSimplicialSet = serde_json::from_str(text).map_err(Error::from)?;
        x.validate()?;
        Ok(x)
    }
}

/// Normalised chains: nondegenerate simplices, degenerate faces dropped.
impl ToChainComplex for FinSimplicialSet {
    fn chain_complex(&self) -> ChainComplex {
        let generators = self.counts.clone();
        let mut boundaries = Vec::new();
        for d in 1..self.counts.len() {
            let cols = (0..self.counts[d])
                .map(|x| {
                    self.faces[d][x]
                        .iter()
                        .enumerate()
                        .filter(|(_, y)| !y.is_degenerate())
                        .map(|(i, y)| (y.base as u32, if i % 2 == 0 { 1 } else { -1 }))
                        .collect()
                })
                .collect();
            boundaries.push(BoundaryMatrix::from_columns(self.counts[d - 1], cols));
        }
        ChainComplex::new(generators, boundaries).expect("faces of a simplicial set give a complex")
    }
}

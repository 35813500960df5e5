//! Label maps `f: [m] -> {1..k}`, diagrams `(f, h)`, complexity and the
//! pairwise invariant of a label map.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::perm::Permutation;

/// A map `f: [m] -> {1,..,k}` stored as its value sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabelMap {
    k: usize,
    values: Vec<usize>,
}

impl LabelMap {
    pub fn new(k: usize, values: Vec<usize>) -> Result<Self> {
        if let Some(v) = values.iter().find(|&&v| v == 0 || v > k) {
            return invalid(format!("label {v} outside 1..={k}"));
        }
        Ok(LabelMap { k, values })
    }

    pub(crate) fn new_unchecked(k: usize, values: Vec<usize>) -> Self {
        debug_assert!(values.iter().all(|&v| v >= 1 && v <= k));
        LabelMap { k, values }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, pos: usize) -> usize {
        self.values[pos]
    }

    /// Positions carrying label `i`, in increasing order.
    pub fn fiber(&self, i: usize) -> Vec<usize> {
        self.values.iter().enumerate().filter(|&(_, &v)| v == i).map(|(p, _)| p).collect()
    }

    pub fn fiber_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k];
        for &v in &self.values {
            sizes[v - 1] += 1;
        }
        sizes
    }

    pub fn is_surjective(&self) -> bool {
        self.fiber_sizes().iter().all(|&c| c > 0)
    }

    /// `σ⁻¹ ∘ f`.
    pub fn relabel_by_inverse(&self, sigma: &Permutation) -> LabelMap {
        assert_eq!(sigma.len(), self.k, "permutation arity");
        let inv = sigma.inverse();
        LabelMap::new_unchecked(self.k, self.values.iter().map(|&v| inv.apply(v)).collect())
    }

    /// The map `[m] -> {1..k}` viewed with a larger codomain.
    pub fn with_arity(&self, k: usize) -> Result<LabelMap> {
        LabelMap::new(k, self.values.clone())
    }
}

/// Complexity of `values` restricted to the two labels `a`, `b`: the number
/// of maximal constant blocks of the subsequence minus one, and 0 when the
/// subsequence is empty.
pub fn pair_complexity(values: &[usize], a: usize, b: usize) -> usize {
    let mut blocks = 0usize;
    let mut last = 0usize;
    for &v in values {
        if (v == a || v == b) && v != last {
            blocks += 1;
            last = v;
        }
    }
    blocks.saturating_sub(1)
}

pub fn complexity(f: &LabelMap) -> usize {
    if f.k <= 1 {
        return 0;
    }
    let mut best = 0;
    for a in 1..=f.k {
        for b in a + 1..=f.k {
            best = best.max(pair_complexity(&f.values, a, b));
        }
    }
    best
}

/// Index of the pair `{i, j}` (`1 <= i < j <= k`) in lexicographic pair order.
pub fn pair_index(k: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    debug_assert!(1 <= i && j <= k && i < j);
    // pairs (1,2)..(1,k), (2,3).. ; rows before i contribute (k-1)+...+(k-i+1)
    (i - 1) * (2 * k - i) / 2 + (j - i - 1)
}

pub fn pair_count(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}

/// All pairs `(i, j)` with `i < j` in lexicographic order.
pub fn pairs(k: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=k).flat_map(move |i| (i + 1..=k).map(move |j| (i, j)))
}

/// A pair-indexed bound together with a total order of `{1..k}`.
///
/// `b[pair_index(k, i, j)]` is the bound on `{i, j}`; `t` lists the labels
/// from smallest to largest.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BergerInvariant {
    pub k: usize,
    pub b: Vec<usize>,
    pub t: Vec<usize>,
}

impl BergerInvariant {
    pub fn new(k: usize, b: Vec<usize>, t: Vec<usize>) -> Result<Self> {
        if b.len() != pair_count(k) {
            return invalid(format!("expected {} pair values, got {}", pair_count(k), b.len()));
        }
        Permutation::new(t.clone())?;
        if t.len() != k {
            return invalid("order has the wrong length");
        }
        Ok(BergerInvariant { k, b, t })
    }

    pub fn bound(&self, i: usize, j: usize) -> usize {
        self.b[pair_index(self.k, i, j)]
    }

    /// `rank[i - 1]` is the position of label `i` in the order.
    pub fn ranks(&self) -> Vec<usize> {
        let mut r = vec![0; self.k];
        for (pos, &l) in self.t.iter().enumerate() {
            r[l - 1] = pos;
        }
        r
    }

    /// `self <= other`: pointwise bounds, strict on pairs ordered differently.
    pub fn le(&self, other: &BergerInvariant) -> Result<bool> {
        if self.k != other.k {
            return Err(Error::Arity(format!("{} vs {}", self.k, other.k)));
        }
        let (ra, rb) = (self.ranks(), other.ranks());
        for (i, j) in pairs(self.k) {
            let idx = pair_index(self.k, i, j);
            let (x, y) = (self.b[idx], other.b[idx]);
            let same = (ra[i - 1] < ra[j - 1]) == (rb[i - 1] < rb[j - 1]);
            if x > y || (!same && x == y) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn berger_invariant(f: &LabelMap) -> Result<BergerInvariant> {
    if !f.is_surjective() {
        return Err(Error::NotSurjective(f.k));
    }
    let b = pairs(f.k).map(|(i, j)| pair_complexity(&f.values, i, j) - 1).collect();
    let mut t = Vec::with_capacity(f.k);
    for &v in &f.values {
        if !t.contains(&v) {
            t.push(v);
        }
    }
    Ok(BergerInvariant { k: f.k, b, t })
}

/// A label map `f` and an ordered map `h: [m] -> [s]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagram {
    f: LabelMap,
    h: Vec<usize>,
    s: usize,
}

impl Diagram {
    pub fn new(f: LabelMap, h: Vec<usize>, s: usize) -> Result<Self> {
        if f.len() != h.len() {
            return invalid(format!("f has length {} but h has length {}", f.len(), h.len()));
        }
        if h.windows(2).any(|w| w[0] > w[1]) {
            return invalid(format!("h = {h:?} is not weakly increasing"));
        }
        if h.iter().any(|&x| x > s) {
            return invalid(format!("h = {h:?} leaves [0, {s}]"));
        }
        Ok(Diagram { f, h, s })
    }

    pub fn from_parts(k: usize, f: Vec<usize>, h: Vec<usize>, s: usize) -> Result<Self> {
        Diagram::new(LabelMap::new(k, f)?, h, s)
    }

    /// The diagram with constant `h` into `[0]`.
    pub fn constant(f: LabelMap) -> Self {
        let h = vec![0; f.len()];
        Diagram { f, h, s: 0 }
    }

    pub fn f(&self) -> &LabelMap {
        &self.f
    }

    pub fn h(&self) -> &[usize] {
        &self.h
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn k(&self) -> usize {
        self.f.k
    }

    pub fn len(&self) -> usize {
        self.f.len()
    }

    pub fn is_empty(&self) -> bool {
        self.f.is_empty()
    }

    /// Dimension `m + 1 - k` of the cell indexed by this diagram.
    pub fn cell_dim(&self) -> isize {
        self.len() as isize - self.k() as isize
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.f.is_surjective()
            && (0..self.len().saturating_sub(1))
                .all(|j| self.f.values[j] != self.f.values[j + 1] || self.h[j] != self.h[j + 1])
    }

    pub fn delete_position(&self, j: usize) -> Result<Diagram> {
        if j >= self.len() {
            return invalid(format!("position {j} outside a diagram of length {}", self.len()));
        }
        let mut f = self.f.values.clone();
        let mut h = self.h.clone();
        f.remove(j);
        h.remove(j);
        Ok(Diagram { f: LabelMap::new_unchecked(self.f.k, f), h, s: self.s })
    }

    pub fn merge_adjacent(&self, j: usize) -> Result<Diagram> {
        if j + 1 >= self.len() {
            return invalid(format!("no adjacent pair at {j} in a diagram of length {}", self.len()));
        }
        if self.f.values[j] != self.f.values[j + 1] || self.h[j] != self.h[j + 1] {
            return invalid(format!("positions {j} and {} differ in f or h", j + 1));
        }
        self.delete_position(j + 1)
    }

    /// `(σ⁻¹ ∘ f, h)`.
    pub fn relabel_by_inverse(&self, sigma: &Permutation) -> Diagram {
        Diagram { f: self.f.relabel_by_inverse(sigma), h: self.h.clone(), s: self.s }
    }
}

#[derive(Serialize, Deserialize)]
struct DiagramJson {
    k: usize,
    f: Vec<usize>,
    h: Vec<usize>,
    s: usize,
}

impl Serialize for Diagram {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        DiagramJson { k: self.k(), f: self.f.values.clone(), h: self.h.clone(), s: self.s }.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Diagram {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let j = DiagramJson::deserialize(de)?;
        Diagram::from_parts(j.k, j.f, j.h, j.s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lm(k: usize, v: &[usize]) -> LabelMap {
        LabelMap::new(k, v.to_vec()).unwrap()
    }

    fn dg(k: usize, f: &[usize], h: &[usize]) -> Diagram {
        Diagram::from_parts(k, f.to_vec(), h.to_vec(), h.iter().copied().max().unwrap_or(0)).unwrap()
    }

    #[test]
    fn complexity_examples() {
        assert_eq!(complexity(&lm(1, &[1])), 0);
        assert_eq!(complexity(&lm(2, &[1, 2, 1])), 2);
        assert_eq!(complexity(&lm(2, &[1, 1, 2, 2])), 1);
        assert_eq!(complexity(&lm(3, &[1, 2, 3, 1])), 2);
        assert_eq!(complexity(&lm(2, &[])), 0);
        assert_eq!(complexity(&lm(2, &[2, 2])), 0);
        assert_eq!(complexity(&lm(0, &[])), 0);
    }

    #[test]
    fn pair_index_is_lexicographic() {
        for k in 0..7 {
            let idx: Vec<_> = pairs(k).map(|(i, j)| pair_index(k, i, j)).collect();
            assert_eq!(idx, (0..pair_count(k)).collect::<Vec<_>>());
        }
    }

    #[test]
    fn invariant_examples() {
        let x = berger_invariant(&lm(2, &[1, 2])).unwrap();
        assert_eq!((x.b.clone(), x.t.clone()), (vec![0], vec![1, 2]));
        let x = berger_invariant(&lm(2, &[2, 1, 2])).unwrap();
        assert_eq!((x.b.clone(), x.t.clone()), (vec![1], vec![2, 1]));
        let x = berger_invariant(&lm(3, &[1, 2, 1, 3])).unwrap();
        assert_eq!(x.bound(1, 2), 1);
        assert_eq!(x.bound(1, 3), 0);
        assert_eq!(x.bound(2, 3), 0);
        assert_eq!(x.t, vec![1, 2, 3]);
        assert_eq!(berger_invariant(&lm(2, &[1, 1])), Err(Error::NotSurjective(2)));
    }

    #[test]
    fn nondegeneracy_examples() {
        assert!(dg(2, &[1, 2], &[0, 0]).is_nondegenerate());
        assert!(!dg(1, &[1, 1], &[0, 0]).is_nondegenerate());
        assert!(dg(1, &[1, 1], &[0, 1]).is_nondegenerate());
        assert!(!dg(2, &[1, 1], &[0, 0]).is_nondegenerate());
        assert!(Diagram::from_parts(0, vec![], vec![], 0).unwrap().is_nondegenerate());
    }

    #[test]
    fn delete_and_merge_examples() {
        assert_eq!(dg(2, &[1, 2, 1], &[0, 0, 0]).delete_position(1).unwrap(), dg(2, &[1, 1], &[0, 0]));
        let d = Diagram::from_parts(2, vec![1, 2], vec![0, 1], 1).unwrap();
        assert_eq!(d.delete_position(0).unwrap(), Diagram::from_parts(2, vec![2], vec![1], 1).unwrap());
        let e = dg(1, &[1], &[0]).delete_position(0).unwrap();
        assert!(e.is_empty());
        assert!(dg(1, &[1], &[0]).delete_position(1).is_err());
        assert_eq!(dg(2, &[1, 1, 2], &[0, 0, 0]).merge_adjacent(0).unwrap(), dg(2, &[1, 2], &[0, 0]));
        assert_eq!(dg(2, &[1, 2, 2], &[0, 1, 1]).merge_adjacent(1).unwrap(), dg(2, &[1, 2], &[0, 1]));
        assert!(dg(2, &[1, 2], &[0, 0]).merge_adjacent(0).is_err());
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(LabelMap::new(2, vec![3]).is_err());
        assert!(LabelMap::new(2, vec![0]).is_err());
        assert!(Diagram::from_parts(1, vec![1, 1], vec![1, 0], 1).is_err());
        assert!(Diagram::from_parts(1, vec![1], vec![2], 1).is_err());
        assert!(Diagram::from_parts(1, vec![1], vec![], 1).is_err());
    }

    #[test]
    fn diagram_json_round_trip() {
        let d = Diagram::from_parts(2, vec![1, 2, 1], vec![0, 1, 1], 2).unwrap();
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(s, r#"{"k":2,"f":[1,2,1],"h":[0,1,1],"s":2}"#);
        assert_eq!(serde_json::from_str::<Diagram>(&s).unwrap(), d);
        assert!(serde_json::from_str::<Diagram>(r#"{"k":1,"f":[1,1],"h":[1,0],"s":1}"#).is_err());
    }
}

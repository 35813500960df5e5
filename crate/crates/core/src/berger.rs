//! The poset of pairwise bounds and total orders, its operad structure, and
//! the order complex of its finite pieces.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combinat::{berger_invariant, pair_count, pair_index, pairs, BergerInvariant, LabelMap};
use crate::error::{invalid, Error, Result};
use crate::homology::{BoundaryMatrix, ChainComplex, ToChainComplex};
use crate::perm::Permutation;

/// An element `(b, t)` of the arity-`k` piece, tagged with the bound `n`
/// (`b < n` on every pair).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BergerElem {
    pub n: usize,
    pub inv: BergerInvariant,
}

impl BergerElem {
    pub fn new(n: usize, k: usize, b: Vec<usize>, t: Vec<usize>) -> Result<Self> {
        let inv = BergerInvariant::new(k, b, t)?;
        if let Some(&x) = inv.b.iter().find(|&&x| x >= n) {
            return invalid(format!("pair bound {x} is not below n = {n}"));
        }
        Ok(BergerElem { n, inv })
    }

    pub fn k(&self) -> usize {
        self.inv.k
    }

    pub fn bound(&self, i: usize, j: usize) -> usize {
        self.inv.bound(i, j)
    }

    pub fn order(&self) -> &[usize] {
        &self.inv.t
    }
}

pub fn leq(a: &BergerElem, b: &BergerElem) -> Result<bool> {
    a.inv.le(&b.inv)
}

/// All elements with bounds below `n`, lexicographic in the bounds and then
/// in the one-line notation of the order.
pub fn enumerate(n: usize, k: usize) -> Vec<BergerElem> {
    assert!(n >= 1, "n must be positive");
    let p = pair_count(k);
    let perms = Permutation::all(k);
    let total_b = n.pow(p as u32);
    let mut out = Vec::with_capacity(total_b * perms.len());
    let mut b = vec![0usize; p];
    for _ in 0..total_b {
        for t in &perms {
            out.push(BergerElem { n, inv: BergerInvariant { k, b: b.clone(), t: t.images().to_vec() } });
        }
        // increment, last pair fastest
        for x in b.iter_mut().rev() {
            *x += 1;
            if *x < n {
                break;
            }
            *x = 0;
        }
    }
    out
}

/// Right action `(b, T)ρ = (b ∘ ρ₂, Tρ)`: `b'{i,j} = b{ρ(i),ρ(j)}` and
/// `i < j` in `Tρ` iff `ρ(i) < ρ(j)` in `T`.
pub fn sigma_act(x: &BergerElem, rho: &Permutation) -> Result<BergerElem> {
    let k = x.k();
    if rho.len() != k {
        return Err(Error::Arity(format!("permutation of {} acting on arity {k}", rho.len())));
    }
    let b = pairs(k).map(|(i, j)| x.bound(rho.apply(i), rho.apply(j))).collect();
    let inv = rho.inverse();
    let t = x.order().iter().map(|&l| inv.apply(l)).collect();
    Ok(BergerElem { n: x.n, inv: BergerInvariant { k, b, t } })
}

/// Operad composition with block `i` occupying labels
/// `a₁+…+a_{i−1}+1 ..= a₁+…+aᵢ`.
pub fn operad_compose(x: &BergerElem, ys: &[BergerElem]) -> Result<BergerElem> {
    if ys.len() != x.k() {
        return Err(Error::Arity(format!("{} inputs for arity {}", ys.len(), x.k())));
    }
    let mut offsets = Vec::with_capacity(ys.len() + 1);
    offsets.push(0);
    for y in ys {
        offsets.push(offsets.last().unwrap() + y.k());
    }
    let total = *offsets.last().unwrap();
    let mut block = vec![0usize; total + 1];
    for (i, w) in offsets.windows(2).enumerate() {
        for r in w[0] + 1..=w[1] {
            block[r] = i;
        }
    }
    let b = pairs(total)
        .map(|(r, s)| {
            let (bi, bj) = (block[r], block[s]);
            if bi == bj {
                ys[bi].bound(r - offsets[bi], s - offsets[bi])
            } else {
                x.bound(bi + 1, bj + 1)
            }
        })
        .collect();
    let mut t = Vec::with_capacity(total);
    for &l in x.order() {
        let i = l - 1;
        t.extend(ys[i].order().iter().map(|&r| r + offsets[i]));
    }
    let n = ys.iter().map(|y| y.n).chain([x.n]).max().unwrap();
    Ok(BergerElem { n, inv: BergerInvariant { k: total, b, t } })
}

/// `(b_f, T_f) <= x`.
pub fn q_membership(f: &LabelMap, x: &BergerElem) -> Result<bool> {
    berger_invariant(f)?.le(&x.inv)
}

#[derive(Serialize, Deserialize)]
struct BergerJson {
    k: usize,
    n: usize,
    b: BTreeMap<String, usize>,
    t: Vec<usize>,
}

impl Serialize for BergerElem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let b = pairs(self.k()).map(|(i, j)| (format!("{i},{j}"), self.bound(i, j))).collect();
        BergerJson { k: self.k(), n: self.n, b, t: self.inv.t.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for BergerElem {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = BergerJson::deserialize(d)?;
        let mut b = vec![None; pair_count(j.k)];
        for (key, v) in &j.b {
            let parsed = key
                .split_once(',')
                .and_then(|(x, y)| Some((x.trim().parse::<usize>().ok()?, y.trim().parse::<usize>().ok()?)));
            let Some((x, y)) = parsed.filter(|&(x, y)| 1 <= x && x < y && y <= j.k) else {
                return Err(D::Error::custom(format!("bad pair key {key:?}")));
            };
            b[pair_index(j.k, x, y)] = Some(*v);
        }
        let b: Option<Vec<usize>> = b.into_iter().collect();
        let b = b.ok_or_else(|| D::Error::custom("missing pair bounds"))?;
        BergerElem::new(j.n, j.k, b, j.t).map_err(D::Error::custom)
    }
}

/// Strict chains of a finite poset, stored per dimension as flat arrays of
/// vertex indices (bottom to top), sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosetComplex {
    pub vertices: Vec<BergerElem>,
    chains: Vec<Vec<u32>>,
}

impl PosetComplex {
    pub fn dim(&self) -> Option<usize> {
        self.chains.len().checked_sub(1)
    }

    pub fn count(&self, d: usize) -> usize {
        self.chains.get(d).map_or(0, |c| c.len() / (d + 1))
    }

    pub fn counts(&self) -> Vec<usize> {
        (0..self.chains.len()).map(|d| self.count(d)).collect()
    }

    pub fn chain(&self, d: usize, i: usize) -> &[u32] {
        &self.chains[d][i * (d + 1)..(i + 1) * (d + 1)]
    }

    fn find(&self, d: usize, key: &[u32]) -> Option<usize> {
        let (mut lo, mut hi) = (0usize, self.count(d));
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.chain(d, mid).cmp(key) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }
}

struct Ranked {
    b: Vec<usize>,
    rank: Vec<usize>,
}

fn strictly_below(x: &Ranked, y: &Ranked, k: usize) -> bool {
    let mut equal = true;
    for (i, j) in pairs(k) {
        let p = pair_index(k, i, j);
        let same = (x.rank[i - 1] < x.rank[j - 1]) == (y.rank[i - 1] < y.rank[j - 1]);
        if x.b[p] > y.b[p] || (!same && x.b[p] == y.b[p]) {
            return false;
        }
        equal &= same && x.b[p] == y.b[p];
    }
    !equal
}

/// All strict chains of the poset on `elems` (all of one arity).
pub fn order_complex(elems: &[BergerElem]) -> Result<PosetComplex> {
    let Some(first) = elems.first() else {
        return Ok(PosetComplex { vertices: Vec::new(), chains: Vec::new() });
    };
    let k = first.k();
    if elems.iter().any(|e| e.k() != k) {
        return Err(Error::Arity("mixed arities in a poset".into()));
    }
    let ranked: Vec<Ranked> = elems.iter().map(|e| Ranked { b: e.inv.b.clone(), rank: e.inv.ranks() }).collect();
    let up: Vec<Vec<u32>> = (0..elems.len())
        .into_par_iter()
        .map(|a| {
            (0..elems.len())
                .filter(|&b| a != b && strictly_below(&ranked[a], &ranked[b], k))
                .map(|b| b as u32)
                .collect()
        })
        .collect();
    let per_start: Vec<Vec<Vec<u32>>> = (0..elems.len() as u32)
        .into_par_iter()
        .map(|v| {
            let mut out: Vec<Vec<u32>> = Vec::new();
            let mut path = vec![v];
            chains_from(&up, &mut path, &mut out);
            out
        })
        .collect();
    let top = per_start.iter().map(|c| c.len()).max().unwrap_or(0);
    let mut chains: Vec<Vec<u32>> = vec![Vec::new(); top];
    for per in per_start {
        for (d, flat) in per.into_iter().enumerate() {
            chains[d].extend(flat);
        }
    }
    Ok(PosetComplex { vertices: elems.to_vec(), chains })
}

fn chains_from(up: &[Vec<u32>], path: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    let d = path.len() - 1;
    if out.len() <= d {
        out.resize(d + 1, Vec::new());
    }
    out[d].extend_from_slice(path);
    let last = *path.last().unwrap() as usize;
    for &w in &up[last] {
        path.push(w);
        chains_from(up, path, out);
        path.pop();
    }
}

impl ToChainComplex for PosetComplex {
    fn chain_complex(&self) -> ChainComplex {
        let top = self.chains.len();
        let generators: Vec<usize> = (0..top).map(|d| self.count(d)).collect();
        let boundaries = (1..top)
            .map(|d| {
                let cols: Vec<Vec<(u32, i64)>> = (0..self.count(d))
                    .into_par_iter()
                    .map(|c| {
                        let chain = self.chain(d, c);
                        let mut face = Vec::with_capacity(d);
                        (0..=d)
                            .map(|j| {
                                face.clear();
                                face.extend(chain.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, &v)| v));
                                let r = self.find(d - 1, &face).expect("chains are closed under faces");
                                (r as u32, if j % 2 == 0 { 1 } else { -1 })
                            })
                            .collect()
                    })
                    .collect();
                BoundaryMatrix::from_columns(generators[d - 1], cols)
            })
            .collect();
        ChainComplex::new(generators, boundaries).expect("shapes agree by construction")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::homology;

    fn el(n: usize, b: &[usize], t: &[usize]) -> BergerElem {
        BergerElem::new(n, t.len(), b.to_vec(), t.to_vec()).unwrap()
    }

    #[test]
    fn leq_examples() {
        assert!(leq(&el(2, &[0], &[1, 2]), &el(2, &[0], &[1, 2])).unwrap());
        assert!(leq(&el(2, &[0], &[1, 2]), &el(2, &[1], &[2, 1])).unwrap());
        assert!(!leq(&el(2, &[0], &[1, 2]), &el(2, &[0], &[2, 1])).unwrap());
        assert!(leq(&el(2, &[0], &[1, 2]), &el(3, &[0, 0, 0], &[1, 2, 3])).is_err());
    }

    #[test]
    fn enumerate_counts() {
        assert_eq!(enumerate(2, 2).len(), 4);
        let e = enumerate(1, 2);
        assert_eq!(e.len(), 2);
        assert!(!leq(&e[0], &e[1]).unwrap() && !leq(&e[1], &e[0]).unwrap());
        assert_eq!(enumerate(3, 1).len(), 1);
        assert_eq!(enumerate(2, 3).len(), 8 * 6);
        assert_eq!(enumerate(3, 0).len(), 1);
        let e = enumerate(2, 3);
        let mut sorted = e.clone();
        sorted.sort_by(|a, b| (&a.inv.b, &a.inv.t).cmp(&(&b.inv.b, &b.inv.t)));
        assert_eq!(e, sorted);
    }

    #[test]
    fn action_examples() {
        let x = el(2, &[1], &[1, 2]);
        assert_eq!(sigma_act(&x, &Permutation::identity(2)).unwrap(), x);
        let swap = Permutation::new(vec![2, 1]).unwrap();
        assert_eq!(sigma_act(&x, &swap).unwrap(), el(2, &[1], &[2, 1]));
    }

    #[test]
    fn action_matches_relabelled_invariant() {
        // berger_invariant(σ⁻¹ ∘ f) = berger_invariant(f) · σ
        let f = LabelMap::new(3, vec![2, 1, 3, 1, 2]).unwrap();
        let x = BergerElem { n: 5, inv: berger_invariant(&f).unwrap() };
        for s in Permutation::all(3) {
            let lhs = berger_invariant(&f.relabel_by_inverse(&s)).unwrap();
            assert_eq!(lhs, sigma_act(&x, &s).unwrap().inv);
        }
    }

    #[test]
    fn compose_examples() {
        let x = el(2, &[1], &[1, 2]);
        let unit = el(2, &[], &[1]);
        assert_eq!(operad_compose(&x, &[unit.clone(), unit.clone()]).unwrap(), x);
        let y = el(2, &[0, 1, 1], &[3, 1, 2]);
        assert_eq!(operad_compose(&unit, std::slice::from_ref(&y)).unwrap(), y);
        assert!(operad_compose(&x, &[unit]).is_err());
        // cross-block pairs inherit from the outer element
        let z = operad_compose(&el(3, &[2], &[2, 1]), &[el(3, &[1], &[2, 1]), unit1(3)]).unwrap();
        assert_eq!(z.inv.b, vec![1, 2, 2]);
        assert_eq!(z.inv.t, vec![3, 2, 1]);
    }

    fn unit1(n: usize) -> BergerElem {
        el(n, &[], &[1])
    }

    #[test]
    fn membership_examples() {
        let f12 = LabelMap::new(2, vec![1, 2]).unwrap();
        let f21 = LabelMap::new(2, vec![2, 1]).unwrap();
        assert!(q_membership(&f12, &el(1, &[0], &[1, 2])).unwrap());
        assert!(!q_membership(&f21, &el(1, &[0], &[1, 2])).unwrap());
        assert!(q_membership(&f21, &el(2, &[1], &[1, 2])).unwrap());
        assert!(q_membership(&LabelMap::new(2, vec![1]).unwrap(), &el(2, &[1], &[1, 2])).is_err());
    }

    #[test]
    fn small_order_complexes() {
        let c = order_complex(&enumerate(1, 2)).unwrap();
        assert_eq!(c.counts(), vec![2]);
        let c = order_complex(&enumerate(2, 2)).unwrap();
        assert_eq!(c.counts(), vec![4, 4]);
        let h = homology(&c.chain_complex()).unwrap();
        assert_eq!(h.betti, vec![1, 1]);
        let c = order_complex(&enumerate(2, 1)).unwrap();
        assert_eq!(c.counts(), vec![1]);
        let c = order_complex(&enumerate(2, 3)).unwrap();
        assert_eq!(c.counts(), vec![48, 264, 372, 156]);
    }

    #[test]
    fn json_round_trip() {
        let x = el(3, &[0, 2, 1], &[2, 3, 1]);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"k":3,"n":3,"b":{"1,2":0,"1,3":2,"2,3":1},"t":[2,3,1]}"#);
        assert_eq!(serde_json::from_str::<BergerElem>(&s).unwrap(), x);
        assert!(serde_json::from_str::<BergerElem>(r#"{"k":2,"n":1,"b":{"1,2":1},"t":[1,2]}"#).is_err());
    }
}

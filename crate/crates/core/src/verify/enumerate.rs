//! Small exhaustive enumerators shared by the suites.

use crate::combinat::{complexity, Diagram, LabelMap};
use crate::xi::XiSimplex;

/// All weakly increasing sequences of length `len` with values below `bound`.
pub fn monotone_maps(len: usize, bound: usize) -> Vec<Vec<usize>> {
    fn go(len: usize, bound: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        let lo = cur.last().copied().unwrap_or(0);
        for v in lo..bound {
            cur.push(v);
            go(len, bound, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(len, bound, &mut Vec::new(), &mut out);
    out
}

/// All sequences of length `len` with values in `1..=k`.
pub fn sequences(len: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|s| {
                (1..=k).map(move |v| {
                    let mut t = s.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
    }
    out
}

/// All label maps `[len-1] -> {1..k}` of complexity at most `bound` (any
/// complexity when `None`).
pub fn label_maps(len: usize, k: usize, bound: Option<usize>) -> Vec<LabelMap> {
    sequences(len, k)
        .into_iter()
        .map(|v| LabelMap::new(k, v).expect("labels in range"))
        .filter(|f| bound.is_none_or(|n| complexity(f) <= n))
        .collect()
}

/// All tuples of `parts` nonnegative integers summing to `total`.
pub fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    (0..=total)
        .flat_map(|first| {
            compositions(total - first, parts - 1).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

/// All diagrams of arity `k` into `[s]` with `1..=max_len` positions
/// (and the empty diagram when `k = 0`).
pub fn diagrams(k: usize, s: usize, max_len: usize, surjective: bool) -> Vec<Diagram> {
    let mut out = Vec::new();
    for len in 0..=max_len {
        for f in sequences(len, k) {
            let f = LabelMap::new(k, f).expect("labels in range");
            if surjective && !f.is_surjective() {
                continue;
            }
            for h in monotone_maps(len, s + 1) {
                out.push(Diagram::new(f.clone(), h, s).expect("monotone"));
            }
        }
    }
    out
}

/// All `ℓ`-simplices on the given diagram (every choice of coordinate maps).
pub fn simplices_on(d: &Diagram, ell: usize) -> Vec<XiSimplex> {
    let fibers: Vec<Vec<usize>> = (1..=d.k()).map(|i| d.f().fiber(i)).collect();
    let mut tuples: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
    for fib in &fibers {
        let maps = monotone_maps(ell + 1, fib.len());
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                maps.iter().map(move |m| {
                    let mut t = t.clone();
                    t.push(m.iter().map(|&a| fib[a]).collect());
                    t
                })
            })
            .collect();
    }
    tuples.into_iter().map(|sigmas| XiSimplex { ell, diagram: d.clone(), sigmas }).collect()
}

/// All raw `ℓ`-simplices of arity `k` into `[s]` with at most `max_len` positions.
pub fn raw_simplices(k: usize, s: usize, ell: usize, max_len: usize) -> Vec<XiSimplex> {
    diagrams(k, s, max_len, true).iter().flat_map(|d| simplices_on(d, ell)).collect()
}

/// The normal ones among [`raw_simplices`].
pub fn normal_simplices(k: usize, s: usize, ell: usize, max_len: usize) -> Vec<XiSimplex> {
    raw_simplices(k, s, ell, max_len).into_iter().filter(XiSimplex::is_normal).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(monotone_maps(2, 3).len(), 6);
        assert_eq!(monotone_maps(0, 0).len(), 1);
        assert_eq!(sequences(3, 2).len(), 8);
        assert_eq!(compositions(2, 2), vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(compositions(0, 0), vec![Vec::<usize>::new()]);
        assert_eq!(diagrams(0, 1, 3, true).len(), 1);
        // normal 0-simplices of arity 1 into [0]: the single vertex
        assert_eq!(normal_simplices(1, 0, 0, 3).len(), 1);
    }
}

//! Invariant factors of a sparse integer matrix.
//!
//! Unit pivots are eliminated first with a Markowitz-style choice of pivot
//! row; whatever is left has no unit entries and goes through the dense
//! Smith normal form.

use super::snf::{try_dense_invariant_factors, DenseMatrix};
use crate::scalar::IntegerScalar;

/// `dst - q * src` for sorted sparse columns.
fn axpy<T: IntegerScalar>(dst: &[(u32, T)], q: &T, src: &[(u32, T)]) -> Option<Vec<(u32, T)>> {
    let mut out = Vec::with_capacity(dst.len() + src.len());
    let (mut a, mut b) = (0, 0);
    while a < dst.len() || b < src.len() {
        let ra = dst.get(a).map_or(u32::MAX, |e| e.0);
        let rb = src.get(b).map_or(u32::MAX, |e| e.0);
        if ra < rb {
            out.push(dst[a].clone());
            a += 1;
        } else if rb < ra {
            out.push((rb, -(q.checked_mul(&src[b].1)?)));
            b += 1;
        } else {
            let v = dst[a].1.checked_sub(&q.checked_mul(&src[b].1)?)?;
            if !v.is_zero() {
                out.push((ra, v));
            }
            a += 1;
            b += 1;
        }
    }
    Some(out)
}

fn entry<T>(col: &[(u32, T)], row: u32) -> Option<&T> {
    col.binary_search_by_key(&row, |e| e.0).ok().map(|i| &col[i].1)
}

/// Nonzero invariant factors (with multiplicity, ones included) of the matrix
/// whose columns are given as sorted `(row, value)` lists.
pub fn try_invariant_factors<T: IntegerScalar>(rows: usize, columns: &[Vec<(u32, i64)>]) -> Option<Vec<T>> {
    let mut cols: Vec<Vec<(u32, T)>> =
        columns.iter().map(|c| c.iter().map(|&(r, v)| (r, T::from_i64(v).unwrap())).collect()).collect();
    let mut row_cols: Vec<Vec<u32>> = vec![Vec::new(); rows];
    for (j, c) in cols.iter().enumerate() {
        for &(r, _) in c {
            row_cols[r as usize].push(j as u32);
        }
    }
    let mut col_alive = vec![true; cols.len()];
    let mut units = 0usize;
    loop {
        let mut order: Vec<usize> = (0..cols.len()).filter(|&j| col_alive[j] && !cols[j].is_empty()).collect();
        order.sort_by_key(|&j| (cols[j].len(), j));
        let mut progress = false;
        for j in order {
            if !col_alive[j] || cols[j].is_empty() {
                continue;
            }
            let pivot = cols[j]
                .iter()
                .filter(|e| e.1.abs().is_one())
                .min_by_key(|e| (row_cols[e.0 as usize].len(), e.0))
                .map(|e| (e.0, e.1.clone()));
            let Some((i, u)) = pivot else { continue };
            let pivot_col = std::mem::take(&mut cols[j]);
            let mut others = std::mem::take(&mut row_cols[i as usize]);
            others.sort_unstable();
            others.dedup();
            for &j2 in &others {
                let j2 = j2 as usize;
                if j2 == j || !col_alive[j2] {
                    continue;
                }
                let Some(a) = entry(&cols[j2], i) else { continue };
                // u is ±1, so u⁻¹ = u
                let q = a.checked_mul(&u)?;
                let new = axpy(&cols[j2], &q, &pivot_col)?;
                for &(r, _) in &new {
                    if entry(&cols[j2], r).is_none() {
                        row_cols[r as usize].push(j2 as u32);
                    }
                }
                cols[j2] = new;
            }
            col_alive[j] = false;
            units += 1;
            progress = true;
        }
        if !progress {
            break;
        }
    }
    // dense remainder: columns still alive, rows still referenced
    let rest: Vec<usize> = (0..cols.len()).filter(|&j| col_alive[j] && !cols[j].is_empty()).collect();
    let mut row_ids: Vec<u32> = rest.iter().flat_map(|&j| cols[j].iter().map(|e| e.0)).collect();
    row_ids.sort_unstable();
    row_ids.dedup();
    let mut factors: Vec<T> = vec![T::one(); units];
    if !rest.is_empty() {
        let mut dense = DenseMatrix::<T>::zeros(row_ids.len(), rest.len());
        for (cj, &j) in rest.iter().enumerate() {
            for (r, v) in &cols[j] {
                let ri = row_ids.binary_search(r).unwrap();
                dense.set(ri, cj, v.clone());
            }
        }
        factors.extend(try_dense_invariant_factors(&dense)?);
    }
    factors.sort();
    Some(factors)
}

/// Invariant factors over machine integers, repeated over [`crate::Int`]
/// when an intermediate value overflows.
pub fn invariant_factors(rows: usize, columns: &[Vec<(u32, i64)>]) -> Vec<crate::Int> {
    match try_invariant_factors::<i64>(rows, columns) {
        Some(f) => f.into_iter().map(crate::Int::from).collect(),
        None => try_invariant_factors::<crate::Int>(rows, columns).expect("arbitrary precision"),
    }
}

/// Rank over the prime field `Z/p`, for cross-checks.
pub fn rank_mod_p(rows: usize, columns: &[Vec<(u32, i64)>], p: u64) -> usize {
    let pi = p as i128;
    let norm = |v: i128| ((v % pi) + pi) % pi;
    let inv = |a: i128| {
        // Fermat inverse
        let (mut base, mut e, mut acc) = (a, pi - 2, 1i128);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % pi;
            }
            base = base * base % pi;
            e >>= 1;
        }
        acc
    };
    let mut pivot_of_row: Vec<Option<Vec<(u32, i128)>>> = vec![None; rows];
    let mut rank = 0;
    for c in columns {
        let mut col: Vec<(u32, i128)> = c.iter().map(|&(r, v)| (r, norm(v as i128))).filter(|e| e.1 != 0).collect();
        while let Some(&(r, v)) = col.last() {
            match &pivot_of_row[r as usize] {
                Some(pc) => {
                    // pc has leading (largest) row r with value 1
                    let mut out = Vec::with_capacity(col.len() + pc.len());
                    let (mut a, mut b) = (0, 0);
                    while a < col.len() || b < pc.len() {
                        let ra = col.get(a).map_or(u32::MAX, |e| e.0);
                        let rb = pc.get(b).map_or(u32::MAX, |e| e.0);
                        if ra < rb {
                            out.push(col[a]);
                            a += 1;
                        } else if rb < ra {
                            out.push((rb, norm(-v * pc[b].1)));
                            b += 1;
                        } else {
                            let x = norm(col[a].1 - v * pc[b].1);
                            if x != 0 {
                                out.push((ra, x));
                            }
                            a += 1;
                            b += 1;
                        }
                    }
                    col = out;
                }
                None => {
                    let iv = inv(v);
                    let scaled = col.iter().map(|&(r2, x)| (r2, x * iv % pi)).collect();
                    pivot_of_row[r as usize] = Some(scaled);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::snf::smith_normal_form;
    use crate::Int;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_sparse(rng: &mut ChaCha8Rng) -> (usize, Vec<Vec<(u32, i64)>>) {
        let rows = rng.gen_range(0..9);
        let ncols = rng.gen_range(0..9);
        let cols = (0..ncols)
            .map(|_| {
                (0..rows as u32)
                    .filter_map(|r| {
                        if rng.gen_bool(0.35) {
                            let v = rng.gen_range(-3..=3);
                            (v != 0).then_some((r, v))
                        } else {
                            None
                        }
                    })
                    .collect()
            })
            .collect();
        (rows, cols)
    }

    #[test]
    fn agrees_with_dense_snf() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..500 {
            let (rows, cols) = random_sparse(&mut rng);
            let mut dense = DenseMatrix::<Int>::zeros(rows, cols.len());
            for (j, c) in cols.iter().enumerate() {
                for &(r, v) in c {
                    dense.set(r as usize, j, Int::from(v));
                }
            }
            let expected = smith_normal_form(&dense).invariant_factors();
            assert_eq!(invariant_factors(rows, &cols), expected);
            let big = try_invariant_factors::<Int>(rows, &cols).unwrap();
            assert_eq!(big, expected);
            assert!(rank_mod_p(rows, &cols, 1_000_003) <= expected.len());
            assert_eq!(rank_mod_p(rows, &cols, 1_000_003), expected.len());
        }
    }

    #[test]
    fn mod_two_rank_sees_torsion() {
        // [[2]] has rank 1 over Q and rank 0 over Z/2
        let cols = vec![vec![(0u32, 2i64)]];
        assert_eq!(rank_mod_p(1, &cols, 2), 0);
        assert_eq!(invariant_factors(1, &cols), vec![Int::from(2)]);
    }
}

//! Normal forms against an independent oracle: the equivalence relation
//! generated by deleting unhit positions and merging equal neighbours,
//! computed by union-find over all small raw simplices.

use std::collections::HashMap;

use rand::seq::SliceRandom;

use super::enumerate::raw_simplices;
use super::{expect_eq, ok, run_cases, run_random, CheckResult, SuiteOptions};
use crate::error::Result;
use crate::homology::ToChainComplex;
use crate::xi::{build_model, reduce_simplex, XiSimplex};

/// Raw simplices one elementary move away from `x`.
fn moves(x: &XiSimplex) -> Vec<XiSimplex> {
    let d = &x.diagram;
    let mut hit = vec![false; d.len()];
    for s in &x.sigmas {
        for &p in s {
            hit[p] = true;
        }
    }
    let shift = |p: usize, j: usize| if p > j { p - 1 } else { p };
    let mut out = Vec::new();
    for j in 0..d.len() {
        if !hit[j] {
            let diagram = d.delete_position(j).expect("in range");
            let sigmas = x.sigmas.iter().map(|s| s.iter().map(|&p| shift(p, j)).collect()).collect();
            out.push(XiSimplex { ell: x.ell, diagram, sigmas });
        }
        if let Ok(diagram) = d.merge_adjacent(j) {
            let sigmas = x.sigmas.iter().map(|s| s.iter().map(|&p| shift(p, j)).collect()).collect();
            out.push(XiSimplex { ell: x.ell, diagram, sigmas });
        }
    }
    out
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

pub fn run(opts: &SuiteOptions) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let k_max = opts.k.unwrap_or(2);
    let raw: Vec<XiSimplex> = (1..=k_max)
        .flat_map(|k| (0..=1).flat_map(move |s| (0..=2).flat_map(move |ell| raw_simplices(k, s, ell, 5))))
        .collect();
    let index: HashMap<&XiSimplex, usize> = raw.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let mut parent: Vec<usize> = (0..raw.len()).collect();
    for (i, x) in raw.iter().enumerate() {
        for y in moves(x) {
            let j = index[&y];
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            parent[a] = b;
        }
    }
    let roots: Vec<usize> = (0..raw.len()).map(|i| find(&mut parent, i)).collect();
    let mut normal_of_class: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, x) in raw.iter().enumerate() {
        if x.is_normal() {
            normal_of_class.entry(roots[i]).or_default().push(i);
        }
    }
    let cases: Vec<usize> = (0..raw.len()).collect();
    out.push(run_cases("normal-form-classes", &cases, |_, &i| {
        let reps = normal_of_class.get(&roots[i]).map(Vec::as_slice).unwrap_or(&[]);
        if reps.len() != 1 {
            return Err(format!("{:?} has {} normal representatives", raw[i], reps.len()));
        }
        expect_eq(&format!("{:?}", raw[i]), reduce_simplex(&raw[i]), raw[reps[0]].clone())
    }));

    let cases = opts.cases.unwrap_or(2000);
    let seed = opts.seed;
    out.push(run_random("normal-form-confluence", seed, cases, |rng| {
        let x = raw.choose(rng).expect("nonempty").clone();
        let mut cur = x.clone();
        loop {
            let next = moves(&cur);
            match next.choose(rng) {
                Some(y) => cur = y.clone(),
                None => break,
            }
        }
        expect_eq(&format!("{x:?}"), cur, reduce_simplex(&x))
    }));

    // simplicial identities on normal forms
    let normal: Vec<&XiSimplex> = raw.iter().filter(|x| x.is_normal() && x.ell >= 1).collect();
    out.push(run_cases("simplicial-identities", &normal, |_, x| {
        let l = x.ell;
        for j in 0..=l {
            for i in 0..j {
                if l >= 2 {
                    expect_eq(&format!("d{i} d{j}"), x.face(j).face(i), x.face(i).face(j - 1))?;
                }
            }
            for i in 0..=l + 1 {
                let sd = x.degeneracy(j).face(i);
                let want = if i < j {
                    x.face(i).degeneracy(j - 1)
                } else if i == j || i == j + 1 {
                    (*x).clone()
                } else {
                    x.face(i - 1).degeneracy(j)
                };
                expect_eq(&format!("d{i} s{j}"), reduce_simplex(&sd), reduce_simplex(&want))?;
            }
        }
        Ok(())
    }));

    // face tables of small models
    let models: Vec<(usize, usize, usize)> = vec![(1, 2, 0), (2, 2, 0), (2, 2, 1), (2, 3, 0), (3, 2, 1)];
    out.push(run_cases("model-face-tables", &models, |_, &(n, k, s)| {
        let m = build_model(n, k, s);
        ok(m.chain_complex().check_square_zero())?;
        for ell in 1..m.counts().len() {
            for (i, x) in m.simplices(ell).iter().enumerate() {
                for j in 0..=ell {
                    let face = x.face(j);
                    let want = if face.is_degenerate() { None } else { m.index_of(&face).map(|r| r as u32) };
                    if want.is_none() && !face.is_degenerate() {
                        return Err(format!("face {j} of {x:?} missing from the model"));
                    }
                    expect_eq(&format!("face table ({n},{k},{s}) degree {ell}"), m.face(ell, i, j), want)?;
                }
            }
        }
        Ok(())
    }));
    Ok(out)
}

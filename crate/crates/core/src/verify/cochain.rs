//! Cochain products, the operations `⟨f⟩` and their duals `⌊f⌋`, and the
//! wedge lemma on the sphere models.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand_chacha::ChaCha8Rng;

use super::brace::{check_angle_structure, AngleAxiomRange};
use super::enumerate::{label_maps, monotone_maps, sequences};
use super::operad::product;
use super::products::{run_products, ProductModel};
use super::{expect_eq, ok, run_cases, CheckResult, SuiteOptions};
use crate::cochains::{
    angle_f, cup, fixture, floor_f, lemma_new6_check, sqcup, Cochain, CochainStructure, FinSimplicialSet,
    PointedSphereModel, Ring, Simplex, FIXTURE_NAMES,
};
use crate::combinat::{complexity, LabelMap};
use crate::error::Result;
use crate::perm::Permutation;

struct CochainProducts {
    spaces: Vec<Arc<FinSimplicialSet>>,
    ring: Ring,
}

impl ProductModel for CochainProducts {
    type E = Cochain;

    fn sample(&self, degrees: &[usize], rng: &mut ChaCha8Rng) -> (Vec<Cochain>, Cochain) {
        let space = self.spaces.choose(rng).expect("nonempty");
        let xs =
            degrees.iter().map(|&p| Cochain::random(space, self.ring, p as isize, rng).expect("valid ring")).collect();
        (xs, Cochain::unit(space, self.ring).expect("valid ring"))
    }

    fn cup(&self, x: &Cochain, y: &Cochain) -> Result<Cochain> {
        cup(x, y)
    }

    fn sqcup(&self, x: &Cochain, y: &Cochain) -> Result<Cochain> {
        sqcup(x, y)
    }

    fn d(&self, x: &Cochain, i: usize) -> Result<Cochain> {
        x.coface(i)
    }

    fn s(&self, x: &Cochain, i: usize) -> Result<Cochain> {
        x.codegeneracy(i)
    }
}

fn spaces() -> Vec<Arc<FinSimplicialSet>> {
    FIXTURE_NAMES.iter().map(|n| Arc::new(fixture(n).expect("bundled"))).collect()
}

/// Every simplex of degree `p` of the space, or a seeded sample of `limit`.
fn some_simplices(space: &FinSimplicialSet, p: isize, limit: usize, rng: &mut ChaCha8Rng) -> Vec<Simplex> {
    let all = space.simplices(p);
    if all.len() <= limit {
        all
    } else {
        all.choose_multiple(rng, limit).cloned().collect()
    }
}

fn floor_checks(seed: u64) -> Vec<CheckResult> {
    let spaces: Vec<Arc<FinSimplicialSet>> =
        ["rp2", "sphere2", "boundary-delta3"].iter().map(|n| Arc::new(fixture(n).expect("bundled"))).collect();
    let surjective = |len: usize, k: usize| -> Vec<LabelMap> {
        label_maps(len, k, None).into_iter().filter(LabelMap::is_surjective).collect()
    };
    let mut out = Vec::new();

    // dual consistency: restricting along h then to fibers of f equals
    // restricting to fibers of g then along the restrictions of h
    let mut cons = Vec::new();
    for k in 1..=3 {
        for t2 in 1..=5 {
            for g in surjective(t2, k) {
                for t in 1..=5 {
                    for h in monotone_maps(t, t2) {
                        let f: Vec<usize> = h.iter().map(|&a| g.get(a)).collect();
                        if LabelMap::new(k, f.clone()).map(|f| f.is_surjective()).unwrap_or(false) {
                            cons.push((g.clone(), h));
                        }
                    }
                }
            }
        }
    }
    out.push(run_cases("floor-consistency", &cons, |i, (g, h)| {
        let mut rng = super::case_rng(seed, "floor-consistency", i);
        let f = ok(LabelMap::new(g.k(), h.iter().map(|&a| g.get(a)).collect()))?;
        for space in &spaces {
            for s in some_simplices(space, g.len() as isize - 1, 4, &mut rng) {
                let left = ok(floor_f(space, &f, &ok(space.pullback(&s, h))?))?;
                let parts = ok(floor_f(space, g, &s))?;
                for i in 1..=g.k() {
                    let (ff, gf) = (f.fiber(i), g.fiber(i));
                    let hi: Vec<usize> =
                        ff.iter().map(|&a| gf.iter().position(|&b| b == h[a]).expect("fiberwise")).collect();
                    expect_eq(
                        &format!("fiber {i} of {:?} along {h:?}", g.values()),
                        left[i - 1].clone(),
                        ok(space.pullback(&parts[i - 1], &hi))?,
                    )?;
                }
            }
        }
        Ok(())
    }));

    let mut comm = Vec::new();
    for k in 1..=3 {
        for t in 1..=5 {
            for f in surjective(t, k) {
                comm.push(f);
            }
        }
    }
    out.push(run_cases("floor-commutativity", &comm, |i, f| {
        let mut rng = super::case_rng(seed, "floor-commutativity", i);
        for space in &spaces {
            for s in some_simplices(space, f.len() as isize - 1, 4, &mut rng) {
                let parts = ok(floor_f(space, f, &s))?;
                for sigma in Permutation::all(f.k()) {
                    let permuted: Vec<Simplex> = (1..=f.k()).map(|i| parts[sigma.apply(i) - 1].clone()).collect();
                    expect_eq("permuted factors", ok(floor_f(space, &f.relabel_by_inverse(&sigma), &s))?, permuted)?;
                }
            }
        }
        Ok(())
    }));

    let mut assoc = Vec::new();
    for f in &comm {
        let choices: Vec<Vec<LabelMap>> =
            f.fiber_sizes().iter().map(|&n| (1..=2).flat_map(|j| surjective(n, j)).collect()).collect();
        for gs in product(&choices) {
            if gs.iter().map(LabelMap::k).sum::<usize>() <= 4 {
                assoc.push((f.clone(), gs));
            }
        }
    }
    out.push(run_cases("floor-associativity", &assoc, |i, (f, gs)| {
        let mut rng = super::case_rng(seed, "floor-associativity", i);
        let mut g = vec![0usize; f.len()];
        let mut offset = 0;
        for (i, gi) in gs.iter().enumerate() {
            for (a, &p) in f.fiber(i + 1).iter().enumerate() {
                g[p] = gi.get(a) + offset;
            }
            offset += gi.k();
        }
        let g = ok(LabelMap::new(offset, g))?;
        let space = spaces.choose(&mut rng).expect("nonempty");
        for s in some_simplices(space, f.len() as isize - 1, 4, &mut rng) {
            let parts = ok(floor_f(space, f, &s))?;
            let mut nested = Vec::new();
            for (gi, part) in gs.iter().zip(&parts) {
                nested.extend(ok(floor_f(space, gi, part))?);
            }
            expect_eq("nested co-operations", nested, ok(floor_f(space, &g, &s))?)?;
        }
        Ok(())
    }));

    out.push(run_cases("floor-unit", &spaces, |_, space| {
        for t in 1..=4 {
            let f = ok(LabelMap::new(1, vec![1; t]))?;
            for s in space.simplices(t as isize - 1) {
                expect_eq("constant label map", ok(floor_f(space, &f, &s))?, vec![s.clone()])?;
                let g = ok(LabelMap::new(2, vec![1; t]))?;
                if floor_f(space, &g, &s).is_ok() {
                    return Err("an empty fiber was accepted".into());
                }
            }
        }
        Ok(())
    }));
    out
}

pub fn run(opts: &SuiteOptions) -> Result<Vec<CheckResult>> {
    let seed = opts.seed;
    let mut out = Vec::new();
    let all = spaces();
    for (name, ring) in [("z", Ring::Integers), ("z2", Ring::Modulo(2))] {
        let model = CochainProducts { spaces: all.clone(), ring };
        out.extend(run_products(&format!("{name}-"), &model, seed, opts.cases.unwrap_or(10_000), 2));
    }

    // ⟨f⟩ on k = 1 and on constant inputs
    out.push(run_cases("angle-units", &all, |_, space| {
        for ring in [Ring::Integers, Ring::Modulo(2)] {
            for t in 1..=4usize {
                let x = ok(Cochain::random(space, ring, t as isize - 1, &mut super::case_rng(seed, space.name(), t)))?;
                expect_eq("k = 1", ok(angle_f(&ok(LabelMap::new(1, vec![1; t]))?, std::slice::from_ref(&x)))?, x)?;
                for f in label_maps(t, 2, None) {
                    let ones: Vec<Cochain> = f
                        .fiber_sizes()
                        .iter()
                        .map(|&n| Cochain::constant(space, ring, n as isize - 1, 1))
                        .collect::<Result<_>>()
                        .map_err(|e| e.to_string())?;
                    expect_eq(
                        "constant inputs",
                        ok(angle_f(&f, &ones))?,
                        ok(Cochain::constant(space, ring, t as isize - 1, 1))?,
                    )?;
                }
            }
        }
        Ok(())
    }));

    let range = AngleAxiomRange { max_t: 4, max_k: 3 };
    for (space, ring) in [("boundary-delta3", Ring::Integers), ("rp2", Ring::Modulo(2)), ("sphere2", Ring::Integers)] {
        let structure = CochainStructure { space: Arc::new(fixture(space)?), ring };
        out.extend(check_angle_structure(&format!("{space}-"), &structure, range, seed, None));
    }
    out.extend(floor_checks(seed));
    Ok(out)
}

/// Monotone maps `T -> [n]` onto `[n]`.
fn onto_monotone(t: usize, n: usize) -> Vec<Vec<usize>> {
    monotone_maps(t, n + 1).into_iter().filter(|phi| (0..=n).all(|v| phi.contains(&v))).collect()
}

pub fn run_new6(opts: &SuiteOptions) -> Result<Vec<CheckResult>> {
    let ns: Vec<usize> = match opts.n {
        Some(n) => vec![n],
        None => vec![1, 2],
    };
    let max_k = opts.k.unwrap_or(3);
    let mut out = Vec::new();
    for n in ns {
        let sphere = PointedSphereModel::new(n);
        let mut cases = Vec::new();
        for t in 1..=6 {
            for k in 1..=max_k {
                for f in sequences(t, k) {
                    let f = LabelMap::new(k, f).expect("labels in range");
                    if complexity(&f) > n {
                        continue;
                    }
                    for phi in onto_monotone(t, n) {
                        cases.push((f.clone(), phi));
                    }
                }
            }
        }
        out.push(run_cases(&format!("wedge-n{n}"), &cases, |_, (f, phi)| {
            if !lemma_new6_check(f, phi, n) {
                return Err(format!("f={:?} φ={phi:?}", f.values()));
            }
            if !f.is_surjective() {
                return Ok(());
            }
            // on the sphere model: at most one factor leaves the basepoint
            let s = ok(sphere.simplex(phi))?;
            let parts = ok(floor_f(sphere.space(), f, &s))?;
            let off = parts.iter().filter(|p| !sphere.is_basepoint(p)).count();
            if off > 1 {
                return Err(format!("f={:?} φ={phi:?}: {off} factors leave the basepoint", f.values()));
            }
            Ok(())
        }));
    }
    Ok(out)
}

//! Exact barycentric geometry: the splitting `ω` and its inverse, the maps
//! between `Δ• □ Δ•` and `Δ•`, and the normalisation `Υ`.

use rand::Rng;

use super::{expect_eq, ok, run_random, CheckResult, SuiteOptions};
use crate::error::Result;
use crate::prism::{
    box_codegeneracy, box_coface, box_f, box_g, box_normalize, is_barycentric, lambda, omega, random_barycentric,
    random_nondegenerate, random_presentation, simplex_codegeneracy, simplex_coface, upsilon,
};
use crate::{Rational, RationalPairPoint};

type Q = Rational;

pub fn run(opts: &SuiteOptions) -> Result<Vec<CheckResult>> {
    let seed = opts.seed;
    let n = opts.cases.unwrap_or(1000);
    let max_k = opts.k.unwrap_or(3).max(1);
    let mut out = Vec::new();

    out.push(run_random("lambda-after-omega", seed, n, |rng| {
        let k = rng.gen_range(1..=max_k);
        let s = rng.gen_range(0..=3);
        let p: RationalPairPoint = random_nondegenerate(k, s, 7, rng);
        let (v, base) = ok(omega(&p))?;
        if !is_barycentric(&v) || base.diagram.s() != 0 || !base.is_nondegenerate() {
            return Err(format!("ω of {p:?} is not a pair of points"));
        }
        expect_eq("λ ∘ ω", ok(lambda(&v, &base))?, p)
    }));

    out.push(run_random("omega-after-lambda", seed, n, |rng| {
        let k = rng.gen_range(1..=max_k);
        let base: RationalPairPoint = random_nondegenerate(k, 0, 6, rng);
        let v: Vec<Q> = random_barycentric(rng.gen_range(0..=3), rng);
        let x = ok(lambda(&v, &base))?;
        if !x.is_nondegenerate() {
            return Err("λ is not nondegenerate".into());
        }
        expect_eq("ω ∘ λ", ok(omega(&x))?, (v, base))
    }));

    out.push(run_random("box-f-after-g", seed, n, |rng| {
        let u: Vec<Q> = random_barycentric(rng.gen_range(0..=5), rng);
        let (l, r) = ok(box_g(&u))?;
        expect_eq("f ∘ g", ok(box_f(&l, &r))?, u)
    }));

    out.push(run_random("box-g-after-f", seed, n, |rng| {
        let x: Vec<Q> = random_barycentric(rng.gen_range(0..=3), rng);
        let y: Vec<Q> = random_barycentric(rng.gen_range(0..=3), rng);
        let (l, r) = ok(box_g(&ok(box_f(&x, &y))?))?;
        expect_eq("g ∘ f", (l, r), box_normalize(&x, &y))
    }));

    out.push(run_random("box-relation", seed, n, |rng| {
        let x: Vec<Q> = random_barycentric(rng.gen_range(0..=3), rng);
        let y: Vec<Q> = random_barycentric(rng.gen_range(0..=3), rng);
        let p = x.len() - 1;
        let (x2, y2) = (ok(simplex_coface(&x, p + 1))?, ok(simplex_coface(&y, 0))?);
        expect_eq("f on both representatives", ok(box_f(&x, &y2))?, ok(box_f(&x2, &y))?)?;
        // the operators agree on both representatives
        for i in 0..=x.len() + y.len() {
            let (a, b) = ok(box_coface(&x, &y2, i))?;
            let (c, d) = ok(box_coface(&x2, &y, i))?;
            expect_eq(&format!("d^{i}"), ok(box_f(&a, &b))?, ok(box_f(&c, &d))?)?;
        }
        for i in 0..x.len() + y.len() - 1 {
            let (a, b) = ok(box_codegeneracy(&x, &y2, i))?;
            let (c, d) = ok(box_codegeneracy(&x2, &y, i))?;
            expect_eq(&format!("s^{i}"), ok(box_f(&a, &b))?, ok(box_f(&c, &d))?)?;
        }
        Ok(())
    }));

    out.push(run_random("box-naturality", seed, n, |rng| {
        let x: Vec<Q> = random_barycentric(rng.gen_range(0..=3), rng);
        let y: Vec<Q> = random_barycentric(rng.gen_range(0..=3), rng);
        let u = ok(box_f(&x, &y))?;
        let m = u.len() - 1;
        for i in 0..=m + 1 {
            let (a, b) = ok(box_coface(&x, &y, i))?;
            let du = ok(simplex_coface(&u, i))?;
            expect_eq(&format!("f d^{i}"), ok(box_f(&a, &b))?, du.clone())?;
            let (l, r) = ok(box_g(&u))?;
            let (a, b) = ok(box_coface(&l, &r, i))?;
            expect_eq(&format!("g d^{i}"), ok(box_g(&du))?, box_normalize(&a, &b))?;
        }
        for i in 0..m {
            let (a, b) = ok(box_codegeneracy(&x, &y, i))?;
            let su = ok(simplex_codegeneracy(&u, i))?;
            expect_eq(&format!("f s^{i}"), ok(box_f(&a, &b))?, su.clone())?;
            let (l, r) = ok(box_g(&u))?;
            let (a, b) = ok(box_codegeneracy(&l, &r, i))?;
            expect_eq(&format!("g s^{i}"), ok(box_g(&su))?, box_normalize(&a, &b))?;
        }
        Ok(())
    }));

    out.push(run_random("normalisation", seed, n, |rng| {
        let k = rng.gen_range(1..=max_k);
        let s = rng.gen_range(0..=3);
        let p: RationalPairPoint = random_nondegenerate(k, s, 7, rng);
        expect_eq("fixed on nondegenerate points", upsilon(&p), p.clone())?;
        let r = random_presentation(&p, rng.gen_range(0..=6), rng);
        let n = upsilon(&r);
        if !n.is_nondegenerate() {
            return Err(format!("Υ({r:?}) is degenerate"));
        }
        expect_eq("idempotent", upsilon(&n), n.clone())?;
        expect_eq("independent of the presentation", n, p.clone())?;
        // ω only depends on the point
        expect_eq("ω of a presentation", ok(omega(&upsilon(&r)))?, ok(omega(&p))?)
    }));
    Ok(out)
}

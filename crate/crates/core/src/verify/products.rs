//! Identities relating `⌣`, `⊔` and the cosimplicial operators, checked on
//! any model that supplies the operations.

use std::fmt::Debug;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{expect_eq, ok, run_random, CheckResult};
use crate::error::Result;

pub(crate) trait ProductModel: Sync {
    type E: Clone + PartialEq + Debug;

    /// Random elements of the given degrees, all on a common carrier; also
    /// returns the unit of degree 0 for that carrier.
    fn sample(&self, degrees: &[usize], rng: &mut ChaCha8Rng) -> (Vec<Self::E>, Self::E);
    fn cup(&self, x: &Self::E, y: &Self::E) -> Result<Self::E>;
    fn sqcup(&self, x: &Self::E, y: &Self::E) -> Result<Self::E>;
    fn d(&self, x: &Self::E, i: usize) -> Result<Self::E>;
    fn s(&self, x: &Self::E, i: usize) -> Result<Self::E>;
}

type Check<M> = fn(&M, &[usize], &[<M as ProductModel>::E], &<M as ProductModel>::E) -> std::result::Result<(), String>;

fn m1<M: ProductModel>(m: &M, deg: &[usize], v: &[M::E], _: &M::E) -> std::result::Result<(), String> {
    let (p, q) = (deg[0], deg[1]);
    let xy = ok(m.cup(&v[0], &v[1]))?;
    for i in 0..=p + q + 1 {
        let want =
            if i <= p { ok(m.cup(&ok(m.d(&v[0], i))?, &v[1]))? } else { ok(m.cup(&v[0], &ok(m.d(&v[1], i - p))?))? };
        expect_eq(&format!("d^{i} with p={p} q={q}"), ok(m.d(&xy, i))?, want)?;
    }
    Ok(())
}

fn m2<M: ProductModel>(m: &M, deg: &[usize], v: &[M::E], _: &M::E) -> std::result::Result<(), String> {
    let p = deg[0];
    expect_eq(
        "front and back coface",
        ok(m.cup(&ok(m.d(&v[0], p + 1))?, &v[1]))?,
        ok(m.cup(&v[0], &ok(m.d(&v[1], 0))?))?,
    )
}

fn m3<M: ProductModel>(m: &M, deg: &[usize], v: &[M::E], _: &M::E) -> std::result::Result<(), String> {
    let (p, q) = (deg[0], deg[1]);
    let xy = ok(m.cup(&v[0], &v[1]))?;
    for i in 0..(p + q) {
        let want =
            if i < p { ok(m.cup(&ok(m.s(&v[0], i))?, &v[1]))? } else { ok(m.cup(&v[0], &ok(m.s(&v[1], i - p))?))? };
        expect_eq(&format!("s^{i} with p={p} q={q}"), ok(m.s(&xy, i))?, want)?;
    }
    Ok(())
}

fn t4<M: ProductModel>(m: &M, deg: &[usize], v: &[M::E], _: &M::E) -> std::result::Result<(), String> {
    let (p, q) = (deg[0], deg[1]);
    let xy = ok(m.sqcup(&v[0], &v[1]))?;
    for i in 0..=p + q + 2 {
        let want = if i <= p + 1 {
            ok(m.sqcup(&ok(m.d(&v[0], i))?, &v[1]))?
        } else {
            ok(m.sqcup(&v[0], &ok(m.d(&v[1], i - p - 1))?))?
        };
        expect_eq(&format!("d^{i} with p={p} q={q}"), ok(m.d(&xy, i))?, want)?;
    }
    Ok(())
}

fn t5<M: ProductModel>(m: &M, deg: &[usize], v: &[M::E], _: &M::E) -> std::result::Result<(), String> {
    let (p, q) = (deg[0], deg[1]);
    let xy = ok(m.sqcup(&v[0], &v[1]))?;
    for i in (0..=p + q).filter(|&i| i != p) {
        let want = if i < p {
            ok(m.sqcup(&ok(m.s(&v[0], i))?, &v[1]))?
        } else {
            ok(m.sqcup(&v[0], &ok(m.s(&v[1], i - p - 1))?))?
        };
        expect_eq(&format!("s^{i} with p={p} q={q}"), ok(m.s(&xy, i))?, want)?;
    }
    Ok(())
}

fn cup_assoc<M: ProductModel>(m: &M, _: &[usize], v: &[M::E], _: &M::E) -> std::result::Result<(), String> {
    let left = ok(m.cup(&ok(m.cup(&v[0], &v[1]))?, &v[2]))?;
    expect_eq("associativity", left, ok(m.cup(&v[0], &ok(m.cup(&v[1], &v[2]))?))?)
}

fn sqcup_assoc<M: ProductModel>(m: &M, _: &[usize], v: &[M::E], _: &M::E) -> std::result::Result<(), String> {
    let left = ok(m.sqcup(&ok(m.sqcup(&v[0], &v[1]))?, &v[2]))?;
    expect_eq("associativity", left, ok(m.sqcup(&v[0], &ok(m.sqcup(&v[1], &v[2]))?))?)
}

fn cup_unit<M: ProductModel>(m: &M, _: &[usize], v: &[M::E], e: &M::E) -> std::result::Result<(), String> {
    expect_eq("right unit", ok(m.cup(&v[0], e))?, v[0].clone())?;
    expect_eq("left unit", ok(m.cup(e, &v[0]))?, v[0].clone())
}

fn sqcup_unit<M: ProductModel>(m: &M, deg: &[usize], v: &[M::E], e: &M::E) -> std::result::Result<(), String> {
    expect_eq("right unit", ok(m.s(&ok(m.sqcup(&v[0], e))?, deg[0]))?, v[0].clone())?;
    expect_eq("left unit", ok(m.s(&ok(m.sqcup(e, &v[0]))?, 0))?, v[0].clone())
}

fn interchange<M: ProductModel>(m: &M, deg: &[usize], v: &[M::E], _: &M::E) -> std::result::Result<(), String> {
    let p = deg[0];
    let join = ok(m.sqcup(&v[0], &v[1]))?;
    expect_eq("join as front coface", ok(m.cup(&ok(m.d(&v[0], p + 1))?, &v[1]))?, join.clone())?;
    expect_eq("join as back coface", ok(m.cup(&v[0], &ok(m.d(&v[1], 0))?))?, join.clone())?;
    expect_eq("cup as codegeneracy", ok(m.s(&join, p))?, ok(m.cup(&v[0], &v[1]))?)
}

/// Runs every identity with `count` random cases each; degrees are drawn
/// from `0..=max_degree`.
pub(crate) fn run_products<M: ProductModel>(
    prefix: &str,
    m: &M,
    seed: u64,
    count: usize,
    max_degree: usize,
) -> Vec<CheckResult> {
    let table: Vec<(&str, usize, Check<M>)> = vec![
        ("cup-coface", 2, m1::<M>),
        ("cup-middle-coface", 2, m2::<M>),
        ("cup-codegeneracy", 2, m3::<M>),
        ("cup-associativity", 3, cup_assoc::<M>),
        ("cup-unit", 1, cup_unit::<M>),
        ("join-coface", 2, t4::<M>),
        ("join-codegeneracy", 2, t5::<M>),
        ("join-associativity", 3, sqcup_assoc::<M>),
        ("join-unit", 1, sqcup_unit::<M>),
        ("cup-join-interchange", 2, interchange::<M>),
    ];
    table
        .into_iter()
        .map(|(name, arity, check)| {
            let full = format!("{prefix}{name}");
            run_random(&full, seed, count, |rng| {
                let deg: Vec<usize> = (0..arity).map(|_| rng.gen_range(0..=max_degree)).collect();
                let (v, e) = m.sample(&deg, rng);
                check(m, &deg, &v, &e).map_err(|err| format!("degrees {deg:?}: {err}"))
            })
        })
        .collect()
}

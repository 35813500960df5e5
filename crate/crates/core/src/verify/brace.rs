//! Axioms of the operations `⟨f⟩` on an augmented cosimplicial object, and
//! the dictionary between operads with multiplication and such objects.

use rand::seq::SliceRandom;
use rand::{Rng, RngCore};
use rand_chacha::ChaCha8Rng;

use super::enumerate::{label_maps, monotone_maps};
use super::operad::product;
use super::products::{run_products, ProductModel};
use super::{case_rng, expect_eq, ok, run_cases, run_random, CheckResult, SuiteOptions};
use crate::brace::{
    cosimplicial_d, cosimplicial_s, operad_from_xi, sqcup_op, AngleStructure, Cos, CosimpFromOperad, EndoElem,
    EndomorphismOperad, FiniteMonoid, OperadWithMult,
};
use crate::combinat::LabelMap;
use crate::error::Result;
use crate::perm::Permutation;

/// Sizes swept by [`check_angle_structure`].
#[derive(Debug, Clone, Copy)]
pub struct AngleAxiomRange {
    /// Largest `|T|` (and `|T'|` for consistency).
    pub max_t: usize,
    /// Largest arity `k`.
    pub max_k: usize,
}

type Outcome = std::result::Result<(), String>;

/// Runs `check` on every structural case (or on `count` random ones), with
/// a fresh seeded generator per case for the random inputs.
fn sweep<C, F>(name: &str, cases: &[C], seed: u64, count: Option<usize>, check: F) -> CheckResult
where
    C: Sync,
    F: Fn(&C, &mut ChaCha8Rng) -> Outcome + Sync,
{
    match count {
        None => run_cases(name, cases, |i, c| check(c, &mut case_rng(seed, name, i))),
        Some(n) => run_random(name, seed, n, |rng| match cases.choose(rng) {
            Some(c) => check(c, rng),
            None => Ok(()),
        }),
    }
}

fn maps<X: AngleStructure>(x: &X, len: usize, k: usize) -> Vec<LabelMap> {
    label_maps(len, k, x.complexity_bound())
}

fn inputs<X: AngleStructure>(x: &X, f: &LabelMap, rng: &mut ChaCha8Rng) -> Vec<X::Elem> {
    f.fiber_sizes().iter().map(|&n| x.random_element(n as isize - 1, rng as &mut dyn RngCore)).collect()
}

/// Positions of `sub` inside `sup`.
fn local(sub: &[usize], sup: &[usize], h: &[usize]) -> Vec<usize> {
    sub.iter().map(|&a| sup.iter().position(|&b| b == h[a]).expect("h respects labels")).collect()
}

/// Consistency, commutativity, associativity and unitality of `⟨ ⟩`,
/// exhaustive over label maps (and the maps relating them) in `range`, with
/// random inputs; `count` replaces the sweep by that many random cases.
pub fn check_angle_structure<X>(
    prefix: &str,
    x: &X,
    range: AngleAxiomRange,
    seed: u64,
    count: Option<usize>,
) -> Vec<CheckResult>
where
    X: AngleStructure + Sync,
    X::Elem: Send + Sync,
{
    let mut out = Vec::new();
    let AngleAxiomRange { max_t, max_k } = range;

    let mut consistency = Vec::new();
    for k in 0..=max_k {
        for t2 in 0..=max_t {
            for g in maps(x, t2, k) {
                for t in 0..=max_t {
                    for h in monotone_maps(t, t2) {
                        consistency.push((g.clone(), h));
                    }
                }
            }
        }
    }
    out.push(sweep(&format!("{prefix}consistency"), &consistency, seed, count, |(g, h), rng| {
        let f = ok(LabelMap::new(g.k(), h.iter().map(|&a| g.get(a)).collect()))?;
        let xs = inputs(x, &f, rng);
        let pushed: Vec<X::Elem> = (1..=g.k())
            .map(|i| {
                let hi = local(&f.fiber(i), &g.fiber(i), h);
                x.act(&xs[i - 1], &hi, g.fiber(i).len() as isize - 1)
            })
            .collect::<Result<_>>()
            .map_err(|e| e.to_string())?;
        let left = ok(x.act(&ok(x.angle(&f, &xs))?, h, g.len() as isize - 1))?;
        expect_eq(&format!("f={:?} g={:?} h={h:?}", f.values(), g.values()), left, ok(x.angle(g, &pushed))?)
    }));

    let mut commut = Vec::new();
    for k in 0..=max_k {
        for t in 0..=max_t {
            for f in maps(x, t, k) {
                for s in Permutation::all(k) {
                    commut.push((f.clone(), s));
                }
            }
        }
    }
    out.push(sweep(&format!("{prefix}commutativity"), &commut, seed, count, |(f, s), rng| {
        let xs = inputs(x, f, rng);
        let permuted: Vec<X::Elem> = (1..=f.k()).map(|i| xs[s.apply(i) - 1].clone()).collect();
        let g = f.relabel_by_inverse(s);
        expect_eq(&format!("f={:?} σ={:?}", f.values(), s.images()), ok(x.angle(&g, &permuted))?, ok(x.angle(f, &xs))?)
    }));

    // associativity: f and a label map g_i on each fiber
    let mut assoc = Vec::new();
    for k in 0..=max_k {
        for t in 0..=max_t {
            for f in maps(x, t, k) {
                let choices: Vec<Vec<LabelMap>> =
                    f.fiber_sizes().iter().map(|&n| (0..=max_k).flat_map(|j| maps(x, n, j)).collect()).collect();
                for gs in product(&choices) {
                    if gs.iter().map(LabelMap::k).sum::<usize>() <= max_k {
                        assoc.push((f.clone(), gs));
                    }
                }
            }
        }
    }
    out.push(sweep(&format!("{prefix}associativity"), &assoc, seed, count, |(f, gs), rng| {
        let mut offset = 0;
        let mut g = vec![0usize; f.len()];
        for (i, gi) in gs.iter().enumerate() {
            for (a, &p) in f.fiber(i + 1).iter().enumerate() {
                g[p] = gi.get(a) + offset;
            }
            offset += gi.k();
        }
        let g = ok(LabelMap::new(offset, g))?;
        let xs = inputs(x, &g, rng);
        let mut next = 0;
        let mut middle = Vec::new();
        for gi in gs {
            middle.push(ok(x.angle(gi, &xs[next..next + gi.k()]))?);
            next += gi.k();
        }
        expect_eq(&format!("f={:?} g={:?}", f.values(), g.values()), ok(x.angle(f, &middle))?, ok(x.angle(&g, &xs))?)
    }));

    let mut unital = Vec::new();
    for k in 1..=max_k {
        for t in 0..=max_t {
            for f in maps(x, t, k - 1) {
                for i in 1..=k {
                    unital.push((f.clone(), i));
                }
            }
        }
    }
    out.push(sweep(&format!("{prefix}unitality"), &unital, seed, count, |(f, i), rng| {
        let xs = inputs(x, f, rng);
        let lifted =
            ok(LabelMap::new(f.k() + 1, f.values().iter().map(|&v| if v >= *i { v + 1 } else { v }).collect()))?;
        let mut with_unit = xs.clone();
        with_unit.insert(i - 1, x.epsilon());
        expect_eq(&format!("f={:?} i={i}", f.values()), ok(x.angle(&lifted, &with_unit))?, ok(x.angle(f, &xs))?)
    }));
    out
}

fn cos(x: &EndoElem) -> Cos<EndoElem> {
    Cos::Op(x.clone())
}

fn op(x: Cos<EndoElem>) -> std::result::Result<EndoElem, String> {
    match x {
        Cos::Op(x) => Ok(x),
        Cos::Epsilon => Err("unexpected augmented point".into()),
    }
}

struct OperadProducts {
    o: EndomorphismOperad,
}

impl ProductModel for OperadProducts {
    type E = Cos<EndoElem>;

    fn sample(&self, degrees: &[usize], rng: &mut ChaCha8Rng) -> (Vec<Self::E>, Self::E) {
        (degrees.iter().map(|&p| cos(&self.o.random(p, rng))).collect(), cos(&self.o.e()))
    }

    fn cup(&self, x: &Self::E, y: &Self::E) -> Result<Self::E> {
        let (Cos::Op(x), Cos::Op(y)) = (x, y) else {
            return crate::error::invalid("cup of the augmented point");
        };
        Ok(Cos::Op(self.o.gamma(&self.o.mu(), &[x.clone(), y.clone()])?))
    }

    fn sqcup(&self, x: &Self::E, y: &Self::E) -> Result<Self::E> {
        sqcup_op(&self.o, x, y)
    }

    fn d(&self, x: &Self::E, i: usize) -> Result<Self::E> {
        cosimplicial_d(&self.o, i, x)
    }

    fn s(&self, x: &Self::E, i: usize) -> Result<Self::E> {
        cosimplicial_s(&self.o, i, x)
    }
}

fn operads() -> Vec<(&'static str, EndomorphismOperad)> {
    vec![
        ("z2", EndomorphismOperad::new(FiniteMonoid::integers_mod(2))),
        ("z3", EndomorphismOperad::new(FiniteMonoid::integers_mod(3))),
        ("maps2", EndomorphismOperad::new(FiniteMonoid::transformations_of_two())),
    ]
}

/// Every element of arity at most `max_arity`, or a random sample of
/// `sample` elements per arity when there are too many.
fn elements(o: &EndomorphismOperad, max_arity: usize, sample: usize, rng: &mut ChaCha8Rng) -> Vec<EndoElem> {
    (0..=max_arity)
        .flat_map(|a| o.all(a, 4096).unwrap_or_else(|| (0..sample).map(|_| o.random(a, rng)).collect()))
        .collect()
}

fn cosimplicial_identities(o: &EndomorphismOperad, x: &Cos<EndoElem>) -> Outcome {
    let p = match x {
        Cos::Epsilon => -1,
        Cos::Op(x) => x.arity as isize,
    };
    let d = |i: usize, y: &Cos<EndoElem>| ok(cosimplicial_d(o, i, y));
    let s = |i: usize, y: &Cos<EndoElem>| ok(cosimplicial_s(o, i, y));
    let top = (p + 2) as usize;
    for j in 0..=top {
        for i in 0..j {
            expect_eq(&format!("d^{j} d^{i}"), d(j, &d(i, x)?)?, d(i, &d(j - 1, x)?)?)?;
        }
    }
    if p < 0 {
        return Ok(());
    }
    let p = p as usize;
    // s^j d^i on degree p, with d^i landing in degree p+1
    for j in 0..=p {
        for i in 0..=p + 1 {
            let left = s(j, &d(i, x)?)?;
            let right = if i < j {
                d(i, &s(j - 1, x)?)?
            } else if i == j || i == j + 1 {
                x.clone()
            } else {
                d(i - 1, &s(j, x)?)?
            };
            expect_eq(&format!("s^{j} d^{i}"), left, right)?;
        }
    }
    for j in 0..p {
        for i in 0..=j {
            if p >= 2 && j + 1 < p {
                expect_eq(&format!("s^{j} s^{i}"), s(j, &s(i, x)?)?, s(i, &s(j + 1, x)?)?)?;
            }
        }
    }
    Ok(())
}

pub fn run(opts: &SuiteOptions) -> Result<Vec<CheckResult>> {
    let seed = opts.seed;
    let mut out = Vec::new();
    for (name, o) in operads() {
        let mut rng = case_rng(seed, name, 0);
        let mu = o.mu();
        let e = o.e();
        let id = o.id();
        out.push(run_cases(&format!("{name}-multiplication"), &[()], |_, _| {
            expect_eq(
                "μ associative",
                ok(o.gamma(&mu, &[mu.clone(), id.clone()]))?,
                ok(o.gamma(&mu, &[id.clone(), mu.clone()]))?,
            )?;
            expect_eq("e left unit", ok(o.gamma(&mu, &[e.clone(), id.clone()]))?, id.clone())?;
            expect_eq("e right unit", ok(o.gamma(&mu, &[id.clone(), e.clone()]))?, id.clone())
        }));

        // operad axioms: unit and associativity
        let small = elements(&o, 2, 64, &mut rng);
        out.push(run_cases(&format!("{name}-operad-unit"), &small, |_, x| {
            expect_eq("γ(id; x)", ok(o.gamma(&id, std::slice::from_ref(x)))?, x.clone())?;
            expect_eq("γ(x; id..id)", ok(o.gamma(x, &vec![id.clone(); x.arity]))?, x.clone())
        }));
        out.push(run_random(&format!("{name}-operad-associativity"), seed, opts.cases.unwrap_or(2000), |rng| {
            let x = o.random(rng.gen_range(0..=3), rng);
            let ys: Vec<EndoElem> = (0..x.arity).map(|_| o.random(rng.gen_range(0..=2), rng)).collect();
            let mid: usize = ys.iter().map(|y| y.arity).sum();
            let zs: Vec<EndoElem> = (0..mid).map(|_| o.random(rng.gen_range(0..=1), rng)).collect();
            let left = ok(o.gamma(&ok(o.gamma(&x, &ys))?, &zs))?;
            let mut next = 0;
            let mut inner = Vec::new();
            for y in &ys {
                inner.push(ok(o.gamma(y, &zs[next..next + y.arity]))?);
                next += y.arity;
            }
            expect_eq("associativity", left, ok(o.gamma(&x, &inner))?)
        }));

        // cosimplicial identities, exhaustive in degrees up to 3 where feasible
        let mut all: Vec<Cos<EndoElem>> = vec![Cos::Epsilon];
        all.extend(elements(&o, 3, 256, &mut rng).iter().map(cos));
        out.push(run_cases(&format!("{name}-cosimplicial-identities"), &all, |_, x| cosimplicial_identities(&o, x)));

        // named elements and the round trip through the operations ⟨f⟩
        let structure = CosimpFromOperad::new(o.clone());
        out.push(run_cases(&format!("{name}-named-elements"), &[()], |_, _| {
            expect_eq("e", op(ok(structure.e())?)?, e.clone())?;
            expect_eq("id", op(ok(structure.id())?)?, id.clone())?;
            expect_eq("μ", op(ok(structure.mu())?)?, mu.clone())
        }));
        let derived = operad_from_xi(structure.clone());
        let outer = elements(&o, 3, 64, &mut rng);
        // the composite passes through degree 2k + Σ j_i; keep its table small
        let limit = (16.0 / (o.monoid().size() as f64).log2()).floor() as usize;
        out.push(run_cases(&format!("{name}-round-trip"), &outer, |i, x| {
            let mut rng = case_rng(seed, "round-trip", i);
            let patterns: Vec<Vec<usize>> = product(&vec![vec![0, 1, 2]; x.arity]);
            for js in patterns.iter().filter(|js| 2 * js.len() + js.iter().sum::<usize>() <= limit) {
                let ys: Vec<EndoElem> = js.iter().map(|&j| o.random(j, &mut rng)).collect();
                let want = ok(o.gamma(x, &ys))?;
                let got = ok(derived.gamma(&cos(x), &ys.iter().map(cos).collect::<Vec<_>>()))?;
                expect_eq(&format!("γ with input arities {js:?}"), op(got)?, want)?;
            }
            expect_eq("derived e", derived.e(), cos(&e))?;
            expect_eq("derived id", derived.id(), cos(&id))?;
            expect_eq("derived μ", derived.mu(), cos(&mu))
        }));

        out.extend(run_products(
            &format!("{name}-"),
            &OperadProducts { o: o.clone() },
            seed,
            opts.cases.unwrap_or(500),
            2,
        ));

        let range = AngleAxiomRange { max_t: 5, max_k: 3 };
        out.extend(check_angle_structure(&format!("{name}-"), &structure, range, seed, opts.cases));
    }
    Ok(out)
}

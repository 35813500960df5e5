//! Operad axioms for the poset of pairwise bounds and for the composition of
//! normal forms.

use super::enumerate::{compositions, diagrams, monotone_maps, normal_simplices};
use super::{expect_eq, ok, run_cases, CheckResult, SuiteOptions};
use crate::berger::{self, leq, operad_compose, sigma_act, BergerElem};
use crate::combinat::{complexity, Diagram, LabelMap};
use crate::error::Result;
use crate::perm::Permutation;
use crate::xi::{compose_diagrams, gamma_compose, lambda_regroup, reduce_simplex, sigma_star, XiSimplex};

/// Cartesian product of the given lists.
pub(crate) fn product<T: Clone>(lists: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    for l in lists {
        out = out
            .into_iter()
            .flat_map(|p| {
                l.iter().map(move |x| {
                    let mut q = p.clone();
                    q.push(x.clone());
                    q
                })
            })
            .collect();
    }
    out
}

fn offsets(arities: &[usize]) -> Vec<usize> {
    let mut o = vec![0];
    for a in arities {
        o.push(o.last().unwrap() + a);
    }
    o
}

/// The block permutation taking `(x_{σ(1)}, …, x_{σ(k)})` back to `(x_1, …, x_k)`.
pub(crate) fn block_permutation(sigma: &Permutation, arities: &[usize]) -> Permutation {
    let permuted: Vec<usize> = (1..=sigma.len()).map(|i| arities[sigma.apply(i) - 1]).collect();
    let o = offsets(arities);
    let mut images = Vec::new();
    for i in 1..=sigma.len() {
        let src = sigma.apply(i) - 1;
        for c in 1..=permuted[i - 1] {
            images.push(o[src] + c);
        }
    }
    Permutation::new(images).expect("block permutation")
}

fn block_sum(perms: &[Permutation]) -> Permutation {
    perms.iter().fold(Permutation::identity(0), |acc, p| acc.block_sum(p))
}

fn berger_unit(n: usize) -> BergerElem {
    BergerElem::new(n, 1, vec![], vec![1]).expect("unit")
}

fn all_berger(n: usize, max_k: usize) -> Vec<BergerElem> {
    (0..=max_k).flat_map(|k| berger::enumerate(n, k)).collect()
}

/// `(x; ys)` with `x` of arity at most 3 and total input arity at most `max_total`.
fn berger_pairs(n: usize, max_total: usize) -> Vec<(BergerElem, Vec<BergerElem>)> {
    let mut out = Vec::new();
    for x in all_berger(n, 3) {
        for total in 0..=max_total {
            for ar in compositions(total, x.k()) {
                let choices: Vec<Vec<BergerElem>> = ar.iter().map(|&a| berger::enumerate(n, a)).collect();
                for ys in product(&choices) {
                    out.push((x.clone(), ys));
                }
            }
        }
    }
    out
}

fn berger_checks(opts: &SuiteOptions) -> Vec<CheckResult> {
    let ns: Vec<usize> = match opts.n {
        Some(n) => vec![n],
        None => vec![1, 2],
    };
    let pairs: Vec<(BergerElem, Vec<BergerElem>)> = ns.iter().flat_map(|&n| berger_pairs(n, 3)).collect();
    let mut out = Vec::new();

    let elems: Vec<BergerElem> = ns.iter().flat_map(|&n| all_berger(n, 3)).collect();
    out.push(run_cases("poset-unit", &elems, |_, x| {
        let e = berger_unit(x.n);
        expect_eq("left unit", ok(operad_compose(&e, std::slice::from_ref(x)))?, x.clone())?;
        expect_eq("right unit", ok(operad_compose(x, &vec![e; x.k()]))?, x.clone())
    }));

    // (x; ys; zs) with at most three leaves at each level
    let mut triples = Vec::new();
    for (x, ys) in &pairs {
        let mid: usize = ys.iter().map(BergerElem::k).sum();
        for total in 0..=3 {
            for ar in compositions(total, mid) {
                let choices: Vec<Vec<BergerElem>> = ar.iter().map(|&a| berger::enumerate(x.n, a)).collect();
                for zs in product(&choices) {
                    triples.push((x.clone(), ys.clone(), zs));
                }
            }
        }
    }
    out.push(run_cases("poset-associativity", &triples, |_, (x, ys, zs)| {
        let left = ok(operad_compose(&ok(operad_compose(x, ys))?, zs))?;
        let mut inner = Vec::new();
        let mut next = 0;
        for y in ys {
            inner.push(ok(operad_compose(y, &zs[next..next + y.k()]))?);
            next += y.k();
        }
        expect_eq("associativity", left, ok(operad_compose(x, &inner))?)
    }));

    out.push(run_cases("poset-equivariance", &pairs, |_, (x, ys)| {
        let whole = ok(operad_compose(x, ys))?;
        let arities: Vec<usize> = ys.iter().map(BergerElem::k).collect();
        for sigma in Permutation::all(x.k()) {
            let permuted: Vec<BergerElem> = (1..=x.k()).map(|i| ys[sigma.apply(i) - 1].clone()).collect();
            let left = ok(operad_compose(&ok(sigma_act(x, &sigma))?, &permuted))?;
            let right = ok(sigma_act(&whole, &block_permutation(&sigma, &arities)))?;
            expect_eq(&format!("outer permutation {:?}", sigma.images()), left, right)?;
        }
        let inner_perms: Vec<Vec<Permutation>> = ys.iter().map(|y| Permutation::all(y.k())).collect();
        for taus in product(&inner_perms) {
            let acted: Vec<BergerElem> =
                ys.iter().zip(&taus).map(|(y, t)| sigma_act(y, t)).collect::<Result<_>>().map_err(|e| e.to_string())?;
            let left = ok(operad_compose(x, &acted))?;
            let right = ok(sigma_act(&whole, &block_sum(&taus)))?;
            expect_eq("inner permutations", left, right)?;
        }
        Ok(())
    }));

    // monotonicity in each argument
    let mono: Vec<(BergerElem, Vec<BergerElem>)> =
        pairs.iter().filter(|(_, ys)| ys.iter().map(BergerElem::k).sum::<usize>() <= 2).cloned().collect();
    out.push(run_cases("poset-monotone", &mono, |_, (x, ys)| {
        let whole = ok(operad_compose(x, ys))?;
        for x2 in berger::enumerate(x.n, x.k()) {
            if ok(leq(x, &x2))? && !ok(leq(&whole, &ok(operad_compose(&x2, ys))?))? {
                return Err(format!("outer {x2:?} above {x:?} gives a smaller composite"));
            }
        }
        for (i, y) in ys.iter().enumerate() {
            for y2 in berger::enumerate(x.n, y.k()) {
                if ok(leq(y, &y2))? {
                    let mut ys2 = ys.clone();
                    ys2[i] = y2;
                    if !ok(leq(&whole, &ok(operad_compose(x, &ys2))?))? {
                        return Err(format!("raising input {} gives a smaller composite", i + 1));
                    }
                }
            }
        }
        Ok(())
    }));
    out
}

/// A simplex of arity 0 over `[s]` in degree `ell`.
fn empty_simplex(s: usize, ell: usize) -> XiSimplex {
    XiSimplex { ell, diagram: Diagram::from_parts(0, vec![], vec![], s).expect("empty diagram"), sigmas: vec![] }
}

/// `Γ` extended to arity 0 outer diagrams.
fn gamma(outer: &Diagram, inners: &[XiSimplex], ell: usize) -> Result<XiSimplex> {
    if outer.k() == 0 {
        Ok(empty_simplex(outer.s(), ell))
    } else {
        gamma_compose(outer, inners)
    }
}

/// The inner diagrams admissible over each block of `outer`, of arity at most
/// `max_arity` and with at most `max_len` positions.
fn inner_diagram_choices(outer: &Diagram, max_arity: usize, max_len: usize) -> Vec<Vec<Diagram>> {
    (1..=outer.k())
        .map(|i| {
            let fib = outer.f().fiber(i).len();
            if fib == 0 {
                vec![Diagram::from_parts(0, vec![], vec![], 0).expect("empty")]
            } else {
                let mut ds = vec![Diagram::from_parts(0, vec![], vec![], fib - 1).expect("empty")];
                for a in 1..=max_arity {
                    ds.extend(diagrams(a, fib - 1, max_len, true));
                }
                ds
            }
        })
        .collect()
}

/// Normal inner simplices of degree `ell` over each block of `outer` of arity
/// at most `max_arity`; an empty fiber admits only the empty simplex.
fn inner_simplex_choices(outer: &Diagram, ell: usize, max_arity: usize, max_len: usize) -> Vec<Vec<XiSimplex>> {
    (1..=outer.k())
        .map(|i| {
            let fib = outer.f().fiber(i).len();
            if fib == 0 {
                vec![empty_simplex(0, ell)]
            } else {
                let mut xs = vec![empty_simplex(fib - 1, ell)];
                for a in 1..=max_arity {
                    xs.extend(normal_simplices(a, fib - 1, ell, max_len));
                }
                xs
            }
        })
        .collect()
}

fn xi_checks(_opts: &SuiteOptions) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let outers: Vec<Diagram> = (0..=2).flat_map(|k| (0..=1).flat_map(move |s| diagrams(k, s, 4, false))).collect();

    // unit laws
    let mut unit_cases = Vec::new();
    for d in outers.iter().filter(|d| d.f().is_surjective() && d.k() >= 1) {
        for ell in 0..=1 {
            let choices: Vec<Vec<XiSimplex>> = (1..=d.k())
                .map(|i| {
                    let fib = d.f().fiber(i).len();
                    normal_simplices(1, fib - 1, ell, 3)
                })
                .collect();
            for xs in product(&choices) {
                unit_cases.push((d.clone(), xs));
            }
        }
    }
    out.push(run_cases("diagram-unit-inner", &unit_cases, |_, (d, xs)| {
        let sigmas = xs
            .iter()
            .enumerate()
            .map(|(i, x)| {
                let fib = d.f().fiber(i + 1);
                x.sigmas[0].iter().map(|&p| fib[x.diagram.h()[p]]).collect()
            })
            .collect();
        let want = reduce_simplex(&XiSimplex { ell: xs[0].ell, diagram: d.clone(), sigmas });
        expect_eq("unary inputs", ok(gamma_compose(d, xs))?, want)
    }));

    let mut outer_unit = Vec::new();
    for t in 1..=3 {
        for s in 0..=1 {
            for h in monotone_maps(t, s + 1) {
                let d = Diagram::new(LabelMap::new(1, vec![1; t]).expect("constant"), h, s).expect("monotone");
                for k in 1..=2 {
                    for ell in 0..=1 {
                        for x in normal_simplices(k, t - 1, ell, 4) {
                            outer_unit.push((d.clone(), x));
                        }
                    }
                }
            }
        }
    }
    out.push(run_cases("diagram-unit-outer", &outer_unit, |_, (d, x)| {
        let h = x.diagram.h().iter().map(|&p| d.h()[p]).collect();
        let diagram = ok(Diagram::new(x.diagram.f().clone(), h, d.s()))?;
        let want = reduce_simplex(&XiSimplex { ell: x.ell, diagram, sigmas: x.sigmas.clone() });
        expect_eq("unary outer", ok(gamma_compose(d, std::slice::from_ref(x)))?, want)
    }));

    // associativity: (D; E_i; x_j)
    let mut assoc = Vec::new();
    for d in outers.iter().filter(|d| d.k() >= 1) {
        for es in product(&inner_diagram_choices(d, 2, 2)) {
            let total: usize = es.iter().map(Diagram::k).sum();
            if total == 0 || total > 3 {
                continue;
            }
            let mid = match compose_diagrams(d, &es) {
                Ok(m) => m,
                Err(_) => continue,
            };
            for ell in 0..=1 {
                for xs in product(&inner_simplex_choices(&mid, ell, 1, 2)) {
                    assoc.push((d.clone(), es.clone(), xs));
                }
            }
        }
    }
    out.push(run_cases("diagram-associativity", &assoc, |_, (d, es, xs)| {
        let ell = xs[0].ell;
        let mid = ok(compose_diagrams(d, es))?;
        let left = ok(gamma(&mid, xs, ell))?;
        let mut inner = Vec::new();
        let mut next = 0;
        for e in es {
            inner.push(ok(gamma(e, &xs[next..next + e.k()], ell))?);
            next += e.k();
        }
        let right = ok(gamma(d, &inner, ell))?;
        expect_eq("associativity", left.clone(), right)?;
        let bound = complexity(d.f()).max(xs.iter().map(|x| complexity(x.diagram.f())).max().unwrap_or(0));
        let bound = bound.max(es.iter().map(|e| complexity(e.f())).max().unwrap_or(0));
        if complexity(left.diagram.f()) > bound {
            return Err(format!("composite has complexity {} above {bound}", complexity(left.diagram.f())));
        }
        Ok(())
    }));

    // (D; x_i) pairs for the equivariance checks
    let mut pairs = Vec::new();
    for d in outers.iter().filter(|d| d.k() >= 1) {
        for ell in 0..=1 {
            for xs in product(&inner_simplex_choices(d, ell, 2, 2)) {
                if xs.iter().map(XiSimplex::k).sum::<usize>() <= 3 {
                    pairs.push((d.clone(), xs));
                }
            }
        }
    }
    out.push(run_cases("diagram-equivariance-inner", &pairs, |_, (d, xs)| {
        let whole = ok(gamma_compose(d, xs))?;
        let perms: Vec<Vec<Permutation>> = xs.iter().map(|x| Permutation::all(x.k())).collect();
        for taus in product(&perms) {
            let acted: Vec<XiSimplex> = xs
                .iter()
                .zip(&taus)
                .map(|(x, t)| sigma_star(x, t))
                .collect::<Result<_>>()
                .map_err(|e| e.to_string())?;
            expect_eq("inner permutations", ok(gamma_compose(d, &acted))?, ok(sigma_star(&whole, &block_sum(&taus)))?)?;
        }
        Ok(())
    }));
    out.push(run_cases("diagram-equivariance-outer", &pairs, |_, (d, xs)| {
        let whole = ok(gamma_compose(d, xs))?;
        let arities: Vec<usize> = xs.iter().map(XiSimplex::k).collect();
        for sigma in Permutation::all(d.k()) {
            let permuted: Vec<XiSimplex> = (1..=d.k()).map(|i| xs[sigma.apply(i) - 1].clone()).collect();
            let left = ok(gamma_compose(&d.relabel_by_inverse(&sigma), &permuted))?;
            let right = ok(sigma_star(&whole, &block_permutation(&sigma, &arities)))?;
            expect_eq(&format!("outer permutation {:?}", sigma.images()), left, right)?;
        }
        Ok(())
    }));

    // colimit compatibility: merging equal adjacent positions of the outer
    // diagram and pushing the inner simplices forward
    out.push(run_cases("diagram-colimit", &pairs, |_, (d, xs)| {
        let whole = ok(gamma_compose(d, xs))?;
        let f = d.f().values();
        let h = d.h();
        for p in 1..d.len() {
            if f[p] != f[p - 1] || h[p] != h[p - 1] {
                continue;
            }
            let merged = ok(d.merge_adjacent(p - 1))?;
            let label = f[p];
            let fib = d.f().fiber(label);
            let cut = fib.iter().position(|&q| q == p).expect("p lies in its fiber");
            let pushed: Vec<XiSimplex> = xs
                .iter()
                .enumerate()
                .map(|(i, x)| {
                    if i + 1 != label {
                        return x.clone();
                    }
                    let nh = x.diagram.h().iter().map(|&v| if v >= cut { v - 1 } else { v }).collect();
                    let diagram = Diagram::new(x.diagram.f().clone(), nh, x.diagram.s() - 1).expect("monotone");
                    reduce_simplex(&XiSimplex { ell: x.ell, diagram, sigmas: x.sigmas.clone() })
                })
                .collect();
            expect_eq(&format!("merge at {p}"), ok(gamma_compose(&merged, &pushed))?, whole.clone())?;
        }
        Ok(())
    }));

    // symmetric group action: composition and compatibility with faces
    let normals: Vec<XiSimplex> =
        (1..=3).flat_map(|k| (0..=2).flat_map(move |ell| normal_simplices(k, 1, ell, 4))).collect();
    out.push(run_cases("diagram-action", &normals, |_, x| {
        let perms = Permutation::all(x.k());
        for s in &perms {
            let sx = ok(sigma_star(x, s))?;
            if !sx.is_normal() {
                return Err("action leaves normal forms".into());
            }
            if complexity(sx.diagram.f()) != complexity(x.diagram.f()) {
                return Err("action changes complexity".into());
            }
            for t in &perms {
                expect_eq("composition", ok(sigma_star(&sx, t))?, ok(sigma_star(x, &s.compose(t)))?)?;
            }
            for j in 0..=x.ell {
                if x.ell > 0 {
                    expect_eq("faces", ok(sigma_star(&x.face(j), s))?, sx.face(j))?;
                }
                expect_eq("degeneracies", ok(sigma_star(&x.degeneracy(j), s))?, sx.degeneracy(j))?;
            }
        }
        Ok(())
    }));

    // Γ ∘ Λ = id for all groupings, including empty blocks
    let mut regroup = Vec::new();
    for k in 1..=3 {
        for ell in 0..=1 {
            for x in normal_simplices(k, 1, ell, 5) {
                for parts in 1..=3 {
                    for g in compositions(k, parts) {
                        regroup.push((x.clone(), g));
                    }
                }
            }
        }
    }
    out.push(run_cases("diagram-regroup", &regroup, |_, (x, g)| {
        let (outer, inners) = ok(lambda_regroup(x, g))?;
        expect_eq(&format!("grouping {g:?}"), ok(gamma_compose(&outer, &inners))?, x.clone())
    }));
    out
}

pub fn run(opts: &SuiteOptions) -> Result<Vec<CheckResult>> {
    let mut out = berger_checks(opts);
    out.extend(xi_checks(opts));
    Ok(out)
}

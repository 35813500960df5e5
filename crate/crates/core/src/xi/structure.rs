//! The symmetric group action and the composition maps of the diagram model,
//! at the level of simplices.

use super::cells::Cell;
use super::simplex::{reduce_simplex, XiSimplex};
use crate::combinat::{Diagram, LabelMap};
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// `σ*`: `f ↦ σ⁻¹ ∘ f`, and the new `i`-th coordinate map is the old `σ(i)`-th.
pub fn sigma_star(x: &XiSimplex, sigma: &Permutation) -> Result<XiSimplex> {
    if sigma.len() != x.k() {
        return Err(Error::Arity(format!("permutation of {} on arity {}", sigma.len(), x.k())));
    }
    let sigmas = (1..=x.k()).map(|i| x.sigmas[sigma.apply(i) - 1].clone()).collect();
    Ok(XiSimplex { ell: x.ell, diagram: x.diagram.relabel_by_inverse(sigma), sigmas })
}

pub fn sigma_star_cell(c: &Cell, sigma: &Permutation) -> Result<Cell> {
    if sigma.len() != c.diagram.k() {
        return Err(Error::Arity(format!("permutation of {} on arity {}", sigma.len(), c.diagram.k())));
    }
    Ok(Cell { diagram: c.diagram.relabel_by_inverse(sigma), dim: c.dim })
}

/// Assembles `U = ⊔ Tᵢ` over an outer diagram: `U` is ordered by the image in
/// the outer domain and then by the order of `Tᵢ`; labels of block `i` are
/// shifted by the arities of earlier blocks; the map to `[s]` is `h ∘ g`.
/// Returns the composite diagram and, for each block, the positions of `Tᵢ` in `U`.
fn assemble(outer: &Diagram, inners: &[&Diagram]) -> Result<(Diagram, Vec<Vec<usize>>)> {
    let k = outer.k();
    if inners.len() != k {
        return Err(Error::Arity(format!("{} inner diagrams for arity {k}", inners.len())));
    }
    let mut offsets = vec![0usize];
    for d in inners {
        offsets.push(offsets.last().unwrap() + d.k());
    }
    let total = offsets[k];
    let mut elems: Vec<(usize, usize, usize)> = Vec::new(); // (g(u), block, index in T_i)
    for (i, d) in inners.iter().enumerate() {
        let fiber = outer.f().fiber(i + 1);
        if fiber.is_empty() {
            if !d.is_empty() || d.k() != 0 {
                return Err(Error::Arity(format!("block {} is empty but its inner diagram is not", i + 1)));
            }
            continue;
        }
        if d.s() + 1 != fiber.len() {
            return Err(Error::Arity(format!(
                "inner diagram {} targets [{}] but the fiber has {} elements",
                i + 1,
                d.s(),
                fiber.len()
            )));
        }
        for (u, &hv) in d.h().iter().enumerate() {
            elems.push((fiber[hv], i, u));
        }
    }
    elems.sort();
    let mut positions: Vec<Vec<usize>> = inners.iter().map(|d| vec![0; d.len()]).collect();
    let mut f = Vec::with_capacity(elems.len());
    let mut h = Vec::with_capacity(elems.len());
    for (pos, &(g, i, u)) in elems.iter().enumerate() {
        positions[i][u] = pos;
        f.push(offsets[i] + inners[i].f().get(u));
        h.push(outer.h()[g]);
    }
    let d = Diagram::new(LabelMap::new(total, f)?, h, outer.s())?;
    Ok((d, positions))
}

/// Composite of diagrams without normalisation.
pub fn compose_diagrams(outer: &Diagram, inners: &[Diagram]) -> Result<Diagram> {
    let refs: Vec<&Diagram> = inners.iter().collect();
    assemble(outer, &refs).map(|x| x.0)
}

/// `Γ`: composite of an outer diagram with one simplex per block (all of
/// the same degree), normalised.
pub fn gamma_compose(outer: &Diagram, inners: &[XiSimplex]) -> Result<XiSimplex> {
    let Some(ell) = inners.first().map(|x| x.ell) else {
        return Err(Error::Arity("composition needs the degree of its inputs; got no inputs".into()));
    };
    if inners.iter().any(|x| x.ell != ell) {
        return Err(Error::Arity("inner simplices of different degrees".into()));
    }
    let refs: Vec<&Diagram> = inners.iter().map(|x| &x.diagram).collect();
    let (diagram, positions) = assemble(outer, &refs)?;
    let sigmas = inners
        .iter()
        .enumerate()
        .flat_map(|(i, x)| {
            let pos = &positions[i];
            x.sigmas.iter().map(move |s| s.iter().map(|&u| pos[u]).collect::<Vec<usize>>())
        })
        .collect();
    Ok(reduce_simplex(&XiSimplex { ell, diagram, sigmas }))
}

/// `Λ`: regroups the labels of `x` into consecutive blocks of sizes
/// `grouping`, giving an outer diagram `(ψ ∘ f, h)` and one inner simplex per
/// block. Inverse to [`gamma_compose`].
pub fn lambda_regroup(x: &XiSimplex, grouping: &[usize]) -> Result<(Diagram, Vec<XiSimplex>)> {
    if grouping.iter().sum::<usize>() != x.k() {
        return Err(Error::Arity(format!("grouping {grouping:?} does not add up to {}", x.k())));
    }
    let mut block_of = vec![0usize; x.k() + 1];
    let mut offsets = vec![0usize];
    for (i, &j) in grouping.iter().enumerate() {
        let o = *offsets.last().unwrap();
        for l in o + 1..=o + j {
            block_of[l] = i;
        }
        offsets.push(o + j);
    }
    let f = x.diagram.f().values();
    let outer_f: Vec<usize> = f.iter().map(|&l| block_of[l] + 1).collect();
    let outer = Diagram::new(LabelMap::new(grouping.len(), outer_f)?, x.diagram.h().to_vec(), x.diagram.s())?;
    let mut inners = Vec::with_capacity(grouping.len());
    for (i, &j) in grouping.iter().enumerate() {
        let members: Vec<usize> = (0..f.len()).filter(|&p| block_of[f[p]] == i).collect();
        let mut local = vec![usize::MAX; f.len()];
        for (q, &p) in members.iter().enumerate() {
            local[p] = q;
        }
        let fi: Vec<usize> = members.iter().map(|&p| f[p] - offsets[i]).collect();
        let hi: Vec<usize> = (0..members.len()).collect();
        let si = members.len().saturating_sub(1);
        let d = Diagram::new(LabelMap::new(j, fi)?, hi, si)?;
        let sigmas = (offsets[i]..offsets[i] + j).map(|l| x.sigmas[l].iter().map(|&p| local[p]).collect()).collect();
        inners.push(XiSimplex { ell: x.ell, diagram: d, sigmas });
    }
    Ok((outer, inners))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::complexity;

    fn simplex(k: usize, f: &[usize], h: &[usize], s: usize, sigmas: &[&[usize]]) -> XiSimplex {
        let d = Diagram::from_parts(k, f.to_vec(), h.to_vec(), s).unwrap();
        let ell = sigmas.first().map_or(0, |x| x.len() - 1);
        XiSimplex::new(d, ell, sigmas.iter().map(|x| x.to_vec()).collect()).unwrap()
    }

    #[test]
    fn sigma_star_examples() {
        let x = simplex(2, &[1, 2, 1], &[0, 0, 0], 0, &[&[0, 2], &[1, 1]]);
        assert_eq!(sigma_star(&x, &Permutation::identity(2)).unwrap(), x);
        let swap = Permutation::new(vec![2, 1]).unwrap();
        let y = sigma_star(&x, &swap).unwrap();
        assert_eq!(y, simplex(2, &[2, 1, 2], &[0, 0, 0], 0, &[&[1, 1], &[0, 2]]));
        let c = Cell::new(Diagram::from_parts(2, vec![1, 2], vec![0, 0], 0).unwrap()).unwrap();
        assert_eq!(sigma_star_cell(&c, &swap).unwrap().diagram.f().values(), &[2, 1]);
    }

    #[test]
    fn unit_laws() {
        let x = simplex(2, &[1, 2, 1], &[0, 1, 1], 1, &[&[0, 2], &[1, 1]]);
        // outer of arity one over [s] with h = identity
        let id_outer = Diagram::from_parts(1, vec![1, 1], vec![0, 1], 1).unwrap();
        assert_eq!(gamma_compose(&id_outer, std::slice::from_ref(&x)).unwrap(), x);
        // arity-one inners (1^m, id, σ) recover the outer with σ
        let outer = x.diagram.clone();
        let inners: Vec<XiSimplex> = (1..=2)
            .map(|i| {
                let fib = outer.f().fiber(i);
                let d = Diagram::from_parts(1, vec![1; fib.len()], (0..fib.len()).collect(), fib.len() - 1).unwrap();
                let local: Vec<usize> =
                    x.sigmas[i - 1].iter().map(|p| fib.iter().position(|q| q == p).unwrap()).collect();
                XiSimplex::new(d, x.ell, vec![local]).unwrap()
            })
            .collect();
        assert_eq!(gamma_compose(&outer, &inners).unwrap(), x);
    }

    #[test]
    fn regroup_round_trip() {
        let x = simplex(3, &[1, 3, 2, 1, 3], &[0, 0, 1, 1, 2], 2, &[&[0, 3], &[2, 2], &[1, 4]]);
        for grouping in [vec![3], vec![1, 1, 1], vec![2, 1], vec![1, 2], vec![0, 3], vec![3, 0], vec![1, 0, 2]] {
            let (outer, inners) = lambda_regroup(&x, &grouping).unwrap();
            assert_eq!(gamma_compose(&outer, &inners).unwrap(), x, "grouping {grouping:?}");
        }
        let (outer, _) = lambda_regroup(&x, &[3]).unwrap();
        assert_eq!(outer.f().values(), &[1, 1, 1, 1, 1]);
    }

    #[test]
    fn composite_complexity_is_bounded() {
        let outer = Diagram::from_parts(2, vec![1, 2, 1], vec![0, 0, 0], 0).unwrap();
        let a = simplex(2, &[1, 2], &[0, 1], 1, &[&[0], &[1]]);
        let b = simplex(1, &[1], &[0], 0, &[&[0]]);
        let c = gamma_compose(&outer, &[a, b]).unwrap();
        assert!(complexity(c.diagram.f()) <= 2);
        assert_eq!(c.k(), 3);
    }

    #[test]
    fn arity_zero_inner_drops_its_fiber() {
        let outer = Diagram::from_parts(2, vec![1, 2, 1], vec![0, 0, 0], 0).unwrap();
        let e = XiSimplex::new(Diagram::from_parts(0, vec![], vec![], 1).unwrap(), 0, vec![]).unwrap();
        let b = simplex(1, &[1], &[0], 0, &[&[0]]);
        let c = gamma_compose(&outer, &[e, b]).unwrap();
        assert_eq!(c, simplex(1, &[1], &[0], 0, &[&[0]]));
    }

    #[test]
    fn mismatches_are_rejected() {
        let outer = Diagram::from_parts(2, vec![1, 2, 1], vec![0, 0, 0], 0).unwrap();
        let b = simplex(1, &[1], &[0], 0, &[&[0]]);
        assert!(gamma_compose(&outer, std::slice::from_ref(&b)).is_err());
        assert!(gamma_compose(&outer, &[b.clone(), b.clone()]).is_err());
        assert!(lambda_regroup(&b, &[2]).is_err());
    }
}

//! Homology-preserving removal of cell pairs.
//!
//! Two kinds of pairs `(a, b)` with `<∂b, a> = ±1` are removed: collapses
//! (`b` is the only live coface of `a`) and coreductions (`a` is the only
//! live face of `b`). In both cases the quotient by the acyclic subcomplex
//! spanned by `b` and `∂b` is the restriction of the complex to the surviving
//! cells, so no boundary needs rewriting. Before that, one vertex per
//! connected component is set aside when the complex is augmented.

use super::ChainComplex;

pub(crate) struct Reduction {
    /// Vertices set aside; each contributes a free summand to `H_0`.
    pub set_aside: usize,
    pub alive: Vec<Vec<bool>>,
}

struct Find(Vec<u32>);

impl Find {
    fn root(&mut self, mut x: u32) -> u32 {
        while self.0[x as usize] != x {
            let p = self.0[x as usize];
            self.0[x as usize] = self.0[p as usize];
            x = p;
        }
        x
    }
}

pub(crate) fn reduce(cc: &ChainComplex) -> Reduction {
    let top = cc.generators.len();
    let mut alive: Vec<Vec<bool>> = cc.generators.iter().map(|&n| vec![true; n]).collect();
    if top == 0 {
        return Reduction { set_aside: 0, alive };
    }
    let cob: Vec<_> = cc.boundaries.iter().map(|b| b.transpose()).collect();
    // live face / coface counts
    let mut bd_count: Vec<Vec<u32>> = Vec::with_capacity(top);
    let mut cobd_count: Vec<Vec<u32>> = Vec::with_capacity(top);
    for d in 0..top {
        bd_count.push(if d == 0 {
            vec![0; cc.generators[0]]
        } else {
            (0..cc.generators[d]).map(|c| cc.boundaries[d - 1].column(c).len() as u32).collect()
        });
        cobd_count.push(if d + 1 < top {
            (0..cc.generators[d]).map(|c| cob[d].column(c).len() as u32).collect()
        } else {
            vec![0; cc.generators[d]]
        });
    }

    let mut stack: Vec<(usize, u32)> = Vec::new();
    let kill = |d: usize,
                c: u32,
                alive: &mut Vec<Vec<bool>>,
                bd_count: &mut Vec<Vec<u32>>,
                cobd_count: &mut Vec<Vec<u32>>,
                stack: &mut Vec<(usize, u32)>| {
        alive[d][c as usize] = false;
        if d > 0 {
            for &(a, _) in cc.boundaries[d - 1].column(c as usize) {
                if alive[d - 1][a as usize] {
                    cobd_count[d - 1][a as usize] -= 1;
                    stack.push((d - 1, a));
                }
            }
        }
        if d + 1 < top {
            for &(b, _) in cob[d].column(c as usize) {
                if alive[d + 1][b as usize] {
                    bd_count[d + 1][b as usize] -= 1;
                    stack.push((d + 1, b));
                }
            }
        }
    };

    let mut set_aside = 0;
    let augmented =
        top < 2 || (0..cc.generators[1]).all(|c| cc.boundaries[0].column(c).iter().map(|e| e.1).sum::<i64>() == 0);
    if augmented {
        let mut uf = Find((0..cc.generators[0] as u32).collect());
        if top >= 2 {
            for c in 0..cc.generators[1] {
                let col = cc.boundaries[0].column(c);
                if let Some(&(first, _)) = col.first() {
                    for &(r, _) in &col[1..] {
                        let (x, y) = (uf.root(first), uf.root(r));
                        if x != y {
                            uf.0[x.max(y) as usize] = x.min(y);
                        }
                    }
                }
            }
        }
        for v in 0..cc.generators[0] as u32 {
            if uf.root(v) == v {
                set_aside += 1;
                kill(0, v, &mut alive, &mut bd_count, &mut cobd_count, &mut stack);
            }
        }
    }
    for d in (0..top).rev() {
        for c in (0..cc.generators[d] as u32).rev() {
            stack.push((d, c));
        }
    }
    while let Some((d, c)) = stack.pop() {
        if !alive[d][c as usize] {
            continue;
        }
        if d > 0 && bd_count[d][c as usize] == 1 {
            let face = cc.boundaries[d - 1].column(c as usize).iter().find(|e| alive[d - 1][e.0 as usize]).copied();
            if let Some((a, v)) = face {
                if v.abs() == 1 {
                    kill(d, c, &mut alive, &mut bd_count, &mut cobd_count, &mut stack);
                    kill(d - 1, a, &mut alive, &mut bd_count, &mut cobd_count, &mut stack);
                    continue;
                }
            }
        }
        if d + 1 < top && cobd_count[d][c as usize] == 1 {
            let coface = cob[d].column(c as usize).iter().find(|e| alive[d + 1][e.0 as usize]).copied();
            if let Some((b, v)) = coface {
                if v.abs() == 1 {
                    kill(d, c, &mut alive, &mut bd_count, &mut cobd_count, &mut stack);
                    kill(d + 1, b, &mut alive, &mut bd_count, &mut cobd_count, &mut stack);
                }
            }
        }
    }
    Reduction { set_aside, alive }
}

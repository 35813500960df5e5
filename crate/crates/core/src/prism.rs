//! Exact point-level maps of the diagram model: the normalisation `Υ` of
//! coordinate pairs, the splitting `ω` into a simplex coordinate and a point
//! over `[0]` with its inverse `λ`, and the isomorphism `Δ• □ Δ• ≅ Δ•`.

use rand::Rng;
use serde_json::{json, Value};

use crate::combinat::{Diagram, LabelMap};
use crate::error::{invalid, Error, Result};
use crate::scalar::{rational_from_str, rational_to_string, RationalScalar};
use crate::Rational;

/// True iff every coordinate is nonnegative and they sum to one.
pub fn is_barycentric<Q: RationalScalar>(x: &[Q]) -> bool {
    !x.is_empty() && x.iter().all(|c| !c.is_negative()) && sum(x.iter()) == Q::one()
}

fn sum<'a, Q: RationalScalar + 'a>(it: impl Iterator<Item = &'a Q>) -> Q {
    it.fold(Q::zero(), |acc, c| acc + c.clone())
}

fn from_usize<Q: RationalScalar>(n: usize) -> Q {
    Q::from_usize(n).expect("small integer")
}

/// A diagram `(f, [m], h)` with a coordinate for each position, the
/// coordinates on each fiber of `f` forming a barycentric point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairPoint<Q> {
    pub diagram: Diagram,
    pub u: Vec<Q>,
}

impl<Q: RationalScalar> PairPoint<Q> {
    pub fn new(diagram: Diagram, u: Vec<Q>) -> Result<Self> {
        if u.len() != diagram.len() {
            return invalid(format!("{} coordinates for {} positions", u.len(), diagram.len()));
        }
        if !diagram.f().is_surjective() {
            return Err(Error::NotSurjective(diagram.k()));
        }
        if u.iter().any(|c| c.is_negative()) {
            return invalid("negative coordinate");
        }
        for i in 1..=diagram.k() {
            if sum(diagram.f().fiber(i).iter().map(|&a| &u[a])) != Q::one() {
                return invalid(format!("coordinates on fiber {i} do not sum to one"));
            }
        }
        Ok(PairPoint { diagram, u })
    }

    pub fn k(&self) -> usize {
        self.diagram.k()
    }

    /// Nondegenerate diagram with all coordinates positive.
    pub fn is_nondegenerate(&self) -> bool {
        self.diagram.is_nondegenerate() && self.u.iter().all(|c| c.is_positive())
    }
}

impl PairPoint<Rational> {
    pub fn to_json(&self) -> Value {
        json!({
            "diagram": self.diagram,
            "u": self.u.iter().map(rational_to_string).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let diagram: Diagram = serde_json::from_value(v["diagram"].clone())?;
        let u = v["u"]
            .as_array()
            .ok_or_else(|| Error::Json("missing \"u\"".into()))?
            .iter()
            .map(|c| {
                c.as_str().ok_or_else(|| Error::Json("coordinates are strings".into())).and_then(rational_from_str)
            })
            .collect::<Result<Vec<_>>>()?;
        PairPoint::new(diagram, u)
    }
}

/// `Υ`: drops positions with coordinate zero, then merges runs of adjacent
/// positions with equal label and equal image under `h`, adding their
/// coordinates.
pub fn upsilon<Q: RationalScalar>(p: &PairPoint<Q>) -> PairPoint<Q> {
    let d = &p.diagram;
    let (mut f, mut h, mut u) = (Vec::new(), Vec::new(), Vec::<Q>::new());
    for a in 0..d.len() {
        if p.u[a].is_zero() {
            continue;
        }
        let (fa, ha) = (d.f().get(a), d.h()[a]);
        if f.last() == Some(&fa) && h.last() == Some(&ha) {
            let last = u.last_mut().expect("nonempty");
            *last = last.clone() + p.u[a].clone();
        } else {
            f.push(fa);
            h.push(ha);
            u.push(p.u[a].clone());
        }
    }
    let diagram = Diagram::new(LabelMap::new(d.k(), f).expect("labels"), h, d.s()).expect("monotone");
    PairPoint { diagram, u }
}

/// `η_*`: the same coordinates over `[0]`, normalised.
pub fn eta_star<Q: RationalScalar>(p: &PairPoint<Q>) -> PairPoint<Q> {
    let diagram = Diagram::constant(p.diagram.f().clone());
    upsilon(&PairPoint { diagram, u: p.u.clone() })
}

/// `ω = (v, η_* p)` with `v_a = (1/k) Σ_{h(b)=a} u_b`.
pub fn omega<Q: RationalScalar>(p: &PairPoint<Q>) -> Result<(Vec<Q>, PairPoint<Q>)> {
    let k = p.k();
    if k == 0 {
        return Err(Error::Arity("the splitting needs arity at least one".into()));
    }
    let kq = from_usize::<Q>(k);
    let mut v = vec![Q::zero(); p.diagram.s() + 1];
    for (a, &ha) in p.diagram.h().iter().enumerate() {
        v[ha] = v[ha].clone() + p.u[a].clone();
    }
    let v = v.into_iter().map(|c| c / kq.clone()).collect();
    Ok((v, eta_star(p)))
}

/// `λ`: the inverse of `ω` over a fixed nondegenerate point over `[0]`.
///
/// The cumulative sums `(1/k) Σ_{i≤j} u_i` of the base and `Σ_{a'≤a} v_{a'}`
/// of `v` cut `[0,1]` into pieces; each piece of positive length becomes a
/// position labelled by its base index `j` (through `f`) and its index `a`
/// in `[s]` (through `h`), with coordinate `k` times its length.
pub fn lambda<Q: RationalScalar>(v: &[Q], base: &PairPoint<Q>) -> Result<PairPoint<Q>> {
    if !is_barycentric(v) {
        return invalid("v is not a barycentric point");
    }
    if base.diagram.s() != 0 || !base.is_nondegenerate() {
        return invalid("base must be a nondegenerate point over [0]");
    }
    let k = base.k();
    if k == 0 {
        return Err(Error::Arity("the splitting needs arity at least one".into()));
    }
    let kq = from_usize::<Q>(k);
    let (mut f, mut h, mut u) = (Vec::new(), Vec::new(), Vec::new());
    let (mut j, mut a) = (0usize, 0usize);
    let mut ucum = base.u[0].clone() / kq.clone();
    let mut vcum = v[0].clone();
    let mut pos = Q::zero();
    loop {
        let next = if ucum < vcum { ucum.clone() } else { vcum.clone() };
        if next > pos {
            f.push(base.diagram.f().get(j));
            h.push(a);
            u.push((next.clone() - pos) * kq.clone());
            pos = next;
        }
        let end_u = j + 1 == base.u.len();
        let end_v = a + 1 == v.len();
        if end_u && end_v {
            break;
        }
        // advance whichever threshold was reached; ties advance the base first
        if !end_u && ucum <= vcum {
            j += 1;
            ucum = ucum + base.u[j].clone() / kq.clone();
        } else if !end_v {
            a += 1;
            vcum = vcum + v[a].clone();
        } else {
            j += 1;
            ucum = ucum + base.u[j].clone() / kq.clone();
        }
    }
    let diagram = Diagram::new(LabelMap::new(k, f)?, h, v.len() - 1)?;
    Ok(upsilon(&PairPoint::new(diagram, u)?))
}

/// `f^m((s_0..s_p),(t_0..t_q)) = (s_0/2, .., (s_p+t_0)/2, .., t_q/2)`.
pub fn box_f<Q: RationalScalar>(left: &[Q], right: &[Q]) -> Result<Vec<Q>> {
    if !is_barycentric(left) || !is_barycentric(right) {
        return invalid("inputs must be barycentric points");
    }
    let two = from_usize::<Q>(2);
    let mut out: Vec<Q> = left.iter().map(|c| c.clone() / two.clone()).collect();
    let last = out.len() - 1;
    out[last] = out[last].clone() + right[0].clone() / two.clone();
    out.extend(right[1..].iter().map(|c| c.clone() / two.clone()));
    Ok(out)
}

/// `g^m(u)`: split at the smallest `p` with `u_0+..+u_p ≥ 1/2`.
pub fn box_g<Q: RationalScalar>(u: &[Q]) -> Result<(Vec<Q>, Vec<Q>)> {
    if !is_barycentric(u) {
        return invalid("input must be a barycentric point");
    }
    let two = from_usize::<Q>(2);
    let half = Q::one() / two.clone();
    let mut prefix = Q::zero();
    let mut p = 0;
    loop {
        let next = prefix.clone() + u[p].clone();
        if next >= half {
            break;
        }
        prefix = next;
        p += 1;
    }
    let mut left: Vec<Q> = u[..p].iter().map(|c| c.clone() * two.clone()).collect();
    left.push(Q::one() - prefix.clone() * two.clone());
    let mut right = vec![(prefix + u[p].clone()) * two.clone() - Q::one()];
    right.extend(u[p + 1..].iter().map(|c| c.clone() * two.clone()));
    Ok((left, right))
}

/// Representative of a class of `Δ• □ Δ•` whose left factor ends with a
/// nonzero coordinate, using `(x, d⁰y) ~ (d^{|x|+1}x, y)`.
pub fn box_normalize<Q: RationalScalar>(left: &[Q], right: &[Q]) -> (Vec<Q>, Vec<Q>) {
    let (mut l, mut r) = (left.to_vec(), right.to_vec());
    while l.len() > 1 && l[l.len() - 1].is_zero() {
        l.pop();
        r.insert(0, Q::zero());
    }
    (l, r)
}

/// Coface `dⁱ` on `Δ•`: insert a zero coordinate at position `i`.
pub fn simplex_coface<Q: RationalScalar>(x: &[Q], i: usize) -> Result<Vec<Q>> {
    if i > x.len() {
        return invalid(format!("coface d^{i} on a point of dimension {}", x.len() as isize - 1));
    }
    let mut y = x.to_vec();
    y.insert(i, Q::zero());
    Ok(y)
}

/// Codegeneracy `sⁱ` on `Δ•`: add coordinates `i` and `i+1`.
pub fn simplex_codegeneracy<Q: RationalScalar>(x: &[Q], i: usize) -> Result<Vec<Q>> {
    if i + 1 >= x.len() {
        return invalid(format!("codegeneracy s^{i} on a point of dimension {}", x.len() as isize - 1));
    }
    let mut y = x.to_vec();
    let c = y.remove(i + 1);
    y[i] = y[i].clone() + c;
    Ok(y)
}

/// Coface on `Δ• □ Δ•`: acts on the left factor when `i ≤ |x|`.
pub fn box_coface<Q: RationalScalar>(left: &[Q], right: &[Q], i: usize) -> Result<(Vec<Q>, Vec<Q>)> {
    let p = left.len() - 1;
    if i <= p {
        Ok((simplex_coface(left, i)?, right.to_vec()))
    } else {
        Ok((left.to_vec(), simplex_coface(right, i - p)?))
    }
}

/// Codegeneracy on `Δ• □ Δ•`: acts on the left factor when `i ≤ |x| - 1`.
pub fn box_codegeneracy<Q: RationalScalar>(left: &[Q], right: &[Q], i: usize) -> Result<(Vec<Q>, Vec<Q>)> {
    let p = left.len() - 1;
    if i < p {
        Ok((simplex_codegeneracy(left, i)?, right.to_vec()))
    } else {
        Ok((left.to_vec(), simplex_codegeneracy(right, i - p)?))
    }
}

/// A random barycentric point of dimension `m` with small denominators;
/// about a third of the coordinates are zero.
pub fn random_barycentric<Q: RationalScalar, R: Rng + ?Sized>(m: usize, rng: &mut R) -> Vec<Q> {
    loop {
        let w: Vec<usize> = (0..=m).map(|_| if rng.gen_bool(0.3) { 0 } else { rng.gen_range(1..=12) }).collect();
        let total: usize = w.iter().sum();
        if total > 0 {
            return w.into_iter().map(|c| from_usize::<Q>(c) / from_usize::<Q>(total)).collect();
        }
    }
}

/// A random nondegenerate pair over `[s]` of arity `k` with at most
/// `max_len` positions and positive coordinates.
pub fn random_nondegenerate<Q: RationalScalar, R: Rng + ?Sized>(
    k: usize,
    s: usize,
    max_len: usize,
    rng: &mut R,
) -> PairPoint<Q> {
    assert!(k >= 1 && max_len >= k);
    loop {
        let m = rng.gen_range(k..=max_len);
        let f: Vec<usize> = (0..m).map(|_| rng.gen_range(1..=k)).collect();
        let mut h: Vec<usize> = (0..m).map(|_| rng.gen_range(0..=s)).collect();
        h.sort_unstable();
        let Ok(d) = Diagram::from_parts(k, f, h, s) else { continue };
        if !d.f().is_surjective() || !d.is_nondegenerate() {
            continue;
        }
        let mut u = vec![Q::zero(); m];
        for i in 1..=k {
            let fib = d.f().fiber(i);
            let mut w: Vec<usize> = fib.iter().map(|_| rng.gen_range(1..=9)).collect();
            let total: usize = w.iter().sum();
            for (a, c) in fib.iter().zip(w.drain(..)) {
                u[*a] = from_usize::<Q>(c) / from_usize::<Q>(total);
            }
        }
        return PairPoint::new(d, u).expect("valid point");
    }
}

/// A random presentation of the same point as `p`: positions are split into
/// adjacent copies sharing the coordinate, and positions with coordinate
/// zero are inserted with arbitrary labels.
pub fn random_presentation<Q: RationalScalar, R: Rng + ?Sized>(
    p: &PairPoint<Q>,
    steps: usize,
    rng: &mut R,
) -> PairPoint<Q> {
    let d = &p.diagram;
    let (mut f, mut h, mut u) = (d.f().values().to_vec(), d.h().to_vec(), p.u.clone());
    for _ in 0..steps {
        if rng.gen_bool(0.5) && !f.is_empty() {
            let a = rng.gen_range(0..f.len());
            let t = from_usize::<Q>(rng.gen_range(0..=4)) / from_usize::<Q>(4);
            let part = u[a].clone() * t;
            u[a] = u[a].clone() - part.clone();
            f.insert(a + 1, f[a]);
            h.insert(a + 1, h[a]);
            u.insert(a + 1, part);
        } else {
            let a = rng.gen_range(0..=f.len());
            let lo = if a == 0 { 0 } else { h[a - 1] };
            let hi = if a == h.len() { d.s() } else { h[a] };
            f.insert(a, rng.gen_range(1..=d.k().max(1)));
            h.insert(a, rng.gen_range(lo..=hi));
            u.insert(a, Q::zero());
        }
    }
    let diagram = Diagram::new(LabelMap::new(d.k(), f).expect("labels"), h, d.s()).expect("monotone");
    PairPoint::new(diagram, u).expect("same fiber sums")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type Q = Rational;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    fn pair(k: usize, f: &[usize], h: &[usize], s: usize, u: Vec<Q>) -> PairPoint<Q> {
        PairPoint::new(Diagram::from_parts(k, f.to_vec(), h.to_vec(), s).unwrap(), u).unwrap()
    }

    #[test]
    fn upsilon_examples() {
        let p = pair(2, &[1, 2], &[0, 1], 1, vec![q(1, 1), q(1, 1)]);
        assert_eq!(upsilon(&p), p);
        for t in [q(1, 3), q(1, 2), q(0, 1), q(1, 1)] {
            let p = pair(2, &[1, 2, 1, 2], &[0, 0, 0, 0], 0, vec![q(1, 1), t.clone(), q(0, 1), q(1, 1) - t]);
            let want = pair(2, &[1, 2], &[0, 0], 0, vec![q(1, 1), q(1, 1)]);
            assert_eq!(upsilon(&p), want);
        }
    }

    #[test]
    fn upsilon_is_idempotent_and_presentation_independent() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let p: PairPoint<Q> = random_nondegenerate(3, 2, 7, &mut rng);
            assert_eq!(upsilon(&p), p);
            let r = random_presentation(&p, 6, &mut rng);
            let n = upsilon(&r);
            assert!(n.is_nondegenerate());
            assert_eq!(n, p);
            assert_eq!(upsilon(&n), n);
        }
    }

    #[test]
    fn omega_examples() {
        let p = pair(2, &[1, 2], &[0, 1], 1, vec![q(1, 1), q(1, 1)]);
        let (v, base) = omega(&p).unwrap();
        assert_eq!(v, vec![q(1, 2), q(1, 2)]);
        assert_eq!(base, pair(2, &[1, 2], &[0, 0], 0, vec![q(1, 1), q(1, 1)]));
        let p = pair(1, &[1, 1, 1], &[0, 1, 2], 2, vec![q(1, 2), q(1, 3), q(1, 6)]);
        assert_eq!(omega(&p).unwrap().0, p.u);
        let p = pair(2, &[2, 1], &[0, 0], 0, vec![q(1, 1), q(1, 1)]);
        assert_eq!(omega(&p).unwrap().0, vec![q(1, 1)]);
    }

    #[test]
    fn lambda_inverts_omega() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..300 {
            let k = rng.gen_range(1..=3);
            let s = rng.gen_range(0..=3);
            let p: PairPoint<Q> = random_nondegenerate(k, s, 6, &mut rng);
            let (v, base) = omega(&p).unwrap();
            assert_eq!(lambda(&v, &base).unwrap(), p);
            let w: Vec<Q> = random_barycentric(s, &mut rng);
            let back = lambda(&w, &base).unwrap();
            assert_eq!(omega(&back).unwrap(), (w, base));
        }
        // coinciding thresholds
        let base = pair(2, &[1, 2], &[0, 0], 0, vec![q(1, 1), q(1, 1)]);
        let v = vec![q(1, 2), q(0, 1), q(1, 2)];
        let x = lambda(&v, &base).unwrap();
        assert_eq!(x, pair(2, &[1, 2], &[0, 2], 2, vec![q(1, 1), q(1, 1)]));
    }

    #[test]
    fn box_maps() {
        assert_eq!(box_f(&[q(1, 1)], &[q(1, 1)]).unwrap(), vec![q(1, 1)]);
        let s0 = q(1, 3);
        assert_eq!(box_f(&[s0.clone(), q(2, 3)], &[q(1, 1)]).unwrap(), vec![q(1, 6), q(5, 6)]);
        assert_eq!(box_g(&[q(1, 4), q(3, 4)]).unwrap(), (vec![q(1, 2), q(1, 2)], vec![q(1, 1)]));
        assert_eq!(box_g(&[q(1, 1)]).unwrap(), (vec![q(1, 1)], vec![q(1, 1)]));
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..300 {
            let m = rng.gen_range(0..=4);
            let u: Vec<Q> = random_barycentric(m, &mut rng);
            let (l, r) = box_g(&u).unwrap();
            assert_eq!(box_f(&l, &r).unwrap(), u);
            let p = rng.gen_range(0..=m);
            let x: Vec<Q> = random_barycentric(p, &mut rng);
            let y: Vec<Q> = random_barycentric(m - p, &mut rng);
            let (l, r) = box_g(&box_f(&x, &y).unwrap()).unwrap();
            assert_eq!((l, r), box_normalize(&x, &y));
            assert_eq!(
                box_f(&x, &simplex_coface(&y, 0).unwrap()).unwrap(),
                box_f(&simplex_coface(&x, p + 1).unwrap(), &y).unwrap()
            );
        }
    }

    #[test]
    fn json_round_trip() {
        let p = pair(2, &[1, 2, 1], &[0, 0, 1], 1, vec![q(1, 3), q(1, 1), q(2, 3)]);
        assert_eq!(PairPoint::from_json(&p.to_json()).unwrap(), p);
        assert_eq!(p.to_json()["u"][0], "1/3");
    }
}

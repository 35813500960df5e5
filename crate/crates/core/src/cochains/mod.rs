//! Unnormalised cochains on finite simplicial sets with coefficients in `ℤ`
//! or `ℤ/m`, the cup and join (`⊔`) products, the operations `⟨f⟩` indexed by
//! label maps and their duals `⌊f⌋`.
//!
//! A cochain of degree `p` is a function on all `p`-simplices, degenerate ones
//! included. Degree `-1` is the augmented degree: a single value on the empty
//! simplex.

mod fixtures;
mod sset;

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, RngCore};

use crate::brace::AngleStructure;

use crate::combinat::LabelMap;
use crate::error::{invalid, Error, Result};

pub use fixtures::{boundary_delta3, delta, fixture, rp2, sphere, FIXTURE_NAMES};
pub use sset::{surjections, FinSimplicialSet, Simplex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ring {
    Integers,
    Modulo(u64),
}

impl Ring {
    fn validate(self) -> Result<()> {
        match self {
            Ring::Modulo(m) if m < 2 || m > i64::MAX as u64 => invalid(format!("modulus {m}")),
            _ => Ok(()),
        }
    }

    pub fn normalize(self, v: i64) -> i64 {
        match self {
            Ring::Integers => v,
            Ring::Modulo(m) => v.rem_euclid(m as i64),
        }
    }

    pub fn add(self, a: i64, b: i64) -> Result<i64> {
        match self {
            Ring::Integers => a.checked_add(b).ok_or_else(overflow),
            Ring::Modulo(m) => Ok((a as i128 + b as i128).rem_euclid(m as i128) as i64),
        }
    }

    pub fn mul(self, a: i64, b: i64) -> Result<i64> {
        match self {
            Ring::Integers => a.checked_mul(b).ok_or_else(overflow),
            Ring::Modulo(m) => Ok((a as i128 * b as i128).rem_euclid(m as i128) as i64),
        }
    }

    /// A uniformly random element; integers are drawn from `-3..=3`.
    pub fn random<R: Rng + ?Sized>(self, rng: &mut R) -> i64 {
        match self {
            Ring::Integers => rng.gen_range(-3..=3),
            Ring::Modulo(m) => rng.gen_range(0..m as i64),
        }
    }
}

fn overflow() -> Error {
    Error::Invalid("integer coefficient overflow".into())
}

#[derive(Clone)]
pub struct Cochain {
    space: Arc<FinSimplicialSet>,
    ring: Ring,
    degree: isize,
    values: BTreeMap<Simplex, i64>,
}

impl PartialEq for Cochain {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring
            && self.degree == other.degree
            && self.values == other.values
            && (Arc::ptr_eq(&self.space, &other.space) || self.space == other.space)
    }
}

impl Eq for Cochain {}

impl std::fmt::Debug for Cochain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Cochain")
            .field("space", &self.space.name())
            .field("ring", &self.ring)
            .field("degree", &self.degree)
            .field("values", &self.values)
            .finish()
    }
}

impl Cochain {
    pub fn from_fn(
        space: &Arc<FinSimplicialSet>,
        ring: Ring,
        degree: isize,
        mut value: impl FnMut(&Simplex) -> Result<i64>,
    ) -> Result<Self> {
        ring.validate()?;
        if degree < -1 {
            return invalid(format!("cochain degree {degree}"));
        }
        let mut values = BTreeMap::new();
        for s in space.simplices(degree) {
            let v = ring.normalize(value(&s)?);
            if v != 0 {
                values.insert(s, v);
            }
        }
        Ok(Cochain { space: space.clone(), ring, degree, values })
    }

    pub fn constant(space: &Arc<FinSimplicialSet>, ring: Ring, degree: isize, c: i64) -> Result<Self> {
        Cochain::from_fn(space, ring, degree, |_| Ok(c))
    }

    pub fn zero(space: &Arc<FinSimplicialSet>, ring: Ring, degree: isize) -> Result<Self> {
        Cochain::constant(space, ring, degree, 0)
    }

    /// The constant 1 in degree 0, the unit for `⌣`.
    pub fn unit(space: &Arc<FinSimplicialSet>, ring: Ring) -> Result<Self> {
        Cochain::constant(space, ring, 0, 1)
    }

    /// The constant 1 in the augmented degree, the unit element `ε`.
    pub fn epsilon(space: &Arc<FinSimplicialSet>, ring: Ring) -> Result<Self> {
        Cochain::constant(space, ring, -1, 1)
    }

    pub fn random<R: Rng + ?Sized>(
        space: &Arc<FinSimplicialSet>,
        ring: Ring,
        degree: isize,
        rng: &mut R,
    ) -> Result<Self> {
        Cochain::from_fn(space, ring, degree, |_| Ok(ring.random(rng)))
    }

    pub fn space(&self) -> &Arc<FinSimplicialSet> {
        &self.space
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn degree(&self) -> isize {
        self.degree
    }

    /// Nonzero values.
    pub fn support(&self) -> impl Iterator<Item = (&Simplex, i64)> {
        self.values.iter().map(|(s, &v)| (s, v))
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn eval(&self, s: &Simplex) -> i64 {
        self.values.get(s).copied().unwrap_or(0)
    }

    fn compatible(&self, other: &Cochain) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::MixedRings);
        }
        if !(Arc::ptr_eq(&self.space, &other.space) || self.space == other.space) {
            return invalid("cochains on different simplicial sets");
        }
        Ok(())
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        self.compatible(other)?;
        if self.degree != other.degree {
            return invalid("sum of cochains of different degrees");
        }
        Cochain::from_fn(&self.space, self.ring, self.degree, |s| self.ring.add(self.eval(s), other.eval(s)))
    }

    /// `g_* x` for a monotone `g: [p] -> [q]` given by its values:
    /// `(g_* x)(σ) = x(g^* σ)`.
    pub fn cosimplicial_action(&self, g: &[usize], target: isize) -> Result<Cochain> {
        if g.len() as isize != self.degree + 1 {
            return invalid(format!("map with {} values on a cochain of degree {}", g.len(), self.degree));
        }
        if target < -1 || !sset::is_monotone_into(g, (target + 1) as usize) {
            return invalid(format!("{g:?} is not a monotone map into [{target}]"));
        }
        Cochain::from_fn(&self.space, self.ring, target, |s| Ok(self.eval(&self.space.pullback(s, g)?)))
    }

    /// `d^i`.
    pub fn coface(&self, i: usize) -> Result<Cochain> {
        let p = self.degree;
        if p < 0 || i as isize > p + 1 {
            return invalid(format!("coface d^{i} in degree {p}"));
        }
        let g: Vec<usize> = (0..=p as usize).map(|a| if a < i { a } else { a + 1 }).collect();
        self.cosimplicial_action(&g, p + 1)
    }

    /// `s^i`.
    pub fn codegeneracy(&self, i: usize) -> Result<Cochain> {
        let p = self.degree;
        if p < 1 || i as isize >= p {
            return invalid(format!("codegeneracy s^{i} in degree {p}"));
        }
        let g: Vec<usize> = (0..=p as usize).map(|a| if a <= i { a } else { a - 1 }).collect();
        self.cosimplicial_action(&g, p - 1)
    }
}

/// The cochains of a fixed space and ring as an augmented cosimplicial object
/// with the operations `⟨f⟩` for all label maps.
#[derive(Debug, Clone)]
pub struct CochainStructure {
    pub space: Arc<FinSimplicialSet>,
    pub ring: Ring,
}

impl AngleStructure for CochainStructure {
    type Elem = Cochain;

    fn degree(&self, x: &Cochain) -> isize {
        x.degree
    }

    fn epsilon(&self) -> Cochain {
        Cochain::epsilon(&self.space, self.ring).expect("valid ring")
    }

    fn act(&self, x: &Cochain, g: &[usize], target: isize) -> Result<Cochain> {
        x.cosimplicial_action(g, target)
    }

    fn angle(&self, f: &LabelMap, xs: &[Cochain]) -> Result<Cochain> {
        if xs.is_empty() && f.is_empty() {
            return Ok(self.epsilon());
        }
        angle_f(f, xs)
    }

    fn complexity_bound(&self) -> Option<usize> {
        None
    }

    fn random_element(&self, degree: isize, rng: &mut dyn RngCore) -> Cochain {
        Cochain::random(&self.space, self.ring, degree, rng).expect("valid ring")
    }
}

/// Restriction of `σ` to the face spanned by `u`.
pub fn restrict_simplex(space: &FinSimplicialSet, s: &Simplex, u: &[usize]) -> Result<Simplex> {
    space.restrict(s, u)
}

/// `(x ⌣ y)(σ) = x(σ(0..p)) · y(σ(p..p+q))`.
pub fn cup(x: &Cochain, y: &Cochain) -> Result<Cochain> {
    x.compatible(y)?;
    let (p, q) = (x.degree, y.degree);
    if p < 0 || q < 0 {
        return invalid("cup product of augmented cochains");
    }
    let (p, q) = (p as usize, q as usize);
    let front: Vec<usize> = (0..=p).collect();
    let back: Vec<usize> = (p..=p + q).collect();
    let space = &x.space;
    Cochain::from_fn(space, x.ring, (p + q) as isize, |s| {
        x.ring.mul(x.eval(&space.pullback(s, &front)?), y.eval(&space.pullback(s, &back)?))
    })
}

/// `(x ⊔ y)(σ) = x(σ(0..p)) · y(σ(p+1..p+q+1))`. Either factor may be
/// augmented, in which case its block is empty.
pub fn sqcup(x: &Cochain, y: &Cochain) -> Result<Cochain> {
    let (a, b) = ((x.degree + 1) as usize, (y.degree + 1) as usize);
    let f = LabelMap::new(2, [vec![1; a], vec![2; b]].concat())?;
    angle_f(&f, &[x.clone(), y.clone()])
}

/// `⟨f⟩(x_1,..,x_k)(σ) = ∏ x_i(σ(f⁻¹(i)))`, where `x_i` has degree
/// `|f⁻¹(i)| - 1`; an empty fiber contributes the value of the augmented
/// cochain `x_i`.
pub fn angle_f(f: &LabelMap, xs: &[Cochain]) -> Result<Cochain> {
    if xs.len() != f.k() {
        return Err(Error::Arity(format!("{} cochains for a label map of arity {}", xs.len(), f.k())));
    }
    let Some(first) = xs.first() else {
        return invalid("the operation needs at least one input to fix the space and ring");
    };
    for x in &xs[1..] {
        first.compatible(x)?;
    }
    let fibers: Vec<Vec<usize>> = (1..=f.k()).map(|i| f.fiber(i)).collect();
    for (i, (x, fib)) in xs.iter().zip(&fibers).enumerate() {
        if x.degree != fib.len() as isize - 1 {
            return invalid(format!(
                "input {} has degree {} but its fiber has {} elements",
                i + 1,
                x.degree,
                fib.len()
            ));
        }
    }
    let space = &first.space;
    let ring = first.ring;
    Cochain::from_fn(space, ring, f.len() as isize - 1, |s| {
        let mut acc = 1i64;
        for (x, fib) in xs.iter().zip(&fibers) {
            acc = ring.mul(acc, x.eval(&space.pullback(s, fib)?))?;
            if acc == 0 {
                break;
            }
        }
        Ok(acc)
    })
}

/// `⌊f⌋(σ) = (σ(f⁻¹(1)), .., σ(f⁻¹(k)))`.
pub fn floor_f(space: &FinSimplicialSet, f: &LabelMap, s: &Simplex) -> Result<Vec<Simplex>> {
    if s.degree() != f.len() as isize - 1 {
        return invalid(format!("simplex of degree {} for a label map on {} elements", s.degree(), f.len()));
    }
    if !f.is_surjective() {
        return Err(Error::NotSurjective(f.k()));
    }
    (1..=f.k()).map(|i| space.restrict(s, &f.fiber(i))).collect()
}

/// The quotient of `Δ[n]` by its `(n-1)`-skeleton. A `T`-simplex is a
/// monotone map `T -> [n]`; non-surjective maps are the basepoint.
#[derive(Debug, Clone)]
pub struct PointedSphereModel {
    n: usize,
    space: Arc<FinSimplicialSet>,
}

impl PointedSphereModel {
    pub fn new(n: usize) -> Self {
        PointedSphereModel { n, space: Arc::new(sphere(n)) }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn space(&self) -> &Arc<FinSimplicialSet> {
        &self.space
    }

    pub fn simplex(&self, phi: &[usize]) -> Result<Simplex> {
        if phi.is_empty() || !sset::is_monotone_into(phi, self.n + 1) {
            return invalid(format!("{phi:?} is not a monotone map into [{}]", self.n));
        }
        let top = if self.n == 0 { 1 } else { 0 };
        if is_onto(phi, self.n) {
            Ok(Simplex { base_dim: self.n, base: top, surj: phi.to_vec() })
        } else {
            Ok(Simplex { base_dim: 0, base: 0, surj: vec![0; phi.len()] })
        }
    }

    pub fn is_basepoint(&self, s: &Simplex) -> bool {
        s.base_dim == 0 && s.base == 0
    }
}

fn is_onto(phi: &[usize], n: usize) -> bool {
    let mut hit = vec![false; n + 1];
    for &v in phi {
        if v <= n {
            hit[v] = true;
        }
    }
    hit.iter().all(|&h| h)
}

/// For `f` of complexity at most `n` and `φ: T -> [n]` onto, at most one
/// restriction of `φ` to a fiber of `f` is onto, so `⌊f⌋(φ)` lies in the
/// wedge of spheres. Returns whether that holds for the given pair.
pub fn lemma_new6_check(f: &LabelMap, phi: &[usize], n: usize) -> bool {
    let onto = (1..=f.k())
        .filter(|&i| {
            let restricted: Vec<usize> = f.fiber(i).iter().map(|&a| phi[a]).collect();
            is_onto(&restricted, n)
        })
        .count();
    onto <= 1
}

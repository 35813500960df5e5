//! Nonsymmetric operads with multiplication, the augmented cosimplicial object
//! they determine, the operations `⟨f⟩` for label maps of complexity at most
//! two, and the reverse construction of an operad from such operations.

mod endo;

use std::fmt::Debug;

use rand::RngCore;

use crate::combinat::{complexity, LabelMap};
use crate::error::{invalid, Error, Result};

pub use endo::{EndoElem, EndomorphismOperad, FiniteMonoid};

/// A nonsymmetric operad together with `μ ∈ O(2)` and `e ∈ O(0)` making it
/// an algebra over the associative operad.
pub trait OperadWithMult {
    type Elem: Clone + PartialEq + Debug;

    fn arity(&self, x: &Self::Elem) -> usize;
    fn gamma(&self, x: &Self::Elem, ys: &[Self::Elem]) -> Result<Self::Elem>;
    fn id(&self) -> Self::Elem;
    fn mu(&self) -> Self::Elem;
    fn e(&self) -> Self::Elem;
}

/// An augmented cosimplicial object with operations
/// `⟨f⟩: ∏ X^{f⁻¹(i)} -> X^T`. Elements of `X^S` are identified with
/// elements of `X^{|S|-1}` through the order isomorphism.
pub trait AngleStructure {
    type Elem: Clone + PartialEq + Debug;

    /// `-1` for elements of the augmented degree.
    fn degree(&self, x: &Self::Elem) -> isize;
    /// The unit element of the augmented degree.
    fn epsilon(&self) -> Self::Elem;
    /// `g_* x` for a monotone `g: [deg x] -> [target]`.
    fn act(&self, x: &Self::Elem, g: &[usize], target: isize) -> Result<Self::Elem>;
    fn angle(&self, f: &LabelMap, xs: &[Self::Elem]) -> Result<Self::Elem>;
    /// Largest complexity of label maps on which `angle` is defined.
    fn complexity_bound(&self) -> Option<usize>;
    fn random_element(&self, degree: isize, rng: &mut dyn RngCore) -> Self::Elem;
}

/// Element of `O^S`: the point `ε` of the augmented degree, or an element of
/// `O(|S|-1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Cos<E> {
    Epsilon,
    Op(E),
}

impl<E> Cos<E> {
    pub fn op(&self) -> Option<&E> {
        match self {
            Cos::Epsilon => None,
            Cos::Op(x) => Some(x),
        }
    }
}

fn degree_of<O: OperadWithMult>(o: &O, x: &Cos<O::Elem>) -> isize {
    match x {
        Cos::Epsilon => -1,
        Cos::Op(x) => o.arity(x) as isize,
    }
}

fn op_of<'a, E>(x: &'a Cos<E>, what: &str) -> Result<&'a E> {
    x.op().ok_or_else(|| Error::Arity(format!("{what} is not defined on the augmented point")))
}

/// `x ∘_i y = γ(x; id,..,y,..,id)`, `y` in slot `i` (1-based).
pub fn circ_i<O: OperadWithMult>(o: &O, x: &O::Elem, i: usize, y: &O::Elem) -> Result<O::Elem> {
    let k = o.arity(x);
    if i == 0 || i > k {
        return Err(Error::Arity(format!("slot {i} of an element of arity {k}")));
    }
    let mut ys = vec![o.id(); k];
    ys[i - 1] = y.clone();
    o.gamma(x, &ys)
}

/// `d⁰ε = e`; for `x ∈ O^p`: `d⁰x = μ ∘₂ x`, `dⁱx = x ∘ᵢ μ` for `0 < i ≤ p`,
/// `d^{p+1}x = μ ∘₁ x`.
pub fn cosimplicial_d<O: OperadWithMult>(o: &O, i: usize, x: &Cos<O::Elem>) -> Result<Cos<O::Elem>> {
    let p = degree_of(o, x);
    if i as isize > p + 1 {
        return Err(Error::Arity(format!("coface d^{i} in degree {p}")));
    }
    let x = match x {
        Cos::Epsilon => return Ok(Cos::Op(o.e())),
        Cos::Op(x) => x,
    };
    let p = p as usize;
    let mu = o.mu();
    Ok(Cos::Op(if i == 0 {
        circ_i(o, &mu, 2, x)?
    } else if i <= p {
        circ_i(o, x, i, &mu)?
    } else {
        circ_i(o, &mu, 1, x)?
    }))
}

/// `sⁱx = x ∘_{i+1} e`.
pub fn cosimplicial_s<O: OperadWithMult>(o: &O, i: usize, x: &Cos<O::Elem>) -> Result<Cos<O::Elem>> {
    let p = degree_of(o, x);
    if p < 1 || i as isize >= p {
        return Err(Error::Arity(format!("codegeneracy s^{i} in degree {p}")));
    }
    Ok(Cos::Op(circ_i(o, op_of(x, "codegeneracy")?, i + 1, &o.e())?))
}

/// `g_* x` for a monotone `g: [p] -> [q]`, by factoring `g` into
/// codegeneracies followed by cofaces.
pub fn cosimplicial_action<O: OperadWithMult>(
    o: &O,
    x: &Cos<O::Elem>,
    g: &[usize],
    target: isize,
) -> Result<Cos<O::Elem>> {
    if g.len() as isize != degree_of(o, x) + 1 {
        return invalid(format!("map with {} values on an element of degree {}", g.len(), degree_of(o, x)));
    }
    if target < -1 || g.windows(2).any(|w| w[0] > w[1]) || g.iter().any(|&v| v as isize > target) {
        return invalid(format!("{g:?} is not a monotone map into [{target}]"));
    }
    if let Some(a) = (0..g.len().saturating_sub(1)).find(|&a| g[a] == g[a + 1]) {
        let y = cosimplicial_s(o, a, x)?;
        let mut g2 = g.to_vec();
        g2.remove(a + 1);
        return cosimplicial_action(o, &y, &g2, target);
    }
    let Some(j) = (0..=target).map(|j| j as usize).find(|j| !g.contains(j)) else {
        return Ok(x.clone());
    };
    let g2: Vec<usize> = g.iter().map(|&v| if v > j { v - 1 } else { v }).collect();
    let y = cosimplicial_action(o, x, &g2, target - 1)?;
    cosimplicial_d(o, j, &y)
}

/// `x ⊔ y = γ(μ; x, d⁰y)`, landing in `O(p+q+1)`.
pub fn sqcup_op<O: OperadWithMult>(o: &O, x: &Cos<O::Elem>, y: &Cos<O::Elem>) -> Result<Cos<O::Elem>> {
    let x = op_of(x, "the join")?;
    op_of(y, "the join")?;
    let d0y = cosimplicial_d(o, 0, y)?;
    Ok(Cos::Op(o.gamma(&o.mu(), &[x.clone(), op_of(&d0y, "")?.clone()])?))
}

/// `γ̃(x; y_1,..,y_k) = γ(x; d⁰d^{j_1+1}y_1, .., d⁰d^{j_k+1}y_k)` with
/// `y_i ∈ O^{j_i}`; `y_i = ε` (`j_i = -1`) contributes `d⁰d⁰ε = id`.
pub fn gamma_tilde<O: OperadWithMult>(o: &O, x: &O::Elem, ys: &[Cos<O::Elem>]) -> Result<O::Elem> {
    if ys.len() != o.arity(x) {
        return Err(Error::Arity(format!("{} inputs for an element of arity {}", ys.len(), o.arity(x))));
    }
    let inner = ys
        .iter()
        .map(|y| {
            let j = degree_of(o, y);
            let z = cosimplicial_d(o, 0, &cosimplicial_d(o, (j + 1) as usize, y)?)?;
            Ok(op_of(&z, "")?.clone())
        })
        .collect::<Result<Vec<_>>>()?;
    o.gamma(x, &inner)
}

/// The maximal segments of `f` as inclusive position intervals: the maximal
/// intervals whose two endpoints carry the same label.
pub fn maximal_segments(f: &LabelMap) -> Result<Vec<(usize, usize)>> {
    let c = complexity(f);
    if c > 2 {
        return Err(Error::ComplexityExceeded { found: c, bound: 2 });
    }
    let mut out = Vec::new();
    let v = f.values();
    let mut a = 0;
    while a < v.len() {
        let b = v.iter().rposition(|&x| x == v[a]).expect("present");
        out.push((a, b));
        a = b + 1;
    }
    Ok(out)
}

/// Restriction of `f` to the positions `range`, relabelled by the labels that
/// occur there in increasing order; returns the map and the labels used.
fn restrict_labels(f: &LabelMap, range: std::ops::Range<usize>) -> (LabelMap, Vec<usize>) {
    let part = &f.values()[range];
    let mut labels: Vec<usize> = part.to_vec();
    labels.sort_unstable();
    labels.dedup();
    let values = part.iter().map(|v| labels.binary_search(v).expect("present") + 1).collect();
    (LabelMap::new(labels.len(), values).expect("labels in range"), labels)
}

/// `⟨f⟩` on `O^•` for `f` of complexity at most two, by recursion on `|T|`:
/// several maximal segments are joined by `⊔` from the left; a single segment
/// with end label `j` is `γ̃` of `x_j` with the operations on the gaps
/// between consecutive elements of `f⁻¹(j)`.
pub fn angle_f_recursive<O: OperadWithMult>(o: &O, f: &LabelMap, xs: &[Cos<O::Elem>]) -> Result<Cos<O::Elem>> {
    if xs.len() != f.k() {
        return Err(Error::Arity(format!("{} inputs for a label map of arity {}", xs.len(), f.k())));
    }
    let sizes = f.fiber_sizes();
    for (i, x) in xs.iter().enumerate() {
        if degree_of(o, x) != sizes[i] as isize - 1 {
            return Err(Error::Arity(format!(
                "input {} has degree {} for a fiber of size {}",
                i + 1,
                degree_of(o, x),
                sizes[i]
            )));
        }
    }
    let v = f.values();
    match v.len() {
        0 => return Ok(Cos::Epsilon),
        1 => return Ok(xs[v[0] - 1].clone()),
        _ => {}
    }
    let segments = maximal_segments(f)?;
    let sub = |range: std::ops::Range<usize>| -> Result<Cos<O::Elem>> {
        let (g, labels) = restrict_labels(f, range);
        let ys: Vec<Cos<O::Elem>> = labels.iter().map(|&l| xs[l - 1].clone()).collect();
        angle_f_recursive(o, &g, &ys)
    };
    if segments.len() > 1 {
        let mut acc: Option<Cos<O::Elem>> = None;
        for &(a, b) in &segments {
            let z = sub(a..b + 1)?;
            acc = Some(match acc {
                None => z,
                Some(acc) => sqcup_op(o, &acc, &z)?,
            });
        }
        return Ok(acc.expect("at least one segment"));
    }
    let j = v[0];
    let fiber = f.fiber(j);
    let gaps = fiber.windows(2).map(|w| sub(w[0] + 1..w[1])).collect::<Result<Vec<_>>>()?;
    Ok(Cos::Op(gamma_tilde(o, op_of(&xs[j - 1], "the composite")?, &gaps)?))
}

/// The augmented cosimplicial object `O^•` of an operad with multiplication,
/// with `O^∅ = {ε}` and the operations of [`angle_f_recursive`].
#[derive(Debug, Clone)]
pub struct CosimpFromOperad<O> {
    pub operad: O,
}

impl<O: OperadWithMult> CosimpFromOperad<O> {
    pub fn new(operad: O) -> Self {
        CosimpFromOperad { operad }
    }

    pub fn e(&self) -> Result<Cos<O::Elem>> {
        cosimplicial_d(&self.operad, 0, &Cos::Epsilon)
    }

    pub fn id(&self) -> Result<Cos<O::Elem>> {
        cosimplicial_d(&self.operad, 0, &self.e()?)
    }

    pub fn mu(&self) -> Result<Cos<O::Elem>> {
        cosimplicial_d(&self.operad, 0, &self.id()?)
    }
}

impl<O: OperadWithMult> AngleStructure for CosimpFromOperad<O>
where
    O: RandomElements,
{
    type Elem = Cos<O::Elem>;

    fn degree(&self, x: &Self::Elem) -> isize {
        degree_of(&self.operad, x)
    }

    fn epsilon(&self) -> Self::Elem {
        Cos::Epsilon
    }

    fn act(&self, x: &Self::Elem, g: &[usize], target: isize) -> Result<Self::Elem> {
        cosimplicial_action(&self.operad, x, g, target)
    }

    fn angle(&self, f: &LabelMap, xs: &[Self::Elem]) -> Result<Self::Elem> {
        angle_f_recursive(&self.operad, f, xs)
    }

    fn complexity_bound(&self) -> Option<usize> {
        Some(2)
    }

    fn random_element(&self, degree: isize, rng: &mut dyn RngCore) -> Self::Elem {
        if degree < 0 {
            Cos::Epsilon
        } else {
            Cos::Op(self.operad.random_element(degree as usize, rng))
        }
    }
}

/// Operads whose elements can be sampled.
pub trait RandomElements: OperadWithMult {
    fn random_element(&self, arity: usize, rng: &mut dyn RngCore) -> Self::Elem;
}

impl RandomElements for EndomorphismOperad {
    fn random_element(&self, arity: usize, rng: &mut dyn RngCore) -> EndoElem {
        self.random(arity, rng)
    }
}

/// The operad with multiplication carried by a reduced augmented object with
/// operations `⟨f⟩` for `f` of complexity at most two: `X^k` in arity `k`,
/// `γ = h_* ∘ ⟨f⟩` for the label map
/// `f = 1 2^{j_1+1} 1 3^{j_2+1} 1 ⋯ (k+1)^{j_k+1} 1` and the map `h`
/// collapsing adjacent positions with different labels;
/// `e = d⁰ε`, `id = d⁰e`, `μ = d⁰id`.
#[derive(Debug, Clone)]
pub struct DerivedOperad<X> {
    pub structure: X,
}

pub fn operad_from_xi<X: AngleStructure>(structure: X) -> DerivedOperad<X> {
    DerivedOperad { structure }
}

/// The label map and collapse map used to define `γ` on arities `k; j_1..j_k`.
pub fn composition_pattern(js: &[usize]) -> (LabelMap, Vec<usize>) {
    let mut f = vec![1usize];
    let mut h = vec![0usize];
    let mut cur = 0usize;
    for (i, &j) in js.iter().enumerate() {
        for step in 0..=j {
            if step > 0 {
                cur += 1;
            }
            f.push(i + 2);
            h.push(cur);
        }
        f.push(1);
        h.push(cur);
    }
    (LabelMap::new(js.len() + 1, f).expect("labels in range"), h)
}

impl<X: AngleStructure> DerivedOperad<X> {
    fn d0(&self, x: &X::Elem) -> X::Elem {
        let p = self.structure.degree(x);
        let g: Vec<usize> = (1..=(p + 1) as usize).collect();
        self.structure.act(x, &g, p + 1).expect("coface d0")
    }
}

impl<X: AngleStructure> OperadWithMult for DerivedOperad<X> {
    type Elem = X::Elem;

    fn arity(&self, x: &X::Elem) -> usize {
        self.structure.degree(x).max(0) as usize
    }

    fn gamma(&self, x: &X::Elem, ys: &[X::Elem]) -> Result<X::Elem> {
        if ys.len() != self.arity(x) {
            return Err(Error::Arity(format!("{} inputs for an element of arity {}", ys.len(), self.arity(x))));
        }
        let js: Vec<usize> = ys.iter().map(|y| self.arity(y)).collect();
        let (f, h) = composition_pattern(&js);
        let mut inputs = Vec::with_capacity(ys.len() + 1);
        inputs.push(x.clone());
        inputs.extend(ys.iter().cloned());
        let z = self.structure.angle(&f, &inputs)?;
        self.structure.act(&z, &h, js.iter().sum::<usize>() as isize)
    }

    fn id(&self) -> X::Elem {
        self.d0(&self.e())
    }

    fn mu(&self) -> X::Elem {
        self.d0(&self.id())
    }

    fn e(&self) -> X::Elem {
        self.d0(&self.structure.epsilon())
    }
}

//! Finite monoids and their endomorphism operads `End(A)(k) = Map(A^k, A)`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::OperadWithMult;
use crate::error::{invalid, Error, Result};

/// A finite set `{0,..,n-1}` with an associative multiplication and a
/// two-sided unit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteMonoid {
    pub elements: Vec<String>,
    pub mul: Vec<Vec<usize>>,
    pub unit: usize,
}

impl FiniteMonoid {
    pub fn new(elements: Vec<String>, mul: Vec<Vec<usize>>, unit: usize) -> Result<Self> {
        let m = FiniteMonoid { elements, mul, unit };
        m.validate()?;
        Ok(m)
    }

    fn validate(&self) -> Result<()> {
        let n = self.elements.len();
        if n == 0 || n > 255 {
            return invalid("carrier must have between 1 and 255 elements");
        }
        if self.mul.len() != n || self.mul.iter().any(|r| r.len() != n || r.iter().any(|&v| v >= n)) {
            return invalid("multiplication table must be square over the carrier");
        }
        if self.unit >= n {
            return invalid("unit outside the carrier");
        }
        for a in 0..n {
            if self.mul[self.unit][a] != a || self.mul[a][self.unit] != a {
                return invalid(format!("{} is not a two-sided unit", self.unit));
            }
            for b in 0..n {
                for c in 0..n {
                    if self.mul[self.mul[a][b]][c] != self.mul[a][self.mul[b][c]] {
                        return invalid(format!("multiplication not associative at ({a},{b},{c})"));
                    }
                }
            }
        }
        Ok(())
    }

    /// `ℤ/m` under multiplication.
    pub fn integers_mod(m: usize) -> Self {
        let mul = (0..m).map(|a| (0..m).map(|b| a * b % m).collect()).collect();
        FiniteMonoid::new((0..m).map(|a| a.to_string()).collect(), mul, 1 % m).expect("ℤ/m is a monoid")
    }

    /// All self-maps of a two-element set under composition `(a·b)(x) = a(b(x))`;
    /// a noncommutative monoid. Maps are encoded as `2·a(0) + a(1)`.
    pub fn transformations_of_two() -> Self {
        let decode = |a: usize| [a / 2, a % 2];
        let mul = (0..4)
            .map(|a| {
                (0..4)
                    .map(|b| {
                        let (fa, fb) = (decode(a), decode(b));
                        2 * fa[fb[0]] + fa[fb[1]]
                    })
                    .collect()
            })
            .collect();
        let names = ["c0", "id", "swap", "c1"].iter().map(|s| s.to_string()).collect();
        FiniteMonoid::new(names, mul, 1).expect("transformation monoid")
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let m: FiniteMonoid = serde_json::from_str(text).map_err(Error::from)?;
        m.validate()?;
        Ok(m)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serialisable")
    }
}

/// A function `A^k -> A` stored as its value table; the first argument is the
/// most significant digit of the row index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EndoElem {
    pub arity: usize,
    pub table: Vec<u8>,
}

#[derive(Debug, Clone)]
pub struct EndomorphismOperad {
    monoid: FiniteMonoid,
}

impl EndomorphismOperad {
    pub fn new(monoid: FiniteMonoid) -> Self {
        EndomorphismOperad { monoid }
    }

    pub fn monoid(&self) -> &FiniteMonoid {
        &self.monoid
    }

    fn rows(&self, arity: usize) -> usize {
        self.monoid.size().pow(arity as u32)
    }

    pub fn from_fn(&self, arity: usize, mut f: impl FnMut(&[usize]) -> usize) -> EndoElem {
        let n = self.monoid.size();
        let mut args = vec![0usize; arity];
        let table = (0..self.rows(arity))
            .map(|row| {
                let mut r = row;
                for t in (0..arity).rev() {
                    args[t] = r % n;
                    r /= n;
                }
                f(&args) as u8
            })
            .collect();
        EndoElem { arity, table }
    }

    pub fn eval(&self, x: &EndoElem, args: &[usize]) -> usize {
        let n = self.monoid.size();
        x.table[args.iter().fold(0, |acc, &a| acc * n + a)] as usize
    }

    pub fn random<R: Rng + ?Sized>(&self, arity: usize, rng: &mut R) -> EndoElem {
        let n = self.monoid.size() as u8;
        EndoElem { arity, table: (0..self.rows(arity)).map(|_| rng.gen_range(0..n)).collect() }
    }

    /// Every element of arity `k`; `None` when there are more than `limit`.
    pub fn all(&self, arity: usize, limit: usize) -> Option<Vec<EndoElem>> {
        let rows = self.rows(arity) as u32;
        let n = self.monoid.size();
        let count = n.checked_pow(rows).filter(|&c| c <= limit)?;
        Some(
            (0..count)
                .map(|mut c| {
                    let table = (0..rows)
                        .map(|_| {
                            let v = (c % n) as u8;
                            c /= n;
                            v
                        })
                        .collect();
                    EndoElem { arity, table }
                })
                .collect(),
        )
    }

    /// Iterated product `A^k -> A` (the image of the point of `Ass(k)`).
    pub fn product(&self, arity: usize) -> EndoElem {
        let m = &self.monoid;
        self.from_fn(arity, |a| a.iter().fold(m.unit, |acc, &b| m.mul[acc][b]))
    }
}

impl OperadWithMult for EndomorphismOperad {
    type Elem = EndoElem;

    fn arity(&self, x: &EndoElem) -> usize {
        x.arity
    }

    fn gamma(&self, x: &EndoElem, ys: &[EndoElem]) -> Result<EndoElem> {
        if ys.len() != x.arity {
            return Err(Error::Arity(format!("{} inputs for an element of arity {}", ys.len(), x.arity)));
        }
        let total: usize = ys.iter().map(|y| y.arity).sum();
        let mut inner = vec![0usize; ys.len()];
        Ok(self.from_fn(total, |args| {
            let mut start = 0;
            for (slot, y) in ys.iter().enumerate() {
                inner[slot] = self.eval(y, &args[start..start + y.arity]);
                start += y.arity;
            }
            self.eval(x, &inner)
        }))
    }

    fn id(&self) -> EndoElem {
        self.from_fn(1, |a| a[0])
    }

    fn mu(&self) -> EndoElem {
        self.product(2)
    }

    fn e(&self) -> EndoElem {
        self.product(0)
    }
}

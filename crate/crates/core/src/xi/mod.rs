//! Cells and a finite simplicial model of the diagram construction
//! `Ξⁿₖ(Δ•, …, Δ•)^S`, filtered by complexity.
//!
//! An `ℓ`-simplex of the model is a class of a diagram `(f, [m], h)` with a
//! tuple of ordered maps `σᵢ: [ℓ] -> f⁻¹(i)`. Every class has a unique
//! representative with full support and no adjacent pair of positions equal
//! in both `f` and `h`; see [`simplex::reduce_simplex`].

mod cells;
mod model;
mod simplex;
mod structure;

pub use cells::{enumerate_cells, Cell};
pub use model::{build_model, build_model_bounded, restrict_to_bt, Face, XiModel};
pub use simplex::{reduce_simplex, XiSimplex};
pub use structure::{compose_diagrams, gamma_compose, lambda_regroup, sigma_star, sigma_star_cell};

use std::fmt;

use serde::{Serialize, Serializer};

/// Upper bound on complexity: a finite `n` or no bound at all.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bound {
    Finite(usize),
    Unbounded,
}

impl Bound {
    pub fn admits(self, c: usize) -> bool {
        match self {
            Bound::Finite(n) => c <= n,
            Bound::Unbounded => true,
        }
    }
}

impl From<usize> for Bound {
    fn from(n: usize) -> Self {
        Bound::Finite(n)
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Finite(n) => write!(f, "{n}"),
            Bound::Unbounded => write!(f, "inf"),
        }
    }
}

impl std::str::FromStr for Bound {
    type Err = crate::Error;
    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "inf" | "infinity" | "∞" => Ok(Bound::Unbounded),
            _ => s
                .parse::<usize>()
                .map(Bound::Finite)
                .map_err(|_| crate::Error::Invalid(format!("bad complexity bound {s:?}"))),
        }
    }
}

impl Serialize for Bound {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Bound::Finite(n) => s.serialize_u64(*n as u64),
            Bound::Unbounded => s.serialize_str("inf"),
        }
    }
}

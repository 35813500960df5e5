//! Bundled simplicial sets.

use super::sset::{FinSimplicialSet, Simplex};
use crate::error::{invalid, Result};

pub const FIXTURE_NAMES: &[&str] =
    &["delta0", "delta1", "delta2", "delta3", "boundary-delta3", "rp2", "sphere0", "sphere1", "sphere2", "sphere3"];

/// The standard simplex `Δ[n]`.
pub fn delta(n: usize) -> FinSimplicialSet {
    FinSimplicialSet::from_complex(format!("delta{n}"), &[(0..=n).collect()]).expect("simplex")
}

pub fn boundary_delta3() -> FinSimplicialSet {
    let facets: Vec<Vec<usize>> = (0..4).map(|i| (0..4).filter(|&v| v != i).collect()).collect();
    FinSimplicialSet::from_complex("boundary-delta3", &facets).expect("boundary of the 3-simplex")
}

/// The six-vertex triangulation of the real projective plane.
pub fn rp2() -> FinSimplicialSet {
    let facets =
        [[0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 1, 5], [1, 2, 4], [2, 3, 5], [1, 3, 4], [2, 4, 5], [1, 3, 5]];
    let facets: Vec<Vec<usize>> = facets.iter().map(|f| f.to_vec()).collect();
    FinSimplicialSet::from_complex("rp2", &facets).expect("projective plane")
}

/// `Δ[n]` modulo its `(n-1)`-skeleton: the basepoint is vertex 0 and, for
/// `n ≥ 1`, the only other nondegenerate simplex is the top one, all of whose
/// faces are the basepoint. For `n = 0` this is two points.
pub fn sphere(n: usize) -> FinSimplicialSet {
    if n == 0 {
        return FinSimplicialSet::new("sphere0", vec![2], vec![vec![vec![], vec![]]]).expect("two points");
    }
    let mut counts = vec![0; n + 1];
    counts[0] = 1;
    counts[n] = 1;
    let mut faces: Vec<Vec<Vec<Simplex>>> = vec![Vec::new(); n + 1];
    faces[0] = vec![vec![]];
    let point = Simplex { base_dim: 0, base: 0, surj: vec![0; n] };
    faces[n] = vec![vec![point; n + 1]];
    FinSimplicialSet::new(format!("sphere{n}"), counts, faces).expect("sphere")
}

pub fn fixture(name: &str) -> Result<FinSimplicialSet> {
    Ok(match name {
        "delta0" => delta(0),
        "delta1" => delta(1),
        "delta2" => delta(2),
        "delta3" => delta(3),
        "boundary-delta3" => boundary_delta3(),
        "rp2" => rp2(),
        "sphere0" => sphere(0),
        "sphere1" => sphere(1),
        "sphere2" => sphere(2),
        "sphere3" => sphere(3),
        _ => return invalid(format!("unknown fixture {name:?}; known: {}", FIXTURE_NAMES.join(", "))),
    })
}

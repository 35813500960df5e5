use encell::cochains::FinSimplicialSet;
use encell::homology::snf::{smith_normal_form, snf_holds, DenseMatrix};
use encell::homology::{betti_mod_p, homology, homology_unreduced, ChainComplex, SparseIntMatrix, ToChainComplex};
use encell::Int;
use num_traits::Signed;
use proptest::prelude::*;

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-4i64..=4, c), r))
}

/// Facets on at most six vertices; every vertex set is a face of the full simplex.
fn complex() -> impl Strategy<Value = Vec<Vec<usize>>> {
    prop::collection::vec(prop::collection::btree_set(0usize..6, 1..=4), 1..=6)
        .prop_map(|fs| fs.into_iter().map(|f| f.into_iter().collect()).collect())
}

fn space(facets: &[Vec<usize>]) -> FinSimplicialSet {
    FinSimplicialSet::from_complex("random", facets).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn smith_form_is_a_valid_factorisation(rows in matrix()) {
        let m = DenseMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| Int::from(v)).collect()).collect());
        let snf = smith_normal_form(&m);
        prop_assert!(snf_holds(&m, &snf));
    }

    #[test]
    fn sparse_and_dense_factors_agree(rows in matrix()) {
        let triplets: Vec<(usize, usize, Int)> = rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().enumerate().filter(|(_, v)| **v != 0).map(move |(j, &v)| (i, j, Int::from(v))))
            .collect();
        let sparse = SparseIntMatrix::new(rows.len(), rows[0].len(), triplets).unwrap();
        let dense = DenseMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| Int::from(v)).collect()).collect());
        let a: Vec<Int> = encell::homology::smith_normal_form(&sparse).invariant_factors().iter().map(|x| x.abs()).collect();
        let b: Vec<Int> = smith_normal_form(&dense).invariant_factors().iter().map(|x| x.abs()).collect();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn reduction_preserves_homology(facets in complex()) {
        let cc = space(&facets).chain_complex();
        let h = homology(&cc).unwrap();
        prop_assert_eq!(&h, &homology_unreduced(&cc).unwrap());
        let alternating: i64 = h.betti.iter().enumerate().map(|(d, &b)| if d % 2 == 0 { b as i64 } else { -(b as i64) }).sum();
        prop_assert_eq!(alternating, cc.euler_characteristic());
        // universal coefficients: mod 2 Betti numbers bound the integral ones
        let mod2 = betti_mod_p(&cc, 2).unwrap();
        for (d, &b) in h.betti.iter().enumerate() {
            prop_assert!(mod2[d] >= b);
        }
    }

    #[test]
    fn cones_are_points(facets in complex()) {
        let coned: Vec<Vec<usize>> = facets.iter().map(|f| std::iter::once(6).chain(f.iter().copied()).collect()).collect();
        let coned: Vec<Vec<usize>> = coned.into_iter().map(|mut f| { f.sort_unstable(); f }).collect();
        let h = homology(&space(&coned).chain_complex()).unwrap();
        prop_assert!(h.is_point(), "{:?}", h);
    }

    #[test]
    fn json_round_trip(facets in complex()) {
        let cc = space(&facets).chain_complex();
        let back = ChainComplex::from_json(&cc.to_json()).unwrap();
        prop_assert_eq!(&back, &cc);
    }
}

#[test]
fn classical_fixtures() {
    use encell::cochains::fixture;
    let rp2 = homology(&fixture("rp2").unwrap().chain_complex()).unwrap();
    assert_eq!(rp2.betti, vec![1, 0, 0]);
    assert_eq!(rp2.torsion[1], vec![Int::from(2)]);
    let s2 = homology(&fixture("boundary-delta3").unwrap().chain_complex()).unwrap();
    assert_eq!(s2.trimmed_betti(), vec![1, 0, 1]);
    assert!(homology(&fixture("delta3").unwrap().chain_complex()).unwrap().is_point());
    let mod2 = betti_mod_p(&fixture("rp2").unwrap().chain_complex(), 2).unwrap();
    assert_eq!(mod2, vec![1, 1, 1]);
}

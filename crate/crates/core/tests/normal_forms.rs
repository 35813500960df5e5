use encell::combinat::complexity;
use encell::perm::Permutation;
use encell::verify::enumerate::{normal_simplices, raw_simplices};
use encell::xi::{reduce_simplex, sigma_star, XiSimplex};
use proptest::prelude::*;
use std::sync::OnceLock;

/// Raw simplices of degree 0..=2 with k ≤ 3, s ≤ 1 and at most four positions.
fn pool() -> &'static Vec<XiSimplex> {
    static POOL: OnceLock<Vec<XiSimplex>> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut all = Vec::new();
        for k in 1..=3 {
            for s in 0..=1 {
                for ell in 0..=2 {
                    all.extend(raw_simplices(k, s, ell, 4));
                }
            }
        }
        all
    })
}

fn raw() -> impl Strategy<Value = XiSimplex> {
    (0..pool().len()).prop_map(|i| pool()[i].clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn reduction_is_idempotent(x in raw()) {
        let r = reduce_simplex(&x);
        prop_assert!(r.is_normal());
        prop_assert_eq!(reduce_simplex(&r), r.clone());
        prop_assert!(complexity(r.diagram.f()) <= complexity(x.diagram.f()));
    }

    #[test]
    fn faces_and_degeneracies_respect_classes(x in raw()) {
        let r = reduce_simplex(&x);
        for j in 0..=x.ell {
            if x.ell > 0 {
                prop_assert_eq!(reduce_simplex(&x.face(j)), reduce_simplex(&r.face(j)));
            }
            prop_assert_eq!(reduce_simplex(&x.degeneracy(j)), reduce_simplex(&r.degeneracy(j)));
        }
    }

    #[test]
    fn symmetric_action_commutes_with_reduction(x in raw(), pick in any::<prop::sample::Index>()) {
        let perms = Permutation::all(x.k());
        let sigma = &perms[pick.index(perms.len())];
        let moved = sigma_star(&x, sigma).unwrap();
        prop_assert_eq!(reduce_simplex(&moved), sigma_star(&reduce_simplex(&x), sigma).unwrap());
        prop_assert_eq!(sigma_star(&moved, &sigma.inverse()).unwrap(), x.clone());
        prop_assert_eq!(complexity(moved.diagram.f()), complexity(x.diagram.f()));
    }
}

#[test]
fn normal_simplices_are_fixed_points() {
    for ell in 0..=2 {
        for x in normal_simplices(2, 1, ell, 4) {
            assert!(x.is_normal());
            assert_eq!(reduce_simplex(&x), x);
        }
    }
}

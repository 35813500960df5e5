use std::sync::Arc;

use encell::cochains::{angle_f, cup, fixture, sqcup, Cochain, Ring, FIXTURE_NAMES};
use encell::combinat::LabelMap;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn ring() -> impl Strategy<Value = Ring> {
    prop_oneof![Just(Ring::Integers), Just(Ring::Modulo(2)), Just(Ring::Modulo(3))]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn cup_is_associative(name in prop::sample::select(FIXTURE_NAMES), ring in ring(), seed in any::<u64>(), p in 0isize..2, q in 0isize..2, r in 0isize..2) {
        let space = Arc::new(fixture(name).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = Cochain::random(&space, ring, p, &mut rng).unwrap();
        let y = Cochain::random(&space, ring, q, &mut rng).unwrap();
        let z = Cochain::random(&space, ring, r, &mut rng).unwrap();
        prop_assert_eq!(cup(&cup(&x, &y).unwrap(), &z).unwrap(), cup(&x, &cup(&y, &z).unwrap()).unwrap());
    }

    #[test]
    fn join_is_a_label_map_operation(name in prop::sample::select(FIXTURE_NAMES), ring in ring(), seed in any::<u64>(), p in -1isize..2, q in -1isize..2) {
        let space = Arc::new(fixture(name).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = Cochain::random(&space, ring, p, &mut rng).unwrap();
        let y = Cochain::random(&space, ring, q, &mut rng).unwrap();
        // the swapped label map computes the join with the inputs exchanged
        let (a, b) = ((p + 1) as usize, (q + 1) as usize);
        let swapped = LabelMap::new(2, [vec![2; b], vec![1; a]].concat()).unwrap();
        prop_assert_eq!(angle_f(&swapped, &[x.clone(), y.clone()]).unwrap(), sqcup(&y, &x).unwrap());
    }

    #[test]
    fn identity_label_map_is_the_identity(name in prop::sample::select(FIXTURE_NAMES), ring in ring(), seed in any::<u64>(), p in 0usize..3) {
        let space = Arc::new(fixture(name).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = Cochain::random(&space, ring, p as isize, &mut rng).unwrap();
        let id = LabelMap::new(1, vec![1; p + 1]).unwrap();
        prop_assert_eq!(angle_f(&id, std::slice::from_ref(&x)).unwrap(), x);
    }
}

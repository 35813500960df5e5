use encell::prism::{box_f, box_g, lambda, omega, random_nondegenerate, random_presentation, upsilon, PairPoint};
use encell::Rational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn point(seed: u64) -> PairPoint<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = rng.gen_range(1..=3);
    let s = rng.gen_range(0..=2);
    random_nondegenerate(k, s, 6, &mut rng)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn normalisation_forgets_the_presentation(seed in any::<u64>(), steps in 0usize..6) {
        let p = point(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let q = random_presentation(&p, steps, &mut rng);
        prop_assert_eq!(upsilon(&q), p.clone());
        prop_assert_eq!(upsilon(&p), p);
    }

    #[test]
    fn pair_coordinates_round_trip(seed in any::<u64>()) {
        let p = point(seed);
        let (v, base) = omega(&p).unwrap();
        prop_assert_eq!(lambda(&v, &base).unwrap(), p);
    }

    #[test]
    fn prism_coordinates_round_trip(weights in prop::collection::vec(1u32..20, 1..6)) {
        let total: u32 = weights.iter().sum();
        let u: Vec<Rational> = weights.iter().map(|&w| Rational::new(w.into(), total.into())).collect();
        let (l, r) = box_g(&u).unwrap();
        prop_assert_eq!(box_f(&l, &r).unwrap(), u);
    }
}

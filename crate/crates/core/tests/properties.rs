use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sticks::closed_form::{pn_pickup, pn_pickup_truncated};
use sticks::constraints::{
    check_max_min_identity, m_constants, random_feasible_prefix, ConstraintSystem, Model,
};
use sticks::montecarlo::{all_polygon, no_polygon};
use sticks::oracle::symbolic_pn_truncated;

fn ratio(n: u64, d: u64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Sticks with every length at its minimum given `l_1 = 1`.
fn boundary(p: usize, n: usize) -> Vec<f64> {
    let mut v = vec![1.0f64; n];
    for i in p..n {
        v[i] = v[i - p..i].iter().sum();
    }
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn truncated_closed_form_matches_symbolic(p in 2usize..=3, extra in 1usize..=3, num in 0u64..200, den in 1u64..200) {
        prop_assume!(num < den);
        let n = p + extra;
        let a = ratio(num, den);
        prop_assert_eq!(pn_pickup_truncated(p, n, &a).unwrap(), symbolic_pn_truncated(p, n, &a).unwrap());
    }

    #[test]
    fn truncation_only_lowers_the_probability(p in 2usize..=5, extra in 1usize..=8, x in 0u64..1000, y in 0u64..1000) {
        let n = p + extra;
        let (lo, hi) = (ratio(x.min(y), 1000), ratio(x.max(y), 1000));
        let a = pn_pickup_truncated(p, n, &lo).unwrap();
        let b = pn_pickup_truncated(p, n, &hi).unwrap();
        prop_assert!(b <= a);
        prop_assert!(a <= pn_pickup(p, n).unwrap());
    }

    #[test]
    fn truncation_past_first_bound_is_impossible(p in 2usize..=5, extra in 1usize..=8, k in 0u64..50) {
        let n = p + extra;
        let m1 = m_constants(p, n).unwrap()[0].clone();
        let a = BigRational::new(BigInt::from(1), m1) + ratio(k, 1000);
        prop_assume!(a < ratio(1, 1));
        prop_assert!(pn_pickup_truncated(p, n, &a).unwrap().value() == &ratio(0, 1));
    }

    #[test]
    fn identity_on_seeded_prefixes(p in 2usize..=4, extra in 1usize..=4, seed in any::<u64>(), grid in 1u32..500) {
        let n = p + extra;
        let system = ConstraintSystem::build(p, n, Model::Pickup).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for len in 1..n {
            let prefix = random_feasible_prefix(&system, len, grid, &mut rng).unwrap();
            prop_assert!(check_max_min_identity(p, n, &prefix).unwrap());
        }
    }

    #[test]
    fn boundary_inputs_never_form(p in 2usize..=6, extra in 1usize..=20, shift in -60i32..60) {
        let n = p + extra;
        let v: Vec<f64> = boundary(p, n).iter().map(|x| x * 2f64.powi(shift)).collect();
        prop_assert!(no_polygon(&v, p).unwrap());
        prop_assert!(!all_polygon(&v, p).unwrap());
    }

    #[test]
    fn lengthening_the_top_stick_keeps_no_polygon(p in 2usize..=6, extra in 1usize..=12, bump in 0.0f64..100.0) {
        let n = p + extra;
        let mut v = boundary(p, n);
        v[n - 1] += bump;
        prop_assert!(no_polygon(&v, p).unwrap());
    }
}

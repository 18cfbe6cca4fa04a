//! Differential-ring laws and Ritt reduction certificates on random inputs.

mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{random_autoreduced, random_diff_poly, random_ring};
use delta_kernel::diff_ring::{is_reduced_wrt, poly_rank_compare, ritt_reduce};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn derivations_commute(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ring = random_ring(&mut rng);
        let f = random_diff_poly(&mut rng, &ring, 3, 3, 4);
        for i in 1..=ring.m() {
            for j in 1..=ring.m() {
                let a = f.apply_derivation(i).unwrap().apply_derivation(j).unwrap();
                let b = f.apply_derivation(j).unwrap().apply_derivation(i).unwrap();
                prop_assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn leibniz_rule(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ring = random_ring(&mut rng);
        let f = random_diff_poly(&mut rng, &ring, 3, 3, 3);
        let g = random_diff_poly(&mut rng, &ring, 3, 3, 3);
        for k in 1..=ring.m() {
            let lhs = (&f * &g).apply_derivation(k).unwrap();
            let rhs = &(&f.apply_derivation(k).unwrap() * &g) + &(&f * &g.apply_derivation(k).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn separant_ranks_below(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ring = random_ring(&mut rng);
        let f = random_diff_poly(&mut rng, &ring, 3, 3, 4);
        if f.rank().is_some() {
            let s = f.separant().unwrap();
            prop_assert_eq!(poly_rank_compare(&s, &f), std::cmp::Ordering::Less);
        }
    }

    #[test]
    fn ritt_certificates_reexpand(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ring = random_ring(&mut rng);
        let set = random_autoreduced(&mut rng, &ring, 2);
        let g = random_diff_poly(&mut rng, &ring, 3, 2, 3);
        let (rem, cert) = ritt_reduce(&g, &set).unwrap();
        prop_assert!(cert.verify(&g, &set).unwrap());
        prop_assert!(is_reduced_wrt(&rem, &set));
        prop_assert_eq!(&cert.remainder, &rem);
    }
}

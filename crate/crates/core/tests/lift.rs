use palindroma_core::abelianization::{lift, membership_report, psi, psi_product_law_check};
use palindroma_core::freegroup::{palindromic_generators, random_generator_product};
use palindroma_core::intmat::random_hat_element;
use proptest::prelude::*;

#[test]
fn product_law_on_generator_pairs() {
    let gens = palindromic_generators(3);
    for f in &gens {
        for g in &gens {
            assert!(psi_product_law_check(f, g).unwrap());
        }
    }
}

proptest! {
    #[test]
    fn lift_round_trip(seed in any::<u64>(), len in 1usize..=20, n in 2usize..=5) {
        let m = random_hat_element(n, seed, len);
        let f = lift(&m).unwrap();
        prop_assert!(f.is_palindromic());
        prop_assert!(f.images().iter().all(|w| w.len() % 2 == 1));
        prop_assert_eq!(psi(&f), m);
    }

    #[test]
    fn generator_products_land_in_parity_subgroup(seed in any::<u64>(), len in 1usize..=12) {
        let f = random_generator_product(3, seed, len);
        let m = psi(&f);
        prop_assert!(m.is_in_hat_gl());
        prop_assert!(membership_report(&m).member);
    }

    #[test]
    fn product_law_on_random_compositions(s1 in any::<u64>(), s2 in any::<u64>()) {
        let f = random_generator_product(3, s1, 4);
        let g = random_generator_product(3, s2, 4);
        prop_assert!(psi_product_law_check(&f, &g).unwrap());
    }
}

use palindroma_core::centralizer::{centralizer_enumerate, commutant, inf_or2_classify, order_census, psi_a12};
use palindroma_core::intmat::{random_hat_element, random_unimodular, IntMatrix, OrderResult};
use palindroma_core::zclass::{block_embed_audit, family_a, family_b, zclass_witness};
use proptest::prelude::*;

fn e_hat() -> IntMatrix {
    IntMatrix::from_array([[0, 0, 1], [1, 0, 0], [0, 1, 0]])
}

#[test]
fn bounded_centralizers_commute_and_close_under_inverse() {
    for seed in 0..20 {
        let m = random_hat_element(3, seed, 3);
        let z = centralizer_enumerate(&m, 2).unwrap();
        for x in &z {
            assert!(x.commutes_with(&m).unwrap());
            let inv = x.inverse_unimodular().unwrap();
            if inv.max_abs_entry() <= 2.into() {
                assert!(z.binary_search(&inv).is_ok(), "{x} inverse {inv} missing");
            }
        }
    }
}

#[test]
fn a12_centralizer_orders() {
    for x in centralizer_enumerate(&psi_a12(), 3).unwrap() {
        let o = x.order().unwrap();
        assert!(matches!(o, OrderResult::Finite(1 | 2) | OrderResult::Infinite));
        assert_eq!(inf_or2_classify(&x).unwrap().order, o);
    }
}

#[test]
fn e_hat_has_a_unique_involution() {
    for bound in 1..=10 {
        let c = order_census(&e_hat(), bound).unwrap();
        assert_eq!(c.count(2), 1, "bound {bound}");
        assert_eq!(c.order2, vec![IntMatrix::diag(&[-1, -1, -1])]);
    }
}

#[test]
fn family_ranks_are_stable() {
    for n in -3..=3i64 {
        for l in -3..=3i64 {
            if n != 0 && l != 0 {
                assert_eq!(commutant(&family_a(n, l)).unwrap().rank(), 3, "A({n},{l})");
            }
        }
        if n != 0 {
            assert_eq!(commutant(&family_b(n)).unwrap().rank(), 5, "B({n})");
        }
    }
}

#[test]
fn embedding_projects_onto_the_small_commutant() {
    for seed in 0..10 {
        let m = random_hat_element(3, seed, 4);
        for dim in 4..=6 {
            let r = block_embed_audit(&m, dim).unwrap();
            assert!(r.projection_equal && r.membership_preserved, "seed {seed} dim {dim}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn commutant_rank_is_conjugation_invariant(s1 in any::<u64>(), s2 in any::<u64>()) {
        let m = random_hat_element(3, s1, 5);
        let p = random_unimodular(3, s2, 6);
        prop_assert_eq!(commutant(&m).unwrap().rank(), commutant(&p.conjugate(&m).unwrap()).unwrap().rank());
    }

    #[test]
    fn distinguishers_agree_on_conjugate_pairs(s1 in any::<u64>(), ps in 0usize..48) {
        // a signed permutation keeps entries bounded, so bounded censuses correspond exactly
        let m = random_hat_element(3, s1, 3);
        let p = palindroma_core::zclass::signed_permutations()[ps].clone();
        let pm = p.conjugate(&m).unwrap();
        prop_assert_eq!(m.order().unwrap(), pm.order().unwrap());
        let (c1, c2) = (order_census(&m, 1).unwrap(), order_census(&pm, 1).unwrap());
        let mut mapped: Vec<IntMatrix> = c1.order2.iter().map(|x| p.conjugate(x).unwrap()).collect();
        mapped.sort();
        prop_assert_eq!(mapped, c2.order2.clone());
        prop_assert_eq!(c1.counts, c2.counts);
        let w = zclass_witness(&m, &pm, 1).unwrap();
        prop_assert!(w.conjugator().is_some());
    }
}

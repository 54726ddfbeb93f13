use num_bigint::BigInt;
use num_traits::{One, Signed};
use palindroma_core::intmat::{random_hat_element, random_unimodular, Eigenvalue, IntMatrix, OrderResult};
use proptest::prelude::*;

fn small_matrix(n: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(-4i64..=4, n * n)
        .prop_map(move |v| IntMatrix::from_flat(n, v.into_iter().map(BigInt::from).collect()).unwrap())
}

proptest! {
    #[test]
    fn determinant_is_multiplicative(a in small_matrix(3), b in small_matrix(3)) {
        prop_assert_eq!(a.mul(&b).unwrap().det(), a.det() * b.det());
    }

    #[test]
    fn unimodular_inverse(seed in any::<u64>(), n in 2usize..=5) {
        let a = random_unimodular(n, seed, 12);
        let inv = a.inverse_unimodular().unwrap();
        prop_assert!(a.mul(&inv).unwrap().is_identity());
        prop_assert_eq!(inv.det() * a.det(), BigInt::one());
    }

    #[test]
    fn random_parity_elements(seed in any::<u64>(), len in 1usize..=20) {
        let a = random_hat_element(3, seed, len);
        prop_assert!(a.is_in_hat_gl());
        // rational eigenvalues of a unimodular matrix are units; when there
        // are none the characteristic polynomial is an irreducible cubic
        let rep = a.eigen_classify().unwrap();
        prop_assert!(rep.rational_roots().iter().all(|r| r.abs().is_one()));
        let irreducible = rep.eigenvalues.iter().any(|e| matches!(e, Eigenvalue::IrreducibleCubic { .. }));
        prop_assert_eq!(a.unit_eigenvalues().unwrap().is_empty(), irreducible);
    }

    #[test]
    fn order_is_verified_and_conjugation_invariant(seed in any::<u64>(), len in 1usize..=8, ps in any::<u64>()) {
        let a = random_hat_element(3, seed, len);
        let o = a.order().unwrap();
        if let OrderResult::Finite(k) = o {
            prop_assert!(a.pow(k).is_identity());
        }
        let p = random_unimodular(3, ps, 6);
        prop_assert_eq!(p.conjugate(&a).unwrap().order().unwrap(), o);
    }

    #[test]
    fn eigen_classification_matches_unit_roots(seed in any::<u64>(), len in 1usize..=10) {
        let a = random_unimodular(3, seed, len);
        let units = a.unit_eigenvalues().unwrap();
        let rep = a.eigen_classify().unwrap();
        let mut rational: Vec<i64> = rep
            .eigenvalues
            .iter()
            .filter_map(|e| match e {
                Eigenvalue::Rational { value: r } => Some(i64::try_from(r).unwrap()),
                _ => None,
            })
            .collect();
        rational.sort();
        rational.dedup();
        let mut units_sorted = units.clone();
        units_sorted.sort();
        prop_assert_eq!(rational, units_sorted);
    }

    #[test]
    fn parity_subgroup_is_closed(s1 in any::<u64>(), s2 in any::<u64>(), n in 2usize..=5) {
        let a = random_hat_element(n, s1, 8);
        let b = random_hat_element(n, s2, 8);
        prop_assert!(a.mul(&b).unwrap().is_in_hat_gl());
        prop_assert!(a.inverse_unimodular().unwrap().is_in_hat_gl());
    }

    #[test]
    fn char_poly_is_the_determinant(a in small_matrix(3), t in -5i64..=5) {
        let t = BigInt::from(t);
        let direct = IntMatrix::scalar(3, t.clone()).sub(&a).unwrap().det();
        prop_assert_eq!(a.char_poly().eval(&t), direct);
    }

    #[test]
    fn text_round_trip(a in small_matrix(4)) {
        prop_assert_eq!(a.to_string().parse::<IntMatrix>().unwrap(), a);
    }
}

#[test]
fn unimodular_without_unit_eigenvalue() {
    let c = IntMatrix::from_array([[0, 0, 1], [1, 0, 1], [0, 1, 0]]);
    assert!(c.is_unimodular());
    assert!(c.unit_eigenvalues().unwrap().is_empty());
    assert!(matches!(c.eigen_classify().unwrap().eigenvalues[0], Eigenvalue::IrreducibleCubic { .. }));
    let h = IntMatrix::from_array([[5, 0, 2], [2, 0, 1], [0, 1, 0]]);
    assert!(h.is_in_hat_gl());
    assert!(h.unit_eigenvalues().unwrap().is_empty());
}

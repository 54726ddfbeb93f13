//! The abelianization map ψ from endomorphisms of `F_n` to integer
//! matrices, and its palindromic section: every matrix with det ±1 and one
//! odd entry per row is ψ of an explicit palindromic automorphism.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::freegroup::{EndoMap, Letter, Word};
use crate::intmat::{serialize_bigint, IntMatrix};

/// `ψ(f)`: entry `(i, j)` is the exponent sum of `a_j` in `f(a_i)`.
pub fn psi(f: &EndoMap) -> IntMatrix {
    let rows = f
        .images()
        .iter()
        .map(|w| w.exponent_sums().into_iter().map(BigInt::from).collect())
        .collect();
    IntMatrix::from_rows(rows).expect("rank ≥ 1")
}

/// Checks `ψ(f ∘ g) = ψ(g)·ψ(f)`. Composition is a left action, so ψ
/// reverses products.
pub fn psi_product_law_check(f: &EndoMap, g: &EndoMap) -> Result<bool> {
    let lhs = psi(&f.compose(g)?);
    let rhs = psi(g).mul(&psi(f))?;
    Ok(lhs == rhs)
}

/// Palindromic lift of a parity-subgroup matrix. Row `i` with odd entry in
/// column `c` becomes
/// `a_n^{k_n} ⋯ a_1^{k_1} · a_c^{M[i][c]} · a_1^{k_1} ⋯ a_n^{k_n}`
/// with `k_j = M[i][j] / 2` for `j ≠ c`, columns nested in descending order
/// from the outside in and zero exponents dropped.
pub fn lift(m: &IntMatrix) -> Result<EndoMap> {
    check_membership(m)?;
    let n = m.dim();
    let mut images = Vec::with_capacity(n);
    for i in 0..n {
        let row = m.row(i);
        let center = row.iter().position(|e| e.is_odd()).expect("membership checked");
        let mut flank: Vec<Letter> = Vec::new();
        for j in (0..n).rev().filter(|&j| j != center) {
            let half = &row[j] / 2;
            push_power(&mut flank, j + 1, &half)?;
        }
        let mut letters = flank.clone();
        push_power(&mut letters, center + 1, &row[center])?;
        letters.extend(flank.iter().rev());
        images.push(Word::from_letters(n, letters)?);
    }
    EndoMap::new(n, images)
}

fn push_power(out: &mut Vec<Letter>, index: usize, exp: &BigInt) -> Result<()> {
    if exp.is_zero() {
        return Ok(());
    }
    let count = exp.abs().to_usize().filter(|&c| c <= crate::freegroup::MAX_WORD_LEN).ok_or(
        Error::WordTooLong { len: usize::MAX, limit: crate::freegroup::MAX_WORD_LEN },
    )?;
    let letter = if exp.is_positive() { Letter::pos(index) } else { Letter::neg(index) };
    out.extend(std::iter::repeat_n(letter, count));
    Ok(())
}

fn check_membership(m: &IntMatrix) -> Result<()> {
    if let Some((row, odd_count)) = m.first_parity_violation() {
        return Err(Error::RowParity { row: row + 1, odd_count });
    }
    let d = m.det();
    if !(d == BigInt::from(1) || d == BigInt::from(-1)) {
        return Err(Error::NotUnimodular(d));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Obstruction {
    /// 1-based row whose odd-entry count is not one.
    RowParity { row: usize, odd_count: usize },
    Determinant {
        #[serde(serialize_with = "serialize_bigint")]
        det: BigInt,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MembershipReport {
    pub member: bool,
    pub obstruction: Option<Obstruction>,
    pub lift: Option<EndoMap>,
}

/// Decides whether `m` is ψ of a palindromic automorphism; on success the
/// explicit lift is included, otherwise the first obstruction found.
pub fn membership_report(m: &IntMatrix) -> MembershipReport {
    match check_membership(m) {
        Ok(()) => MembershipReport { member: true, obstruction: None, lift: Some(lift(m).expect("member")) },
        Err(Error::RowParity { row, odd_count }) => MembershipReport {
            member: false,
            obstruction: Some(Obstruction::RowParity { row, odd_count }),
            lift: None,
        },
        Err(Error::NotUnimodular(det)) => {
            MembershipReport { member: false, obstruction: Some(Obstruction::Determinant { det }), lift: None }
        }
        Err(e) => unreachable!("unexpected membership error {e}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freegroup::{gen_aij, gen_sigma, gen_tau, Permutation};
    use crate::intmat::random_hat_element;

    fn m3(rows: [[i64; 3]; 3]) -> IntMatrix {
        IntMatrix::from_array(rows)
    }

    fn tau(cycle: &str) -> EndoMap {
        gen_tau(3, &Permutation::from_cycles(3, cycle).unwrap()).unwrap()
    }

    #[test]
    fn psi_of_generators() {
        assert_eq!(psi(&gen_aij(3, 1, 2).unwrap()), m3([[1, 2, 0], [0, 1, 0], [0, 0, 1]]));
        assert_eq!(psi(&gen_sigma(3, 1).unwrap()), IntMatrix::diag(&[-1, 1, 1]));
        assert_eq!(psi(&tau("(123)")), m3([[0, 0, 1], [1, 0, 0], [0, 1, 0]]));
        assert_eq!(psi(&tau("(12)")), m3([[0, 1, 0], [1, 0, 0], [0, 0, 1]]));
    }

    #[test]
    fn product_law_examples() {
        let a12 = gen_aij(3, 1, 2).unwrap();
        let t12 = tau("(12)");
        assert!(psi_product_law_check(&a12, &t12).unwrap());
        assert_eq!(psi(&a12.compose(&t12).unwrap()), m3([[0, 1, 0], [1, 2, 0], [0, 0, 1]]));
        let id = EndoMap::identity(3);
        assert!(psi_product_law_check(&id, &id).unwrap());
        let sq = psi(&a12.compose(&a12).unwrap());
        assert_eq!(sq, m3([[1, 4, 0], [0, 1, 0], [0, 0, 1]]));
        assert!(psi_product_law_check(&a12, &a12).unwrap());
    }

    #[test]
    fn lift_examples() {
        assert_eq!(lift(&m3([[1, 2, 0], [0, 1, 0], [0, 0, 1]])).unwrap(), gen_aij(3, 1, 2).unwrap());
        assert_eq!(lift(&IntMatrix::identity(3)).unwrap(), EndoMap::identity(3));
        let m = m3([[1, 2, 2], [0, 3, 4], [0, 2, 3]]);
        let f = lift(&m).unwrap();
        let w = |s| Word::parse(s, 3).unwrap();
        assert_eq!(f.image(1), &w("a3 a2 a1 a2 a3"));
        assert_eq!(f.image(2), &w("a3^2 a2^3 a3^2"));
        assert_eq!(f.image(3), &w("a2 a3^3 a2"));
        assert!(f.is_palindromic());
        assert_eq!(psi(&f), m);
    }

    #[test]
    fn lift_handles_negative_even_entries() {
        let m = m3([[-1, -2, 4], [0, 1, 0], [0, 0, 1]]);
        let f = lift(&m).unwrap();
        assert_eq!(f.image(1), &Word::parse("a3^2 a2^-1 a1^-1 a2^-1 a3^2", 3).unwrap());
        assert_eq!(psi(&f), m);
    }

    #[test]
    fn lift_rejects_non_members() {
        assert!(matches!(lift(&m3([[1, 1, 1], [0, 1, 0], [0, 0, 1]])), Err(Error::RowParity { row: 1, odd_count: 3 })));
        assert!(matches!(lift(&m3([[3, 0, 0], [0, 1, 0], [0, 0, 1]])), Err(Error::NotUnimodular(_))));
    }

    #[test]
    fn membership_examples() {
        let yes = membership_report(&m3([[1, 2, 2], [0, 3, 4], [0, 2, 3]]));
        assert!(yes.member && yes.lift.is_some());
        let no = membership_report(&m3([[1, 1, 1], [0, 1, 0], [0, 0, 1]]));
        assert_eq!(no.obstruction, Some(Obstruction::RowParity { row: 1, odd_count: 3 }));
        let det_m1 = membership_report(&m3([[2, 1, 0], [1, 0, 0], [0, 0, 1]]));
        assert!(det_m1.member);
        let singular = membership_report(&m3([[1, 0, 0], [1, 0, 0], [0, 0, 1]]));
        assert!(matches!(singular.obstruction, Some(Obstruction::Determinant { .. })));
    }

    #[test]
    fn lift_round_trip_on_random_members() {
        for seed in 0..100 {
            let m = random_hat_element(3, seed, 1 + (seed as usize % 12));
            let f = lift(&m).unwrap();
            assert!(f.is_palindromic());
            assert_eq!(psi(&f), m);
        }
        let m = random_hat_element(5, 99, 10);
        assert_eq!(psi(&lift(&m).unwrap()), m);
    }
}

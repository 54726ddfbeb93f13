//! End-to-end reproduction suite: one line per checked statement.

use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use palindroma_core::abelianization::{lift, membership_report, psi};
use palindroma_core::centralizer::{centralizer_enumerate, commutant, inf_or2_classify, order_census, psi_a12};
use palindroma_core::freegroup::random_generator_product;
use palindroma_core::intmat::{random_hat_element, random_unimodular, IntMatrix, OrderResult};
use palindroma_core::reducible::{
    bounded_conjugator_search, conjugation_residual, decide_sim1, reduce_by_permutation, solve_conjugation_system,
    zero_pattern_reducible, ConjugacyVerdict, Orientation, ReducibleForm,
};
use palindroma_core::zclass::{
    block_embed, block_embed_audit, distinguish_a12_sigma, family_a, family_b, generator_zclass_witness, p3_audit,
    GeneratorId,
};
use palindroma_core::{EndoMap, Result};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Erratum,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Erratum => "ERRATUM",
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Item {
    pub id: String,
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
    pub millis: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub items: Vec<Item>,
}

impl Report {
    pub fn count(&self, status: Status) -> usize {
        self.items.iter().filter(|i| i.status == status).count()
    }

    pub fn item(&self, id: &str) -> Option<&Item> {
        self.items.iter().find(|i| i.id == id)
    }

    /// 0 when nothing failed, 3 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.count(Status::Fail) == 0 {
            0
        } else {
            3
        }
    }
}

pub type LiftFn = fn(&IntMatrix) -> Result<EndoMap>;

#[derive(Debug, Clone, Copy)]
pub struct Config {
    pub seed: u64,
    pub lift: LiftFn,
}

impl Default for Config {
    fn default() -> Self {
        Config { seed: 0, lift }
    }
}

struct Outcome {
    status: Status,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { status: Status::Pass, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { status: Status::Fail, detail: detail.into() }
}

fn check(ok: bool, good: impl Into<String>, bad: impl Into<String>) -> Outcome {
    if ok {
        pass(good)
    } else {
        fail(bad)
    }
}

fn m3(rows: [[i64; 3]; 3]) -> IntMatrix {
    IntMatrix::from_array(rows)
}

type Step = fn(&Config) -> Result<Outcome>;

pub fn run(config: &Config) -> Report {
    let steps: [(&str, &'static str, Step); 12] = [
        ("1", "generator images under abelianization", generator_images),
        ("2", "palindromic lift round trip and membership", round_trip),
        ("3", "reducibility: zero patterns vs permutation search", zero_patterns),
        ("4", "every 3×3 unimodular matrix has eigenvalue ±1", unit_eigenvalue_claim),
        ("5", "modular criterion on the worked example", sim_example),
        ("6", "modular criterion: positive instance and random instances", sim_random),
        ("7", "centralizer of A12 has orders 1, 2, ∞ only", a12_orders),
        ("8", "A12 and σ1 lie in different z-classes", a12_sigma_distinct),
        ("9", "z-classes of generators", generator_zclasses),
        ("10a", "families Â, B̂: commutant ranks and eigenvalues", p3_ranks),
        ("10b", "displayed X̂ commutes with B̂_m", p3_erratum),
        ("11", "block embedding into rank 4–6", embedding),
    ];
    let items = steps
        .into_iter()
        .map(|(id, name, step)| {
            let start = Instant::now();
            let outcome = step(config).unwrap_or_else(|e| fail(format!("error: {e}")));
            Item { id: id.into(), name, status: outcome.status, detail: outcome.detail, millis: start.elapsed().as_millis() }
        })
        .collect();
    Report { items }
}

fn generator_images(_: &Config) -> Result<Outcome> {
    let g = |s: &str| s.parse::<GeneratorId>().map(|g| g.psi());
    let expected = [
        ("A12", m3([[1, 2, 0], [0, 1, 0], [0, 0, 1]])),
        ("s1", m3([[-1, 0, 0], [0, 1, 0], [0, 0, 1]])),
        ("t12", m3([[0, 1, 0], [1, 0, 0], [0, 0, 1]])),
        ("t123", m3([[0, 0, 1], [1, 0, 0], [0, 1, 0]])),
    ];
    for (id, m) in expected {
        if g(id)? != m {
            return Ok(fail(format!("ψ({id}) = {}", g(id)?)));
        }
    }
    Ok(pass("ψ(A12), ψ(σ1), ψ(τ12), ψ(τ123) match"))
}

fn has_row_with_two_odd(m: &IntMatrix) -> bool {
    let two = BigInt::from(2);
    (0..m.dim()).any(|i| m.row(i).iter().filter(|e| *e % &two != BigInt::from(0)).count() >= 2)
}

fn round_trip(c: &Config) -> Result<Outcome> {
    for k in 0..500u64 {
        let f = random_generator_product(3, c.seed.wrapping_add(k), 1 + (k % 12) as usize);
        if !psi(&f).is_in_hat_gl() {
            return Ok(fail(format!("ψ of product {k} is not a member")));
        }
    }
    for k in 0..500u64 {
        let m = random_hat_element(3, c.seed.wrapping_add(k), 1 + (k % 20) as usize);
        let f = (c.lift)(&m)?;
        if !f.is_palindromic() || psi(&f) != m {
            return Ok(fail(format!("lift of {m} fails the round trip")));
        }
    }
    let (mut rejected, mut k) = (0, 0u64);
    while rejected < 10_000 {
        let m = random_unimodular(3, c.seed.wrapping_add(k), 1 + (k % 12) as usize);
        k += 1;
        if !has_row_with_two_odd(&m) {
            continue;
        }
        if membership_report(&m).member {
            return Ok(fail(format!("{m} accepted despite a row with two odd entries")));
        }
        rejected += 1;
    }
    Ok(pass("500 products, 500 lifts, 10000 non-members"))
}

/// Every parity-subgroup matrix with entries in `[-2, 2]`.
pub fn bounded_parity_matrices() -> Vec<IntMatrix> {
    let mut rows = Vec::new();
    for a in -2i64..=2 {
        for b in -2i64..=2 {
            for c in -2i64..=2 {
                if [a, b, c].iter().filter(|v| v.rem_euclid(2) == 1).count() == 1 {
                    rows.push([a, b, c]);
                }
            }
        }
    }
    let mut out = Vec::new();
    for r0 in &rows {
        for r1 in &rows {
            for r2 in &rows {
                let det = r0[0] * (r1[1] * r2[2] - r1[2] * r2[1]) - r0[1] * (r1[0] * r2[2] - r1[2] * r2[0])
                    + r0[2] * (r1[0] * r2[1] - r1[1] * r2[0]);
                if det.abs() == 1 {
                    out.push(IntMatrix::from_array([*r0, *r1, *r2]));
                }
            }
        }
    }
    out
}

fn zero_patterns(_: &Config) -> Result<Outcome> {
    let all = bounded_parity_matrices();
    let mut mismatches = 0;
    for m in &all {
        if zero_pattern_reducible(m)?.is_empty() == reduce_by_permutation(m)?.is_some() {
            mismatches += 1;
        }
    }
    Ok(check(
        mismatches == 0,
        format!("{} matrices, 0 mismatches", all.len()),
        format!("{mismatches} mismatches among {}", all.len()),
    ))
}

fn unit_eigenvalue_claim(c: &Config) -> Result<Outcome> {
    let mut counterexamples = Vec::new();
    for k in 0..1000u64 {
        let m = random_unimodular(3, c.seed.wrapping_add(k), 1 + (k % 12) as usize);
        let chi = m.char_poly();
        let zero = BigInt::from(0);
        if chi.eval(&BigInt::from(1)) != zero && chi.eval(&BigInt::from(-1)) != zero {
            counterexamples.push(m);
        }
    }
    Ok(match counterexamples.first() {
        None => pass("1000 matrices, all with χ(1) = 0 or χ(−1) = 0"),
        Some(m) => fail(format!(
            "{} of 1000 have χ(±1) ≠ 0, e.g. {m} with χ = {}",
            counterexamples.len(),
            m.char_poly()
        )),
    })
}

fn sim_example(_: &Config) -> Result<Outcome> {
    let a = m3([[1, 2, 2], [0, 3, 4], [0, 2, 3]]);
    let form = reduce_by_permutation(&a)?.expect("reducible");
    let d = decide_sim1(&form)?;
    let inv = &d.invariants;
    let b = BigInt::from;
    let invariants_ok = (inv.e.clone(), inv.tau.clone(), inv.delta.clone(), inv.m.clone()) == (b(1), b(6), b(1), b(4))
        && inv.a0 == IntMatrix::from_array([[-2, 4], [2, -2]]);
    let residue_ok = d.residue == [b(0), b(2)];
    let verdict_ok = matches!(d.verdict, ConjugacyVerdict::NotConjugate { .. });
    let sys = solve_conjugation_system(&d.coupled, &d.decoupled)?;
    let constraints_ok = sys
        .basis()
        .iter()
        .all(|x| x.get(1, 0) == &b(0) && x.get(2, 0) == &b(0) && x.get(0, 1) == &b(0) && x.get(0, 0) == &-x.get(0, 2));
    let scan_ok = sys.bounded_invertible(5, true)?.is_empty();
    Ok(check(
        invariants_ok && residue_ok && verdict_ok && constraints_ok && scan_ok,
        "(e,τ,δ,m) = (1,6,1,4), residue (0,2), NotConjugate, constraints reproduced, no conjugator at bound 5",
        format!("invariants {invariants_ok}, residue {residue_ok}, verdict {verdict_ok}, constraints {constraints_ok}, scan {scan_ok}"),
    ))
}

/// The `k`-th seeded admissible instance with `|τ| ≠ 2`.
pub fn random_admissible(seed: u64, count: usize) -> Vec<ReducibleForm> {
    let mut out = Vec::new();
    let mut k = 0u64;
    while out.len() < count {
        let s = seed.wrapping_add(k);
        k += 1;
        let a2 = random_hat_element(2, s, 1 + (s % 9) as usize);
        let tau = a2.trace();
        if tau == BigInt::from(2) || tau == BigInt::from(-2) {
            continue;
        }
        let e = if s.is_multiple_of(2) { 1 } else { -1 };
        let r = ((s / 2) % 7) as i64 - 3;
        let t = ((s / 14) % 7) as i64 - 3;
        let o = if (s / 98).is_multiple_of(2) { Orientation::UpperLeft1x1 } else { Orientation::LowerRight1x1 };
        out.push(ReducibleForm::from_blocks(o, e, a2, r, t).expect("admissible"));
    }
    out
}

fn sim_random(c: &Config) -> Result<Outcome> {
    let form = ReducibleForm::from_blocks(Orientation::UpperLeft1x1, 1, IntMatrix::from_array([[3, 4], [2, 3]]), 2, 2)?;
    let d = decide_sim1(&form)?;
    let expected = m3([[1, 0, -2], [0, 3, 4], [0, 2, 3]]);
    let direct = expected.mul(&form.coupled())? == form.decoupled().mul(&expected)?;
    if d.verdict.witness() != Some(&expected) || !direct || !expected.is_in_hat_gl() {
        return Ok(fail(format!("positive instance gave {:?}", d.verdict)));
    }
    let (mut yes, mut no) = (0, 0);
    for form in random_admissible(c.seed, 20) {
        let d = decide_sim1(&form)?;
        match &d.verdict {
            ConjugacyVerdict::ConjugateWithWitness { witness } => {
                if !conjugation_residual(&d.coupled, &d.decoupled, witness)?.is_zero() || !witness.is_in_hat_gl() {
                    return Ok(fail(format!("witness {witness} fails")));
                }
                yes += 1;
            }
            ConjugacyVerdict::NotConjugate { .. } => {
                if let Some(r) = bounded_conjugator_search(&d.coupled, &d.decoupled, 3)? {
                    return Ok(fail(format!("NotConjugate but bounded scan found {r}")));
                }
                no += 1;
            }
            other => return Ok(fail(format!("unexpected verdict {}", other.name()))),
        }
    }
    Ok(pass(format!("witness [[1,0,−2],[0,3,4],[0,2,3]] verified; 20 random: {yes} conjugate, {no} not conjugate")))
}

fn a12_orders(_: &Config) -> Result<Outcome> {
    let z = centralizer_enumerate(&psi_a12(), 3)?;
    for x in &z {
        let o = x.order()?;
        if !matches!(o, OrderResult::Finite(1 | 2) | OrderResult::Infinite) || inf_or2_classify(x)?.order != o {
            return Ok(fail(format!("{x} has order {o}")));
        }
    }
    Ok(pass(format!("{} elements at bound 3, case analysis agrees", z.len())))
}

fn a12_sigma_distinct(_: &Config) -> Result<Outcome> {
    let r = distinguish_a12_sigma()?;
    let no4 = !r.scan_orders.contains(&OrderResult::Finite(4));
    let d = &r.witness.distinguishers()[0];
    Ok(check(
        r.order4_element_commutes && r.order4_element_order == OrderResult::Finite(4) && no4 && r.proof.holds && d.left == "false" && d.right == "true",
        "order-4 element in Z(ψ(σ1)); none in Z(ψ(A12)) (parametric proof and bound-3 scan)",
        format!("{r:?}"),
    ))
}

fn generator_zclasses(_: &Config) -> Result<Outcome> {
    let mut pairs = 0;
    let a_ids: Vec<GeneratorId> =
        (1..=3).flat_map(|i| (1..=3).filter(move |&j| j != i).map(move |j| GeneratorId::A(i, j))).collect();
    let s_ids: Vec<GeneratorId> = (1..=3).map(GeneratorId::Sigma).collect();
    for ids in [&a_ids, &s_ids] {
        for g1 in ids.iter() {
            for g2 in ids.iter() {
                let w = generator_zclass_witness(g1, g2)?;
                match w.conjugator() {
                    Some(p) if conjugation_residual(&g1.psi(), &g2.psi(), p)?.is_zero() && p.is_in_hat_gl() => pairs += 1,
                    _ => return Ok(fail(format!("no verified conjugator for ({g1}, {g2})"))),
                }
            }
        }
    }
    let d_hat = "t12".parse::<GeneratorId>()?.psi();
    let e_hat = "t123".parse::<GeneratorId>()?.psi();
    let orders = (d_hat.order()?, e_hat.order()?);
    let (cd, ce) = (order_census(&d_hat, 2)?, order_census(&e_hat, 2)?);
    let ranks = (commutant(&d_hat)?.rank(), commutant(&e_hat)?.rank());
    let ok = orders == (OrderResult::Finite(2), OrderResult::Finite(3))
        && cd.count(2) >= 3
        && ce.count(2) == 1
        && ce.order2 == vec![IntMatrix::diag(&[-1, -1, -1])]
        && ranks == (5, 3);
    Ok(check(
        ok,
        format!("{pairs} conjugator pairs; D̂ vs Ê: orders (2,3), involutions ({} vs 1), ranks (5,3)", cd.count(2)),
        format!("orders {orders:?}, involutions ({}, {}), ranks {ranks:?}", cd.count(2), ce.count(2)),
    ))
}

fn p3_ranks(_: &Config) -> Result<Outcome> {
    for n in 1..=3 {
        for l in 1..=3 {
            for m in 1..=3 {
                let r = p3_audit(n, l, m, 2)?;
                if (r.commutant_a.rank(), r.commutant_b.rank()) != (3, 5) || !r.eigen_a.all_unit {
                    return Ok(fail(format!("(n,l,m) = ({n},{l},{m}): ranks ({}, {})", r.commutant_a.rank(), r.commutant_b.rank())));
                }
            }
        }
    }
    Ok(pass("27 parameter triples: ranks (3, 5), bounded Z(Â) eigenvalues all ±1"))
}

fn p3_erratum(_: &Config) -> Result<Outcome> {
    let mut nonzero = 0;
    let x = m3([[1, 0, 0], [0, 2, 1], [0, 3, 2]]);
    for m in 1..=3 {
        let b = family_b(m);
        if !b.mul(&x)?.sub(&x.mul(&b)?)?.is_zero() {
            nonzero += 1;
        }
    }
    let r = p3_audit(1, 1, 1, 2)?;
    let row = r.x_checks[0].residual.row(0).to_vec();
    Ok(if nonzero == 3 && r.erratum {
        Outcome {
            status: Status::Erratum,
            detail: format!(
                "B̂_m·X̂ − X̂·B̂_m ≠ 0 for m = 1..3 (row 1 at m = 1: ({}, {}, {})); commutation forces X32 = X22 − X11",
                row[0], row[1], row[2]
            ),
        }
    } else {
        pass("X̂ commutes with B̂_m")
    })
}

fn embedding(_: &Config) -> Result<Outcome> {
    let samples = [family_a(1, 1), family_b(1), m3([[1, 2, 2], [0, 3, 4], [0, 2, 3]]), m3([[1, 1, 0], [0, 1, 0], [0, 0, 1]])];
    for m in &samples {
        for dim in 4..=6 {
            let big = block_embed(m, dim)?;
            let r = block_embed_audit(m, dim)?;
            if big.is_in_hat_gl() != m.is_in_hat_gl() || !r.projection_equal {
                return Ok(fail(format!("{m} at dimension {dim}")));
            }
        }
    }
    Ok(pass("membership preserved and commutant projection equal for dimensions 4–6"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounded_parity_matrices_are_members() {
        let all = bounded_parity_matrices();
        assert!(all.iter().take(200).all(IntMatrix::is_in_hat_gl));
        assert!(all.contains(&IntMatrix::identity(3)));
    }

    #[test]
    fn admissible_instances_avoid_parabolic_blocks() {
        for f in random_admissible(7, 20) {
            let t = f.a2.trace();
            assert!(t != BigInt::from(2) && t != BigInt::from(-2));
        }
    }
}

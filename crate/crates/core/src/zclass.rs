//! z-class witnesses and distinguishers for 3×3 parity-subgroup matrices:
//! conjugators between generator images, order and lattice invariants of
//! centralizers, the two infinite families `Â_{n,l}`, `B̂_m`, and the block
//! embedding into higher rank.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::abelianization::psi;
use crate::centralizer::{commutant, order_census, psi_a12, CommutantLattice, DEFAULT_CENSUS_BOUND};
use crate::error::{Error, Result};
use crate::freegroup::{gen_aij, gen_sigma, gen_tau, Permutation};
use crate::intmat::{IntMatrix, OrderResult};
use crate::lattice::{self, IntVec};
use crate::reducible::{conjugation_residual, solve_conjugation_system};

/// `Â_{n,l} = [[1, 2n, −2n], [0, 1, 2l], [0, 0, 1]]`
pub fn family_a(n: i64, l: i64) -> IntMatrix {
    IntMatrix::from_array([[1, 2 * n, -2 * n], [0, 1, 2 * l], [0, 0, 1]])
}

/// `B̂_m = [[1, 2m, −2m], [0, 1, 0], [0, 0, 1]]`
pub fn family_b(m: i64) -> IntMatrix {
    IntMatrix::from_array([[1, 2 * m, -2 * m], [0, 1, 0], [0, 0, 1]])
}

/// A generator of the rank-3 palindromic automorphism group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeneratorId {
    A(usize, usize),
    Sigma(usize),
    Tau(Permutation),
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorId::A(i, j) => write!(f, "A{i}{j}"),
            GeneratorId::Sigma(i) => write!(f, "sigma{i}"),
            GeneratorId::Tau(p) => {
                f.write_str("tau")?;
                let moved: Vec<usize> = (1..=3).filter(|&k| p.apply(k) != k).collect();
                if moved.len() == 3 {
                    write!(f, "1{}{}", p.apply(1), p.apply(p.apply(1)))
                } else {
                    moved.iter().try_for_each(|k| write!(f, "{k}"))
                }
            }
        }
    }
}

impl FromStr for GeneratorId {
    type Err = Error;

    /// `A12`, `A_31`; `s1`, `sigma2`, `σ3`; `t12`, `tau123`, `tau(132)`.
    fn from_str(text: &str) -> Result<GeneratorId> {
        let bad = || Error::UnknownId(format!("unknown generator `{text}`"));
        let compact: String = text.chars().filter(|c| !matches!(c, '_' | '(' | ')') && !c.is_whitespace()).collect();
        let lower = compact.to_lowercase();
        let (head, digits) = lower.split_at(lower.find(|c: char| c.is_ascii_digit()).ok_or_else(bad)?);
        if !digits.chars().all(|c| ('1'..='3').contains(&c)) {
            return Err(bad());
        }
        let idx: Vec<usize> = digits.bytes().map(|b| (b - b'0') as usize).collect();
        match (head, idx.as_slice()) {
            ("a", [i, j]) if i != j => Ok(GeneratorId::A(*i, *j)),
            ("s" | "sigma" | "σ", [i]) => Ok(GeneratorId::Sigma(*i)),
            ("t" | "tau" | "τ", cycle) if (2..=3).contains(&cycle.len()) => {
                Ok(GeneratorId::Tau(Permutation::from_cycles(3, &format!("({digits})")).map_err(|_| bad())?))
            }
            _ => Err(bad()),
        }
    }
}

impl GeneratorId {
    pub fn psi(&self) -> IntMatrix {
        let f = match self {
            GeneratorId::A(i, j) => gen_aij(3, *i, *j),
            GeneratorId::Sigma(i) => gen_sigma(3, *i),
            GeneratorId::Tau(p) => gen_tau(3, p),
        };
        psi(&f.expect("validated on parse"))
    }
}

/// How strongly a distinguisher separates the two centralizers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "grade", rename_all = "snake_case")]
pub enum Grade {
    /// The invariant was computed exactly and separates the classes.
    Exact,
    /// Separation by the rank of an exactly computed lattice.
    LatticeRank,
    /// Values observed among elements with entries bounded by `bound`.
    Bounded { bound: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Distinguisher {
    pub invariant: String,
    pub left: String,
    pub right: String,
    #[serde(flatten)]
    pub grade: Grade,
    pub scope: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Outcome {
    ConjugatorFound {
        conjugator: IntMatrix,
        /// Bounded centralizer elements of the left side whose conjugates
        /// were checked to centralize the right side.
        samples_verified: usize,
    },
    Distinguished { distinguishers: Vec<Distinguisher> },
    Inconclusive { bound: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZClassWitness {
    pub left: IntMatrix,
    pub right: IntMatrix,
    pub outcome: Outcome,
}

impl ZClassWitness {
    pub fn conjugator(&self) -> Option<&IntMatrix> {
        match &self.outcome {
            Outcome::ConjugatorFound { conjugator, .. } => Some(conjugator),
            _ => None,
        }
    }

    pub fn distinguishers(&self) -> &[Distinguisher] {
        match &self.outcome {
            Outcome::Distinguished { distinguishers } => distinguishers,
            _ => &[],
        }
    }
}

/// The 48 signed permutation matrices: plain permutations first, then the
/// sign patterns in a fixed order. All lie in the parity subgroup.
pub fn signed_permutations() -> Vec<IntMatrix> {
    let perms: Vec<IntMatrix> = Permutation::all(3).iter().map(IntMatrix::permutation).collect();
    let mut out = perms.clone();
    for mask in 1..8u32 {
        let signs: Vec<i64> = (0..3).map(|k| if mask >> k & 1 == 1 { -1 } else { 1 }).collect();
        let d = IntMatrix::diag(&signs);
        out.extend(perms.iter().map(|p| &d * p));
    }
    out
}

/// Searches the signed permutation matrices for `P` with `P·A·P⁻¹ = B`.
pub fn find_signed_permutation_conjugator(a: &IntMatrix, b: &IntMatrix) -> Result<Option<IntMatrix>> {
    for p in signed_permutations() {
        if conjugation_residual(a, b, &p)?.is_zero() {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

/// Conjugator witness or distinguishers for the z-classes of two
/// matrices. A conjugator of the matrices conjugates the centralizers; it
/// is checked on the bounded centralizer of the left side.
pub fn zclass_witness(a: &IntMatrix, b: &IntMatrix, bound: i64) -> Result<ZClassWitness> {
    if let Some(p) = find_signed_permutation_conjugator(a, b)? {
        if !p.is_in_hat_gl() {
            return Err(Error::Internal(format!("conjugator {p} is outside the parity subgroup")));
        }
        let p_inv = p.inverse_unimodular()?;
        let samples = crate::centralizer::centralizer_enumerate(a, 1)?;
        for x in &samples {
            let y = p.mul(x)?.mul(&p_inv)?;
            if !y.commutes_with(b)? {
                return Err(Error::Internal(format!("conjugated centralizer element {y} fails")));
            }
        }
        return Ok(ZClassWitness {
            left: a.clone(),
            right: b.clone(),
            outcome: Outcome::ConjugatorFound { conjugator: p, samples_verified: samples.len() },
        });
    }
    let mut distinguishers = Vec::new();
    let (oa, ob) = (a.order()?, b.order()?);
    if oa != ob {
        distinguishers.push(Distinguisher {
            invariant: "order".into(),
            left: oa.to_string(),
            right: ob.to_string(),
            grade: Grade::Exact,
            scope: "the matrices themselves are not conjugate".into(),
        });
    }
    let (ca, cb) = (order_census(a, bound)?, order_census(b, bound)?);
    for k in [2u32, 4] {
        if ca.count(k) != cb.count(k) {
            distinguishers.push(Distinguisher {
                invariant: format!("order-{k} elements in centralizer"),
                left: ca.count(k).to_string(),
                right: cb.count(k).to_string(),
                grade: Grade::Bounded { bound },
                scope: "parity-subgroup centralizer elements with bounded entries".into(),
            });
        }
    }
    let (ra, rb) = (commutant(a)?.rank(), commutant(b)?.rank());
    if ra != rb {
        distinguishers.push(Distinguisher {
            invariant: "commutant rank".into(),
            left: ra.to_string(),
            right: rb.to_string(),
            grade: Grade::LatticeRank,
            scope: "integer commutant lattices".into(),
        });
    }
    let outcome = if distinguishers.is_empty() {
        Outcome::Inconclusive { bound }
    } else {
        Outcome::Distinguished { distinguishers }
    };
    Ok(ZClassWitness { left: a.clone(), right: b.clone(), outcome })
}

pub fn generator_zclass_witness(g1: &GeneratorId, g2: &GeneratorId) -> Result<ZClassWitness> {
    zclass_witness(&g1.psi(), &g2.psi(), DEFAULT_CENSUS_BOUND)
}

/// Verification that no parity-subgroup element commuting with `ψ(A₁₂)`
/// has order 4. Such an element is `X = [[a,b,c],[0,a,0],[0,h,j]]` with
/// `det X = a²j = ±1`, so `a, j ∈ {±1}`; in each sign case
/// `(X² − I)³ = 0` holds identically in `b, c, h`. Then `X⁴ = I` makes
/// `X² = I + N` unipotent of finite order, hence `X² = I`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParametricProof {
    pub commutant_rank: usize,
    /// Sign cases `(a, j)` for which the identity was verified.
    pub cases: Vec<(i64, i64)>,
    /// Grid `[-r, r]³` on which each entry of `(X² − I)³` (degree ≤ 6 in
    /// each variable) was checked to vanish.
    pub grid_radius: i64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NotSameReport {
    pub witness: ZClassWitness,
    pub order4_element: IntMatrix,
    pub order4_element_order: OrderResult,
    pub order4_element_commutes: bool,
    pub proof: ParametricProof,
    pub scan_bound: i64,
    /// Distinct orders among bounded centralizer elements of `ψ(A₁₂)`.
    pub scan_orders: Vec<OrderResult>,
}

fn a12_commutant_shape_is_expected(lat: &CommutantLattice) -> bool {
    let f = crate::centralizer::Family::A12Form;
    lat.rank() == 5 && lat.basis().iter().all(|x| f.matches(x))
}

/// Proves the identity `(X² − I)³ = 0` over the rank-5 commutant of
/// `ψ(A₁₂)` in each sign case, by evaluation on a grid exceeding the
/// per-variable degree.
pub fn a12_parametric_proof() -> Result<ParametricProof> {
    let lat = commutant(&psi_a12())?;
    let radius = 3;
    let mut cases = Vec::new();
    let mut holds = a12_commutant_shape_is_expected(&lat);
    let id = IntMatrix::identity(3);
    for a in [1i64, -1] {
        for j in [1i64, -1] {
            for b in -radius..=radius {
                for c in -radius..=radius {
                    for h in -radius..=radius {
                        let x = IntMatrix::from_array([[a, b, c], [0, a, 0], [0, h, j]]);
                        let n = x.pow(2).sub(&id)?;
                        holds &= n.pow(3).is_zero();
                    }
                }
            }
            cases.push((a, j));
        }
    }
    Ok(ParametricProof { commutant_rank: lat.rank(), cases, grid_radius: radius, holds })
}

/// `ψ(A₁₂)` and `ψ(σ_{a₁})` lie in different z-classes: the centralizer of
/// the latter contains an element of order 4, the former's has none.
pub fn distinguish_a12_sigma() -> Result<NotSameReport> {
    distinguish_a12_sigma_with_bound(3)
}

pub fn distinguish_a12_sigma_with_bound(scan_bound: i64) -> Result<NotSameReport> {
    let a12 = psi_a12();
    let sigma = GeneratorId::Sigma(1).psi();
    let b = IntMatrix::from_array([[1, 0, 0], [0, 0, -1], [0, 1, 0]]);
    let order = b.order()?;
    let commutes = b.commutes_with(&sigma)? && b.is_in_hat_gl();
    let proof = a12_parametric_proof()?;
    let mut orders = BTreeSet::new();
    for x in crate::centralizer::centralizer_enumerate(&a12, scan_bound)? {
        orders.insert(crate::centralizer::inf_or2_classify(&x)?.order);
    }
    let sigma_has = commutes && order == OrderResult::Finite(4);
    let a12_has = !proof.holds || orders.contains(&OrderResult::Finite(4));
    let witness = ZClassWitness {
        left: a12,
        right: sigma,
        outcome: Outcome::Distinguished {
            distinguishers: vec![Distinguisher {
                invariant: "order-4 element exists".into(),
                left: a12_has.to_string(),
                right: sigma_has.to_string(),
                grade: if proof.holds { Grade::Exact } else { Grade::Bounded { bound: scan_bound } },
                scope: "parity-subgroup centralizers".into(),
            }],
        },
    };
    Ok(NotSameReport {
        witness,
        order4_element: b,
        order4_element_order: order,
        order4_element_commutes: commutes,
        proof,
        scan_bound,
        scan_orders: orders.into_iter().collect(),
    })
}

/// Parameters of the `D̂` pair `[[1, bn, c], [0, 1, bl], [0, 0, 1]]` vs
/// `[[1, bm, c], [0, 1, bt], [0, 0, 1]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct P3Params {
    pub b: i64,
    pub c: i64,
    /// Defaults to `l + 1`, which is never `±l`.
    pub t: Option<i64>,
}

impl Default for P3Params {
    fn default() -> Self {
        P3Params { b: 2, c: 2, t: None }
    }
}

pub fn d_hat(b: i64, c: i64, n: i64, l: i64) -> IntMatrix {
    IntMatrix::from_array([[1, b * n, c], [0, 1, b * l], [0, 0, 1]])
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EigenSummary {
    pub elements: usize,
    pub all_unit: bool,
    pub counterexample: Option<IntMatrix>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct XCheck {
    pub b: i64,
    pub c: i64,
    pub x: IntMatrix,
    pub in_parity_subgroup: bool,
    pub char_poly: String,
    /// `B̂_m·X̂ − X̂·B̂_m`
    pub residual: IntMatrix,
    pub commutes: bool,
    pub erratum: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EqualityCheck {
    pub equality: String,
    pub implied: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DPairAudit {
    pub params: P3Params,
    pub left: IntMatrix,
    pub right: IntMatrix,
    /// Nonzero equations of `Γ·D̂_{n,l} = D̂_{m,t}·Γ` over
    /// `Γ = [[p,q,r],[u,v,w],[x,y,z]]`.
    pub equations: Vec<String>,
    pub equalities: Vec<EqualityCheck>,
    pub solution_rank: usize,
    pub bound: i64,
    pub gl_conjugators: usize,
    pub parity_conjugators: usize,
    /// Parameter pairs `(m', t')` with `|m'|, |t'| ≤ 3` for which a bounded
    /// conjugator from `D̂_{n,l}` to `D̂_{m',t'}` exists.
    pub conjugate_parameters: Vec<(i64, i64)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct P3Report {
    pub n: i64,
    pub l: i64,
    pub m: i64,
    pub bound: i64,
    pub a: IntMatrix,
    pub b: IntMatrix,
    pub commutant_a: CommutantLattice,
    pub commutant_b: CommutantLattice,
    pub relations_a: Vec<String>,
    pub relations_b: Vec<String>,
    pub eigen_a: EigenSummary,
    pub eigen_b: EigenSummary,
    pub x_checks: Vec<XCheck>,
    pub erratum: bool,
    pub d_pair: DPairAudit,
    /// Rank of the ℚ-span of bounded parity-subgroup centralizer elements.
    pub span_rank_a: usize,
    pub span_rank_b: usize,
    pub distinguishers: Vec<Distinguisher>,
}

const GAMMA: [&str; 9] = ["p", "q", "r", "u", "v", "w", "x", "y", "z"];

fn format_equation(coeffs: &[BigInt]) -> String {
    let mut s = String::new();
    for (k, c) in coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        let neg = c < &BigInt::zero();
        let mag = if neg { -c } else { c.clone() };
        let coef = if mag == BigInt::from(1) { String::new() } else { mag.to_string() };
        let sign = match (s.is_empty(), neg) {
            (true, true) => "-".to_string(),
            (true, false) => String::new(),
            (false, true) => " - ".to_string(),
            (false, false) => " + ".to_string(),
        };
        s.push_str(&format!("{sign}{coef}{}", GAMMA[k]));
    }
    format!("{s} = 0")
}

fn eigen_summary(elements: &[IntMatrix]) -> Result<EigenSummary> {
    let mut counterexample = None;
    for x in elements {
        if !x.eigen_classify()?.all_unit {
            counterexample = Some(x.clone());
            break;
        }
    }
    Ok(EigenSummary { elements: elements.len(), all_unit: counterexample.is_none(), counterexample })
}

fn span_rank(elements: &[IntMatrix]) -> usize {
    let rows: Vec<IntVec> = elements.iter().map(|x| x.entries().to_vec()).collect();
    if rows.is_empty() {
        0
    } else {
        lattice::rank(&rows)
    }
}

fn vec9(terms: &[(usize, i64)]) -> IntVec {
    let mut v = vec![BigInt::zero(); 9];
    for &(k, c) in terms {
        v[k] += c;
    }
    v
}

fn d_pair_audit(n: i64, l: i64, m: i64, params: P3Params, bound: i64) -> Result<DPairAudit> {
    let P3Params { b, c, .. } = params;
    let t = params.t.unwrap_or(l + 1);
    let left = d_hat(b, c, n, l);
    let right = d_hat(b, c, m, t);
    let sys = solve_conjugation_system(&left, &right)?;
    let equations = sys.equations();
    // indices: p q r u v w x y z = 0..8
    let (p, q, u, v, w, x, y, z) = (0, 1, 3, 4, 5, 6, 7, 8);
    let listed = [
        ("bmu + cx = 0", vec9(&[(u, b * m), (x, c)])),
        ("btx = 0", vec9(&[(x, b * t)])),
        ("bnp = bmv + cy", vec9(&[(p, b * n), (v, -b * m), (y, -c)])),
        ("nu = ty", vec9(&[(u, n), (y, -t)])),
        ("bnx = 0", vec9(&[(x, b * n)])),
        ("cp + blq = bmw + cz", vec9(&[(p, c), (q, b * l), (w, -b * m), (z, -c)])),
        ("cu + blv = btz", vec9(&[(u, c), (v, b * l), (z, -b * t)])),
        ("bly = 0", vec9(&[(y, b * l)])),
    ];
    let equalities = listed
        .into_iter()
        .map(|(name, vec)| EqualityCheck { equality: name.into(), implied: lattice::in_rational_span(&equations, &vec) })
        .collect();
    let gl_conjugators = sys.bounded_invertible(bound, false)?.len();
    let parity_conjugators = sys.bounded_invertible(bound, true)?.len();
    let mut conjugate_parameters = Vec::new();
    for m2 in -3..=3i64 {
        for t2 in -3..=3i64 {
            if m2 == 0 || t2 == 0 {
                continue;
            }
            let s = solve_conjugation_system(&left, &d_hat(b, c, m2, t2))?;
            if !s.bounded_invertible(1, false)?.is_empty() {
                conjugate_parameters.push((m2, t2));
            }
        }
    }
    Ok(DPairAudit {
        params: P3Params { b, c, t: Some(t) },
        left,
        right,
        equations: equations.iter().map(|e| format_equation(e)).collect(),
        equalities,
        solution_rank: sys.rank(),
        bound,
        gl_conjugators,
        parity_conjugators,
        conjugate_parameters,
    })
}

/// Audit of the pair `Â_{n,l}`, `B̂_m`: commutants, eigenvalues of bounded
/// centralizer elements, the displayed `X̂_{b,c}` against `B̂_m`, the `D̂`
/// conjugation equations, and graded distinguishers.
pub fn p3_audit(n: i64, l: i64, m: i64, bound: i64) -> Result<P3Report> {
    p3_audit_with(n, l, m, bound, P3Params::default())
}

pub fn p3_audit_with(n: i64, l: i64, m: i64, bound: i64, params: P3Params) -> Result<P3Report> {
    if n == 0 || l == 0 || m == 0 {
        return Err(Error::InvalidArgument("n, l and m must be nonzero".into()));
    }
    if bound < 2 {
        return Err(Error::InvalidArgument(format!("bound must be ≥ 2, got {bound}")));
    }
    let a = family_a(n, l);
    let b = family_b(m);
    let commutant_a = commutant(&a)?;
    let commutant_b = commutant(&b)?;
    let za = commutant_a.bounded_hat_elements(bound)?;
    let zb = commutant_b.bounded_hat_elements(bound)?;
    let eigen_a = eigen_summary(&za)?;
    let eigen_b = eigen_summary(&zb)?;

    let mut x_checks = Vec::new();
    for (xb, xc) in [(0, 0), (2, 0), (0, 2), (2, 2)] {
        let x = IntMatrix::from_array([[1, xb, xc], [0, 2, 1], [0, 3, 2]]);
        let residual = conjugation_residual(&x, &x, &b)?;
        let commutes = residual.is_zero();
        x_checks.push(XCheck {
            b: xb,
            c: xc,
            in_parity_subgroup: x.is_in_hat_gl(),
            char_poly: x.char_poly().to_string(),
            x,
            residual,
            commutes,
            erratum: !commutes,
        });
    }
    let erratum = x_checks.iter().any(|c| c.erratum);
    let d_pair = d_pair_audit(n, l, m, params, bound)?;

    let (span_rank_a, span_rank_b) = (span_rank(&za), span_rank(&zb));
    let mut distinguishers = vec![Distinguisher {
        invariant: "commutant rank".into(),
        left: commutant_a.rank().to_string(),
        right: commutant_b.rank().to_string(),
        grade: Grade::LatticeRank,
        scope: "integer commutant lattices".into(),
    }];
    if span_rank_b > commutant_a.rank() {
        // the span of a conjugated group has the conjugated dimension; the
        // left span sits inside a rank-3 lattice, the right one already exceeds it
        distinguishers.push(Distinguisher {
            invariant: "dimension of the ℚ-span of the centralizer".into(),
            left: format!("≤ {}", commutant_a.rank()),
            right: format!("≥ {span_rank_b}"),
            grade: Grade::Exact,
            scope: "conjugation by any invertible rational matrix".into(),
        });
    }
    if eigen_a.all_unit != eigen_b.all_unit {
        distinguishers.push(Distinguisher {
            invariant: "all eigenvalues ±1".into(),
            left: eigen_a.all_unit.to_string(),
            right: eigen_b.all_unit.to_string(),
            grade: Grade::Bounded { bound },
            scope: "parity-subgroup centralizer elements with bounded entries".into(),
        });
    }
    Ok(P3Report {
        n,
        l,
        m,
        bound,
        relations_a: commutant_a.relation_strings(),
        relations_b: commutant_b.relation_strings(),
        a,
        b,
        commutant_a,
        commutant_b,
        eigen_a,
        eigen_b,
        x_checks,
        erratum,
        d_pair,
        span_rank_a,
        span_rank_b,
        distinguishers,
    })
}

/// `[[M, 0], [0, I_{N−3}]]`
pub fn block_embed(m: &IntMatrix, dim: usize) -> Result<IntMatrix> {
    if m.dim() != 3 {
        return Err(Error::Dimension(format!("expected a 3×3 matrix, got {0}×{0}", m.dim())));
    }
    if dim < 3 {
        return Err(Error::Dimension(format!("target dimension must be ≥ 3, got {dim}")));
    }
    let mut out = IntMatrix::identity(dim);
    for i in 0..3 {
        for j in 0..3 {
            out.set(i, j, m.get(i, j).clone());
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmbedReport {
    pub dim: usize,
    pub embedded: IntMatrix,
    pub membership_preserved: bool,
    pub rank_small: usize,
    pub rank_big: usize,
    /// Upper-left blocks of the big commutant span exactly the small one.
    pub projection_equal: bool,
    /// `rank_big − rank_small − (N − 3)²`: intertwiners between the 3×3
    /// block and the identity block.
    pub cross_block_rank: usize,
}

pub fn block_embed_audit(m: &IntMatrix, dim: usize) -> Result<EmbedReport> {
    let big = block_embed(m, dim)?;
    let small = commutant(m)?;
    let large = commutant(&big)?;
    let projected: Vec<IntVec> = large
        .basis()
        .iter()
        .map(|x| (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).map(|(i, j)| x.get(i, j).clone()).collect())
        .collect();
    let projection_equal = lattice::hnf(&projected) == lattice::hnf(small.basis_vectors());
    let outer = (dim - 3) * (dim - 3);
    Ok(EmbedReport {
        dim,
        membership_preserved: big.is_in_hat_gl() == m.is_in_hat_gl(),
        rank_small: small.rank(),
        rank_big: large.rank(),
        projection_equal,
        cross_block_rank: large.rank() - small.rank() - outer,
        embedded: big,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m3(rows: [[i64; 3]; 3]) -> IntMatrix {
        IntMatrix::from_array(rows)
    }

    fn g(s: &str) -> GeneratorId {
        s.parse().unwrap()
    }

    #[test]
    fn families() {
        assert_eq!(family_a(1, 1), m3([[1, 2, -2], [0, 1, 2], [0, 0, 1]]));
        assert_eq!(family_b(1), m3([[1, 2, -2], [0, 1, 0], [0, 0, 1]]));
        assert!(family_a(0, 0).is_identity());
        for k in -3..=3 {
            assert!(family_a(k, 2 - k).is_in_hat_gl() && family_b(k).is_in_hat_gl());
        }
    }

    #[test]
    fn generator_ids() {
        assert_eq!(g("A12"), GeneratorId::A(1, 2));
        assert_eq!(g("A_31"), GeneratorId::A(3, 1));
        assert_eq!(g("sigma2"), GeneratorId::Sigma(2));
        assert_eq!(g("s1"), GeneratorId::Sigma(1));
        assert_eq!(g("tau123").psi(), m3([[0, 0, 1], [1, 0, 0], [0, 1, 0]]));
        assert_eq!(g("t12").psi(), m3([[0, 1, 0], [1, 0, 0], [0, 0, 1]]));
        assert_eq!(g("tau123").to_string(), "tau123");
        assert_eq!(g("t(12)").to_string(), "tau12");
        for bad in ["A11", "A14", "x1", "sigma", "tau1"] {
            assert!(bad.parse::<GeneratorId>().is_err(), "{bad}");
        }
    }

    #[test]
    fn signed_permutations_are_parity_elements() {
        let all = signed_permutations();
        assert_eq!(all.len(), 48);
        assert!(all.iter().all(IntMatrix::is_in_hat_gl));
        assert!(all[..6].iter().all(|p| p.entries().iter().all(|e| e >= &BigInt::zero())));
    }

    #[test]
    fn generator_witnesses() {
        let w = generator_zclass_witness(&g("A12"), &g("A31")).unwrap();
        let p = w.conjugator().unwrap();
        assert_eq!(p, &m3([[0, 1, 0], [0, 0, 1], [1, 0, 0]]));

        let w = generator_zclass_witness(&g("s1"), &g("s2")).unwrap();
        assert_eq!(w.conjugator().unwrap(), &g("t12").psi());

        let w = generator_zclass_witness(&g("t12"), &g("t123")).unwrap();
        let d = w.distinguishers();
        assert_eq!((d[0].invariant.as_str(), d[0].left.as_str(), d[0].right.as_str()), ("order", "2", "3"));
        assert!(d.iter().any(|x| x.invariant == "order-2 elements in centralizer" && x.right == "1"));
        assert!(d.iter().any(|x| x.invariant == "commutant rank" && x.left == "5" && x.right == "3"));
    }

    #[test]
    fn a12_versus_sigma() {
        let r = distinguish_a12_sigma().unwrap();
        assert_eq!(r.order4_element_order, OrderResult::Finite(4));
        assert!(r.order4_element_commutes);
        assert!(r.proof.holds);
        assert_eq!(r.proof.cases.len(), 4);
        assert!(r.scan_orders.iter().all(|o| matches!(o, OrderResult::Finite(1 | 2) | OrderResult::Infinite)));
        let d = &r.witness.distinguishers()[0];
        assert_eq!((d.left.as_str(), d.right.as_str()), ("false", "true"));
        assert_eq!(d.grade, Grade::Exact);
    }

    #[test]
    fn p3_audit_basic() {
        let r = p3_audit(1, 1, 1, 2).unwrap();
        assert_eq!((r.commutant_a.rank(), r.commutant_b.rank()), (3, 5));
        assert!(r.eigen_a.all_unit);
        let x0 = &r.x_checks[0];
        assert_eq!(x0.residual.row(0), &[BigInt::from(0), BigInt::from(-4), BigInt::from(0)]);
        assert!(x0.erratum && r.erratum);
        assert!(r.d_pair.equalities.iter().all(|e| e.implied));
        assert_eq!(r.d_pair.parity_conjugators, 0);
        assert_eq!(r.d_pair.conjugate_parameters, vec![(-1, -1), (-1, 1), (1, -1), (1, 1)]);
        assert_eq!((r.span_rank_a, r.span_rank_b), (3, 5));
        assert!(r.distinguishers.iter().any(|d| d.grade == Grade::Exact));
        assert!(p3_audit(0, 1, 1, 2).is_err());
        assert!(p3_audit(1, 1, 1, 1).is_err());
    }

    #[test]
    fn embedding() {
        let e = block_embed(&family_a(1, 1), 4).unwrap();
        assert_eq!(e.row(3), &[BigInt::from(0), BigInt::from(0), BigInt::from(0), BigInt::from(1)]);
        assert_eq!(e.get(0, 3), &BigInt::zero());
        assert!(block_embed(&IntMatrix::identity(3), 5).unwrap().is_identity());
        assert!(block_embed(&IntMatrix::identity(3), 2).is_err());
        let r = block_embed_audit(&family_a(1, 1), 4).unwrap();
        assert!(r.projection_equal && r.membership_preserved);
        assert_eq!(r.rank_small, 3);
        // one eigenvalue-1 eigenvector on each side of the block
        assert_eq!(r.cross_block_rank, 2);
    }
}

//! Commutant lattices, bounded centralizers inside the parity subgroup,
//! order censuses, and two-sided checks of parametric centralizer shapes.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::intmat::{IntMatrix, OrderResult};
use crate::lattice::{self, IntVec};
use crate::reducible::{solve_conjugation_system, ConjugationLattice};
use crate::zclass::{family_a, family_b};

/// Default entry bound for censuses and family checks.
pub const DEFAULT_CENSUS_BOUND: i64 = 2;

/// Counterexample lists in reports are truncated to this many entries.
pub const MAX_COUNTEREXAMPLES: usize = 8;

pub fn commutes(a: &IntMatrix, b: &IntMatrix) -> Result<bool> {
    if a.dim() != b.dim() {
        return Err(Error::Dimension(format!("{0}×{0} vs {1}×{1}", a.dim(), b.dim())));
    }
    a.commutes_with(b)
}

/// `{X ∈ M_n(ℤ) : X·M = M·X}` with a primitive basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutantLattice {
    lattice: ConjugationLattice,
}

impl Serialize for CommutantLattice {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("CommutantLattice", 3)?;
        st.serialize_field("base", self.base())?;
        st.serialize_field("rank", &self.rank())?;
        st.serialize_field("basis", &self.basis())?;
        st.end()
    }
}

pub fn commutant(m: &IntMatrix) -> Result<CommutantLattice> {
    let lattice = solve_conjugation_system(m, m)?;
    for x in lattice.basis() {
        if !x.commutes_with(m)? {
            return Err(Error::Internal(format!("commutant basis element {x} does not commute")));
        }
    }
    if !lattice.is_saturated() {
        return Err(Error::Internal("commutant basis is not primitive".into()));
    }
    Ok(CommutantLattice { lattice })
}

impl CommutantLattice {
    pub fn base(&self) -> &IntMatrix {
        &self.lattice.a
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    pub fn basis(&self) -> Vec<IntMatrix> {
        self.lattice.basis()
    }

    pub fn basis_vectors(&self) -> &[IntVec] {
        self.lattice.basis_vectors()
    }

    pub fn contains(&self, x: &IntMatrix) -> bool {
        x.commutes_with(self.base()).unwrap_or(false)
    }

    /// Integer linear relations among the entries that every element
    /// satisfies, as HNF rows indexed row-major.
    pub fn relations(&self) -> Vec<IntVec> {
        let n = self.base().dim();
        lattice::integer_kernel(self.basis_vectors(), n * n)
    }

    /// [`CommutantLattice::relations`] rendered as equations in `X11 … Xnn`.
    pub fn relation_strings(&self) -> Vec<String> {
        let n = self.base().dim();
        self.relations().iter().map(|r| format_relation(r, n)).collect()
    }

    pub fn for_each_bounded<F: FnMut(&[i128])>(&self, bound: i64, visit: F) -> Result<()> {
        self.lattice.for_each_bounded(bound, visit)
    }

    /// All bounded lattice points, sorted.
    pub fn bounded_elements(&self, bound: i64) -> Result<Vec<IntMatrix>> {
        let n = self.base().dim();
        let mut out = Vec::new();
        self.for_each_bounded(bound, |p| {
            out.push(IntMatrix::from_flat(n, lattice::to_bigints(p)).expect("n² entries"));
        })?;
        out.sort();
        Ok(out)
    }

    /// Bounded elements lying in the parity subgroup, sorted.
    pub fn bounded_hat_elements(&self, bound: i64) -> Result<Vec<IntMatrix>> {
        self.lattice.bounded_invertible(bound, true)
    }
}

fn format_relation(r: &[BigInt], n: usize) -> String {
    let mut lhs = String::new();
    for (k, c) in r.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        let name = format!("X{}{}", k / n + 1, k % n + 1);
        let mag = c.abs();
        let coef = if mag.is_one() { String::new() } else { format!("{mag}·") };
        if lhs.is_empty() {
            lhs = format!("{}{coef}{name}", if c.is_negative() { "-" } else { "" });
        } else {
            lhs.push_str(&format!(" {} {coef}{name}", if c.is_negative() { "-" } else { "+" }));
        }
    }
    format!("{lhs} = 0")
}

/// All `X` with entries in `[-bound, bound]`, `X·M = M·X`, `X` in the
/// parity subgroup; sorted.
pub fn centralizer_enumerate(m: &IntMatrix, bound: i64) -> Result<Vec<IntMatrix>> {
    if bound < 1 {
        return Err(Error::InvalidArgument(format!("bound must be ≥ 1, got {bound}")));
    }
    let out = commutant(m)?.bounded_hat_elements(bound)?;
    if let Some(x) = out.iter().find(|x| !x.commutes_with(m).unwrap_or(false) || !x.is_in_hat_gl()) {
        return Err(Error::Internal(format!("enumerated {x} is not in the centralizer")));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderCensus {
    pub base: IntMatrix,
    pub bound: i64,
    pub total: usize,
    /// Finite order → number of bounded centralizer elements of that order.
    pub counts: BTreeMap<u32, usize>,
    pub infinite: usize,
    pub order2: Vec<IntMatrix>,
    pub order4: Vec<IntMatrix>,
}

impl OrderCensus {
    pub fn count(&self, order: u32) -> usize {
        self.counts.get(&order).copied().unwrap_or(0)
    }
}

/// Tallies element orders over the bounded centralizer of a 3×3 matrix.
pub fn order_census(m: &IntMatrix, bound: i64) -> Result<OrderCensus> {
    if m.dim() > 3 {
        return Err(Error::Dimension(format!("order census supports n ≤ 3, got {}", m.dim())));
    }
    let elements = centralizer_enumerate(m, bound)?;
    let mut census = OrderCensus {
        base: m.clone(),
        bound,
        total: elements.len(),
        counts: BTreeMap::new(),
        infinite: 0,
        order2: Vec::new(),
        order4: Vec::new(),
    };
    for x in elements {
        match x.order()? {
            OrderResult::Finite(k) => {
                *census.counts.entry(k).or_default() += 1;
                if x.pow(k) != IntMatrix::identity(x.dim()) {
                    return Err(Error::Internal(format!("order {k} of {x} fails verification")));
                }
                match k {
                    2 => census.order2.push(x),
                    4 => census.order4.push(x),
                    _ => {}
                }
            }
            OrderResult::Infinite => census.infinite += 1,
            OrderResult::Unknown(b) => return Err(Error::Internal(format!("order of {x} unresolved at {b}"))),
        }
    }
    Ok(census)
}

pub fn psi_a12() -> IntMatrix {
    IntMatrix::from_array([[1, 2, 0], [0, 1, 0], [0, 0, 1]])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct InfOr2Classification {
    /// `(a, j)`: the diagonal signs of `[[a,b,c],[0,a,0],[0,h,j]]`.
    pub case: (i64, i64),
    pub order: OrderResult,
}

/// Order of a parity-subgroup matrix commuting with `ψ(A₁₂)`, read off from
/// its shape `[[a,b,c],[0,a,0],[0,h,j]]`:
///
/// | (a, j)   | finite iff        | order |
/// |----------|-------------------|-------|
/// | (1, 1)   | b = c = h = 0     | 1     |
/// | (1, −1)  | 2b + ch = 0       | 2     |
/// | (−1, 1)  | −2b + ch = 0      | 2     |
/// | (−1, −1) | b = c = h = 0     | 2     |
///
/// otherwise infinite. The result is cross-checked against the power test.
pub fn inf_or2_classify(x: &IntMatrix) -> Result<InfOr2Classification> {
    if x.dim() != 3 {
        return Err(Error::Dimension(format!("expected a 3×3 matrix, got {0}×{0}", x.dim())));
    }
    if !x.commutes_with(&psi_a12())? {
        return Err(Error::NotInCommutant(format!("{x} does not commute with ψ(A12)")));
    }
    if let Some((row, odd_count)) = x.first_parity_violation() {
        return Err(Error::RowParity { row: row + 1, odd_count });
    }
    let sign = |v: &BigInt| v.to_i64().filter(|s| s.abs() == 1);
    let (a, j) = match (sign(x.get(0, 0)), sign(x.get(2, 2))) {
        (Some(a), Some(j)) => (a, j),
        _ => return Err(Error::NotUnimodular(x.det())),
    };
    let (b, c, h) = (x.get(0, 1), x.get(0, 2), x.get(2, 1));
    let nilpotent_free = b.is_zero() && c.is_zero() && h.is_zero();
    let ch = c * h;
    let order = match (a, j) {
        (1, 1) if nilpotent_free => OrderResult::Finite(1),
        (1, -1) if (BigInt::from(2) * b + &ch).is_zero() => OrderResult::Finite(2),
        (-1, 1) if (&ch - BigInt::from(2) * b).is_zero() => OrderResult::Finite(2),
        (-1, -1) if nilpotent_free => OrderResult::Finite(2),
        _ => OrderResult::Infinite,
    };
    let direct = x.order()?;
    if direct != order {
        return Err(Error::Internal(format!("case ({a}, {j}) gives {order} but the power test gives {direct}")));
    }
    Ok(InfOr2Classification { case: (a, j), order })
}

/// Parametric centralizer shapes that can be checked in both directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// Centralizer of the diagonal sign matrix with −1 at position `i`.
    SignDiag(usize),
    A12Form,
    Tau12Form,
    Tau123Form,
    P3A { n: i64, l: i64 },
    P3B { m: i64 },
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::SignDiag(i) => write!(f, "sign_diag({i})"),
            Family::A12Form => f.write_str("A12_form"),
            Family::Tau12Form => f.write_str("tau12_form"),
            Family::Tau123Form => f.write_str("tau123_form"),
            Family::P3A { n, l } => write!(f, "P3_A({n},{l})"),
            Family::P3B { m } => write!(f, "P3_B({m})"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    /// Accepts `sign_diag(i)`, `A12_form`, `tau12_form`, `tau123_form`,
    /// `P3_A(n,l)` and `P3_B(m)`, case-insensitively.
    fn from_str(text: &str) -> Result<Family> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_ascii_lowercase();
        let unknown = || Error::UnknownId(format!("unknown family `{text}`"));
        let (head, args) = match compact.split_once('(') {
            Some((h, rest)) => {
                let inner = rest.strip_suffix(')').ok_or_else(unknown)?;
                let args = inner
                    .split(',')
                    .map(|a| a.parse::<i64>().map_err(|_| Error::InvalidArgument(format!("bad family parameter `{a}`"))))
                    .collect::<Result<Vec<_>>>()?;
                (h.to_string(), args)
            }
            None => (compact.clone(), Vec::new()),
        };
        let family = match (head.as_str(), args.as_slice()) {
            ("sign_diag", [i]) if (1..=3).contains(i) => Family::SignDiag(*i as usize),
            ("a12_form", []) => Family::A12Form,
            ("tau12_form", []) => Family::Tau12Form,
            ("tau123_form", []) => Family::Tau123Form,
            ("p3_a", [n, l]) => Family::P3A { n: *n, l: *l },
            ("p3_b", [m]) => Family::P3B { m: *m },
            _ => return Err(unknown()),
        };
        Ok(family)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Domain {
    /// Parameters range over ℤ; compared against all bounded commutant points.
    Integer,
    /// Instances must lie in the parity subgroup; compared against the
    /// bounded centralizer in the parity subgroup.
    ParitySubgroup,
}

fn parity_range(bound: i64) -> Vec<i64> {
    (-bound..=bound).collect()
}

impl Family {
    pub fn base(&self) -> IntMatrix {
        match *self {
            Family::SignDiag(i) => {
                let mut d = [1i64; 3];
                d[i - 1] = -1;
                IntMatrix::diag(&d)
            }
            Family::A12Form => psi_a12(),
            Family::Tau12Form => IntMatrix::from_array([[0, 1, 0], [1, 0, 0], [0, 0, 1]]),
            Family::Tau123Form => IntMatrix::from_array([[0, 0, 1], [1, 0, 0], [0, 1, 0]]),
            Family::P3A { n, l } => family_a(n, l),
            Family::P3B { m } => family_b(m),
        }
    }

    pub fn domain(&self) -> Domain {
        match self {
            Family::P3A { .. } | Family::P3B { .. } => Domain::ParitySubgroup,
            _ => Domain::Integer,
        }
    }

    pub fn parameters(&self) -> &'static [&'static str] {
        match self {
            Family::SignDiag(_) => &["p", "q", "r", "s", "t"],
            Family::A12Form => &["a", "b", "c", "h", "j"],
            Family::Tau12Form => &["a", "b", "c", "u", "w"],
            Family::Tau123Form => &["a", "b", "c"],
            Family::P3A { .. } => &["s1", "s2", "s3", "b", "c"],
            Family::P3B { .. } => &["a", "b", "c", "v", "w", "y"],
        }
    }

    fn ranges(&self, bound: i64) -> Vec<Vec<i64>> {
        match self {
            Family::P3A { .. } => {
                let signs = vec![-1, 1];
                vec![signs.clone(), signs.clone(), signs, parity_range(bound), parity_range(bound)]
            }
            _ => vec![parity_range(bound); self.parameters().len()],
        }
    }

    /// The displayed matrix for a parameter vector, or `None` when the
    /// vector has the wrong length or violates the side conditions.
    pub fn instance(&self, p: &[i64]) -> Option<IntMatrix> {
        if p.len() != self.parameters().len() {
            return None;
        }
        let m = match *self {
            Family::SignDiag(i) => {
                // the 2×2 block on the two unsigned coordinates, the signed one isolated
                let (u, v) = match i {
                    1 => (1, 2),
                    2 => (0, 2),
                    _ => (0, 1),
                };
                let mut rows = [[0i64; 3]; 3];
                rows[u][u] = p[0];
                rows[u][v] = p[1];
                rows[v][u] = p[2];
                rows[v][v] = p[3];
                rows[i - 1][i - 1] = p[4];
                IntMatrix::from_array(rows)
            }
            Family::A12Form => IntMatrix::from_array([[p[0], p[1], p[2]], [0, p[0], 0], [0, p[3], p[4]]]),
            Family::Tau12Form => IntMatrix::from_array([[p[0], p[1], p[2]], [p[1], p[0], p[2]], [p[3], p[3], p[4]]]),
            Family::Tau123Form => IntMatrix::from_array([[p[0], p[1], p[2]], [p[2], p[0], p[1]], [p[1], p[2], p[0]]]),
            Family::P3A { n, l } => {
                let (b, c) = (p[3], p[4]);
                if b.is_odd() || c.is_odd() {
                    return None;
                }
                IntMatrix::from_array([[p[0], b * n, c], [0, p[1], b * l], [0, 0, p[2]]])
            }
            Family::P3B { .. } => {
                let (a, b, c, v, w, y) = (p[0], p[1], p[2], p[3], p[4], p[5]);
                let x = IntMatrix::from_array([[a, b, c], [0, v, w], [0, y, a + w]]);
                if !x.is_in_hat_gl() {
                    return None;
                }
                x
            }
        };
        Some(m)
    }

    /// Whether `x` equals some instance (parameters unbounded).
    pub fn matches(&self, x: &IntMatrix) -> bool {
        if x.dim() != 3 {
            return false;
        }
        let g = |i: usize, j: usize| x.get(i, j).clone();
        let zero = |i: usize, j: usize| x.get(i, j).is_zero();
        match *self {
            Family::SignDiag(i) => {
                let k = i - 1;
                (0..3).filter(|&t| t != k).all(|t| zero(k, t) && zero(t, k))
            }
            Family::A12Form => zero(1, 0) && zero(1, 2) && zero(2, 0) && g(0, 0) == g(1, 1),
            Family::Tau12Form => {
                g(1, 0) == g(0, 1) && g(1, 1) == g(0, 0) && g(1, 2) == g(0, 2) && g(2, 0) == g(2, 1)
            }
            Family::Tau123Form => {
                (g(1, 0), g(1, 1), g(1, 2)) == (g(0, 2), g(0, 0), g(0, 1))
                    && (g(2, 0), g(2, 1), g(2, 2)) == (g(0, 1), g(0, 2), g(0, 0))
            }
            Family::P3A { n, l } => {
                let unit = |i| x.get(i, i).abs().is_one();
                if !(zero(1, 0) && zero(2, 0) && zero(2, 1) && unit(0) && unit(1) && unit(2)) {
                    return false;
                }
                if g(0, 2).is_odd() {
                    return false;
                }
                let (n, l) = (BigInt::from(n), BigInt::from(l));
                let b = if !n.is_zero() {
                    if !g(0, 1).is_multiple_of(&n) {
                        return false;
                    }
                    g(0, 1) / &n
                } else if !l.is_zero() {
                    if !g(1, 2).is_multiple_of(&l) {
                        return false;
                    }
                    g(1, 2) / &l
                } else {
                    BigInt::zero()
                };
                b.is_even() && g(0, 1) == &b * &n && g(1, 2) == &b * &l
            }
            Family::P3B { .. } => zero(1, 0) && zero(2, 0) && g(2, 2) == g(0, 0) + g(1, 2),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyReport {
    pub family: String,
    pub base: IntMatrix,
    pub bound: i64,
    pub domain: Domain,
    pub parameters: Vec<&'static str>,
    /// Direction (a): displayed instances that commute with the base.
    pub instances_checked: usize,
    pub instance_failures: usize,
    pub instance_counterexamples: Vec<IntMatrix>,
    pub direction_a: bool,
    /// Direction (b): bounded commutant elements of the displayed shape.
    pub commutant_rank: usize,
    pub commutant_relations: Vec<String>,
    pub elements_checked: usize,
    pub shape_failures: usize,
    pub shape_counterexamples: Vec<IntMatrix>,
    pub direction_b: bool,
}

fn for_each_tuple<F: FnMut(&[i64])>(ranges: &[Vec<i64>], visit: &mut F) {
    fn go<F: FnMut(&[i64])>(ranges: &[Vec<i64>], cur: &mut Vec<i64>, visit: &mut F) {
        if cur.len() == ranges.len() {
            visit(cur);
            return;
        }
        for &v in &ranges[cur.len()] {
            cur.push(v);
            go(ranges, cur, visit);
            cur.pop();
        }
    }
    go(ranges, &mut Vec::with_capacity(ranges.len()), visit);
}

fn truncated(mut v: Vec<IntMatrix>) -> Vec<IntMatrix> {
    v.sort();
    v.dedup();
    v.truncate(MAX_COUNTEREXAMPLES);
    v
}

/// Checks a displayed centralizer in both directions at the given bound:
/// (a) every instance with parameters in `[-bound, bound]` commutes with
/// the base, (b) every bounded commutant element has the displayed shape.
pub fn verify_family(family: Family, bound: i64) -> Result<FamilyReport> {
    if bound < 1 {
        return Err(Error::InvalidArgument(format!("bound must be ≥ 1, got {bound}")));
    }
    let base = family.base();
    let mut checked = 0;
    let mut failures = Vec::new();
    for_each_tuple(&family.ranges(bound), &mut |p| {
        if let Some(x) = family.instance(p) {
            checked += 1;
            if !x.commutes_with(&base).expect("3×3") {
                failures.push(x);
            }
        }
    });
    let lattice = commutant(&base)?;
    let elements = match family.domain() {
        Domain::Integer => lattice.bounded_elements(bound)?,
        Domain::ParitySubgroup => lattice.bounded_hat_elements(bound)?,
    };
    let shape_failures: Vec<IntMatrix> = elements.iter().filter(|x| !family.matches(x)).cloned().collect();
    Ok(FamilyReport {
        family: family.to_string(),
        base,
        bound,
        domain: family.domain(),
        parameters: family.parameters().to_vec(),
        instances_checked: checked,
        instance_failures: failures.len(),
        direction_a: failures.is_empty(),
        instance_counterexamples: truncated(failures),
        commutant_rank: lattice.rank(),
        commutant_relations: lattice.relation_strings(),
        elements_checked: elements.len(),
        shape_failures: shape_failures.len(),
        direction_b: shape_failures.is_empty(),
        shape_counterexamples: truncated(shape_failures),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m3(rows: [[i64; 3]; 3]) -> IntMatrix {
        IntMatrix::from_array(rows)
    }

    fn e_hat() -> IntMatrix {
        m3([[0, 0, 1], [1, 0, 0], [0, 1, 0]])
    }

    fn d_hat() -> IntMatrix {
        m3([[0, 1, 0], [1, 0, 0], [0, 0, 1]])
    }

    #[test]
    fn commutes_examples() {
        assert!(commutes(&psi_a12(), &m3([[1, 0, 2], [0, 1, 0], [0, 2, 1]])).unwrap());
        assert!(commutes(&e_hat(), &IntMatrix::diag(&[-1, -1, -1])).unwrap());
        assert!(!commutes(&m3([[1, 2, -2], [0, 1, 0], [0, 0, 1]]), &m3([[1, 0, 0], [0, 2, 1], [0, 3, 2]])).unwrap());
        assert!(commutes(&IntMatrix::identity(2), &IntMatrix::identity(3)).is_err());
    }

    #[test]
    fn commutant_ranks() {
        assert_eq!(commutant(&psi_a12()).unwrap().rank(), 5);
        assert_eq!(commutant(&e_hat()).unwrap().rank(), 3);
        let d = commutant(&d_hat()).unwrap();
        assert_eq!(d.rank(), 5);
        for x in d.basis() {
            assert!(Family::Tau12Form.matches(&x));
        }
        assert_eq!(commutant(&IntMatrix::identity(3)).unwrap().rank(), 9);
    }

    #[test]
    fn relations_of_a12_commutant() {
        let r = commutant(&psi_a12()).unwrap().relation_strings();
        assert_eq!(r.len(), 4);
        assert!(r.contains(&"X21 = 0".to_string()));
        assert!(r.contains(&"X11 - X22 = 0".to_string()));
    }

    #[test]
    fn bounded_centralizers() {
        let z = centralizer_enumerate(&e_hat(), 1).unwrap();
        let e2 = &e_hat() * &e_hat();
        for x in [IntMatrix::identity(3), IntMatrix::diag(&[-1, -1, -1]), e_hat(), e2] {
            assert!(z.contains(&x));
        }
        let s = centralizer_enumerate(&IntMatrix::diag(&[1, -1, 1]), 1).unwrap();
        assert!(s.iter().all(|x| Family::SignDiag(2).matches(x)));
        assert!(s.contains(&m3([[0, 0, 1], [0, -1, 0], [1, 0, 0]])));
        assert!(centralizer_enumerate(&e_hat(), 0).is_err());
    }

    #[test]
    fn censuses() {
        let e = order_census(&e_hat(), 2).unwrap();
        assert_eq!(e.count(2), 1);
        assert_eq!(e.order2, vec![IntMatrix::diag(&[-1, -1, -1])]);
        let d = order_census(&d_hat(), 1).unwrap();
        assert!(d.count(2) >= 3);
        assert!(d.order2.contains(&IntMatrix::diag(&[-1, -1, 1])));
        assert!(d.order2.contains(&IntMatrix::diag(&[1, 1, -1])));
        let s = order_census(&IntMatrix::diag(&[-1, 1, 1]), 1).unwrap();
        assert!(s.order4.contains(&m3([[1, 0, 0], [0, 0, -1], [0, 1, 0]])));
    }

    #[test]
    fn inf_or2_examples() {
        let c = inf_or2_classify(&psi_a12()).unwrap();
        assert_eq!((c.case, c.order), ((1, 1), OrderResult::Infinite));
        let c = inf_or2_classify(&IntMatrix::diag(&[1, 1, -1])).unwrap();
        assert_eq!((c.case, c.order), ((1, -1), OrderResult::Finite(2)));
        let c = inf_or2_classify(&IntMatrix::identity(3)).unwrap();
        assert_eq!((c.case, c.order), ((1, 1), OrderResult::Finite(1)));
        // 2b + ch = 0 with b = −2, c = 2, h = 2
        let c = inf_or2_classify(&m3([[1, -2, 2], [0, 1, 0], [0, 2, -1]])).unwrap();
        assert_eq!(c.order, OrderResult::Finite(2));
        assert!(matches!(inf_or2_classify(&e_hat()), Err(Error::NotInCommutant(_))));
    }

    #[test]
    fn family_parsing() {
        assert_eq!("sign_diag(2)".parse::<Family>().unwrap(), Family::SignDiag(2));
        assert_eq!("P3_A(1, 2)".parse::<Family>().unwrap(), Family::P3A { n: 1, l: 2 });
        assert_eq!("p3_b(-1)".parse::<Family>().unwrap(), Family::P3B { m: -1 });
        assert_eq!("A12_form".parse::<Family>().unwrap(), Family::A12Form);
        assert!(matches!("sign_diag(4)".parse::<Family>(), Err(Error::UnknownId(_))));
        assert!(matches!("nope".parse::<Family>(), Err(Error::UnknownId(_))));
    }

    #[test]
    fn exact_families_pass_both_directions() {
        for f in [Family::SignDiag(1), Family::SignDiag(2), Family::SignDiag(3), Family::A12Form, Family::Tau12Form, Family::Tau123Form] {
            let r = verify_family(f, 2).unwrap();
            assert!(r.direction_a && r.direction_b, "{f}: {r:?}");
        }
    }

    #[test]
    fn p3_families_report_discrepancies() {
        let a = verify_family(Family::P3A { n: 1, l: 1 }, 2).unwrap();
        assert!(!a.direction_a);
        assert!(a.direction_b);
        assert_eq!(a.commutant_rank, 3);
        let b = verify_family(Family::P3B { m: 1 }, 2).unwrap();
        assert!(!b.direction_a);
        assert!(b.direction_b);
        assert_eq!(b.commutant_rank, 5);
        for rel in ["X21 = 0", "X31 = 0"] {
            assert!(b.commutant_relations.contains(&rel.to_string()), "{:?}", b.commutant_relations);
        }
        let a22 = verify_family(Family::P3A { n: 2, l: 2 }, 2).unwrap();
        assert!(!a22.direction_b);
    }
}

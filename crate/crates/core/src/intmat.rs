//! Exact square integer matrices and the invariants the decision procedures
//! need: determinant, characteristic polynomial, element order and
//! eigenvalue classification, and membership in the parity subgroup.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::freegroup::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    n: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> IntMatrix {
        IntMatrix { n, entries: vec![BigInt::zero(); n * n] }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn scalar(n: usize, value: impl Into<BigInt>) -> IntMatrix {
        let v = value.into();
        let mut m = IntMatrix::zeros(n);
        for i in 0..n {
            m.entries[i * n + i] = v.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<IntMatrix> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::MalformedMatrix("empty matrix".into()));
        }
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::MalformedMatrix(format!(
                    "row {} has {} entries, expected {n}",
                    i + 1,
                    row.len()
                )));
            }
            entries.extend(row);
        }
        Ok(IntMatrix { n, entries })
    }

    /// Row-major entries of length `n²`.
    pub fn from_flat(n: usize, entries: Vec<BigInt>) -> Result<IntMatrix> {
        if entries.len() != n * n || n == 0 {
            return Err(Error::Dimension(format!("{} entries cannot form a {n}×{n} matrix", entries.len())));
        }
        Ok(IntMatrix { n, entries })
    }

    pub fn from_array<const N: usize>(rows: [[i64; N]; N]) -> IntMatrix {
        IntMatrix { n: N, entries: rows.iter().flatten().map(|&v| BigInt::from(v)).collect() }
    }

    pub fn diag(values: &[i64]) -> IntMatrix {
        let mut m = IntMatrix::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            m.set(i, i, BigInt::from(v));
        }
        m
    }

    /// Permutation matrix of ρ: column `j` is `e_{ρ(j)}`.
    pub fn permutation(rho: &Permutation) -> IntMatrix {
        let n = rho.degree();
        let mut m = IntMatrix::zeros(n);
        for j in 1..=n {
            m.set(rho.apply(j) - 1, j - 1, BigInt::one());
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    /// Entries as `i64` when they all fit.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.n)
            .map(|i| self.row(i).iter().map(ToPrimitive::to_i64).collect::<Option<Vec<_>>>())
            .collect()
    }

    pub fn max_abs_entry(&self) -> BigInt {
        self.entries.iter().map(|e| e.abs()).max().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| *self.get(i, j) == BigInt::from((i == j) as i64)))
    }

    pub fn transpose(&self) -> IntMatrix {
        let n = self.n;
        let mut t = IntMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn trace(&self) -> BigInt {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    fn check_same_dim(&self, other: &IntMatrix) -> Result<()> {
        if self.n != other.n {
            return Err(Error::Dimension(format!("{0}×{0} vs {1}×{1}", self.n, other.n)));
        }
        Ok(())
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        self.check_same_dim(other)?;
        let n = self.n;
        let mut out = IntMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * n + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &IntMatrix) -> Result<IntMatrix> {
        self.check_same_dim(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(IntMatrix { n: self.n, entries })
    }

    pub fn sub(&self, other: &IntMatrix) -> Result<IntMatrix> {
        self.check_same_dim(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        Ok(IntMatrix { n: self.n, entries })
    }

    pub fn scale(&self, k: &BigInt) -> IntMatrix {
        IntMatrix { n: self.n, entries: self.entries.iter().map(|e| e * k).collect() }
    }

    pub fn pow(&self, mut k: u32) -> IntMatrix {
        let mut base = self.clone();
        let mut acc = IntMatrix::identity(self.n);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Bareiss fraction-free elimination.
    pub fn det(&self) -> BigInt {
        let n = self.n;
        match n {
            1 => return self.entries[0].clone(),
            2 => return self.get(0, 0) * self.get(1, 1) - self.get(0, 1) * self.get(1, 0),
            3 => {
                let e = |i, j| self.get(i, j);
                return e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1))
                    - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0))
                    + e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0));
            }
            _ => {}
        }
        let mut a = self.rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs().is_one()
    }

    fn minor(&self, skip_row: usize, skip_col: usize) -> IntMatrix {
        let n = self.n;
        let entries = (0..n)
            .filter(|&i| i != skip_row)
            .flat_map(|i| (0..n).filter(move |&j| j != skip_col).map(move |j| (i, j)))
            .map(|(i, j)| self.get(i, j).clone())
            .collect();
        IntMatrix { n: n - 1, entries }
    }

    /// Inverse of a matrix with determinant ±1, via the adjugate.
    pub fn inverse_unimodular(&self) -> Result<IntMatrix> {
        let d = self.det();
        if !d.abs().is_one() {
            return Err(Error::NotUnimodular(d));
        }
        let n = self.n;
        if n == 1 {
            return Ok(self.clone());
        }
        let mut inv = IntMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let c = self.minor(j, i).det();
                let c = if (i + j) % 2 == 0 { c } else { -c };
                inv.set(i, j, c * &d);
            }
        }
        Ok(inv)
    }

    /// `self · other · self⁻¹`.
    pub fn conjugate(&self, other: &IntMatrix) -> Result<IntMatrix> {
        let inv = self.inverse_unimodular()?;
        self.mul(other)?.mul(&inv)
    }

    pub fn commutes_with(&self, other: &IntMatrix) -> Result<bool> {
        Ok(self.mul(other)? == other.mul(self)?)
    }

    /// `χ(t) = det(tI − A)` by the Faddeev–LeVerrier recurrence; every
    /// division in it is exact over ℤ.
    pub fn char_poly(&self) -> CharPoly {
        let n = self.n;
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        let mut m = IntMatrix::zeros(n);
        for k in 1..=n {
            m = &(self * &m) + &IntMatrix::scalar(n, coeffs[n - k + 1].clone());
            let tr = (self * &m).trace();
            coeffs[n - k] = -tr / BigInt::from(k);
        }
        let block = (n == 2).then(|| (self.trace(), self.det()));
        CharPoly { coeffs, block }
    }

    /// Elements of `{+1, −1}` that are eigenvalues. Empty exactly when the
    /// characteristic polynomial has no rational root, e.g. `t³ − t − 1`
    /// for the companion matrix `[[0,0,1],[1,0,1],[0,1,0]]`.
    pub fn unit_eigenvalues(&self) -> Result<Vec<i64>> {
        let d = self.det();
        if !d.abs().is_one() {
            return Err(Error::NotUnimodular(d));
        }
        let chi = self.char_poly();
        Ok([1i64, -1].into_iter().filter(|&s| chi.eval(&BigInt::from(s)).is_zero()).collect())
    }

    /// Element order for `n ≤ 3`. Finite orders in `GL_n(ℤ)`, `n ≤ 3`, lie
    /// in {1, 2, 3, 4, 6}: the minimal polynomial is a product of
    /// cyclotomic factors `Φ_k` with `φ(k) ≤ 3`.
    pub fn order(&self) -> Result<OrderResult> {
        if self.n > 3 {
            return Err(Error::Dimension(format!(
                "order of a {0}×{0} matrix needs an explicit power bound",
                self.n
            )));
        }
        Ok(match self.order_with_bound(6) {
            OrderResult::Unknown(_) => OrderResult::Infinite,
            r => r,
        })
    }

    /// Smallest `k ≤ bound` with `A^k = I`, or `Unknown(bound)`.
    pub fn order_with_bound(&self, bound: u32) -> OrderResult {
        let mut p = self.clone();
        for k in 1..=bound {
            if p.is_identity() {
                return OrderResult::Finite(k);
            }
            p = &p * self;
        }
        OrderResult::Unknown(bound)
    }

    /// Rational-root and quadratic-discriminant classification of the
    /// eigenvalues of a matrix with `n ≤ 3`.
    pub fn eigen_classify(&self) -> Result<EigenReport> {
        if self.n > 3 {
            return Err(Error::Dimension(format!("eigen_classify supports n ≤ 3, got {}", self.n)));
        }
        let chi = self.char_poly();
        let mut rest = chi.coeffs.clone();
        let mut eigenvalues = Vec::new();
        // strip integer roots (rational roots of a monic integer polynomial are integers)
        'outer: while rest.len() > 1 {
            for r in integer_root_candidates(&rest[0]) {
                if eval_poly(&rest, &r).is_zero() {
                    rest = deflate(&rest, &r);
                    eigenvalues.push(Eigenvalue::Rational { value: r });
                    continue 'outer;
                }
            }
            break;
        }
        match rest.len() - 1 {
            0 => {}
            2 => {
                // t² + p t + q
                let (q, p) = (&rest[0], &rest[1]);
                let disc: BigInt = p * p - BigInt::from(4) * q;
                let factor = [q.clone(), p.clone()];
                let ev = if disc.is_negative() {
                    Eigenvalue::ComplexPair { factor, discriminant: disc }
                } else {
                    // a square discriminant would have produced integer roots
                    Eigenvalue::QuadraticIrrational { factor, discriminant: disc }
                };
                eigenvalues.push(ev.clone());
                eigenvalues.push(ev);
            }
            3 => {
                let factor = [rest[0].clone(), rest[1].clone(), rest[2].clone()];
                for _ in 0..3 {
                    eigenvalues.push(Eigenvalue::IrreducibleCubic { factor: factor.clone() });
                }
            }
            d => return Err(Error::Internal(format!("unexpected residual degree {d}"))),
        }
        let all_unit = eigenvalues.iter().all(|e| matches!(e, Eigenvalue::Rational { value: r } if r.abs().is_one()));
        Ok(EigenReport { char_poly: chi, eigenvalues, all_unit })
    }

    /// Membership in the parity subgroup: det ±1 and exactly one odd
    /// entry in every row.
    pub fn is_in_hat_gl(&self) -> bool {
        self.first_parity_violation().is_none() && self.is_unimodular()
    }

    /// First row (0-based) whose odd-entry count differs from one.
    pub fn first_parity_violation(&self) -> Option<(usize, usize)> {
        (0..self.n)
            .map(|i| (i, self.row(i).iter().filter(|e| e.is_odd()).count()))
            .find(|&(_, c)| c != 1)
    }
}

fn eval_poly(coeffs: &[BigInt], t: &BigInt) -> BigInt {
    coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * t + c)
}

/// Synthetic division by `(t − r)` for a known root `r`.
fn deflate(coeffs: &[BigInt], r: &BigInt) -> Vec<BigInt> {
    let d = coeffs.len() - 1;
    let mut out = vec![BigInt::zero(); d];
    let mut carry = BigInt::zero();
    for k in (1..=d).rev() {
        carry = &coeffs[k] + carry * r;
        out[k - 1] = carry.clone();
    }
    out
}

fn integer_root_candidates(constant: &BigInt) -> Vec<BigInt> {
    if constant.is_zero() {
        return vec![BigInt::zero()];
    }
    let c = constant.abs();
    let mut divs = Vec::new();
    let root = c.sqrt();
    let mut d = BigInt::one();
    while d <= root {
        if (&c % &d).is_zero() {
            divs.push(d.clone());
            let q = &c / &d;
            if q != d {
                divs.push(q);
            }
        }
        d += 1;
    }
    divs.sort();
    divs.into_iter().flat_map(|d| [d.clone(), -d]).collect()
}

/// Monic characteristic polynomial, coefficients in ascending degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharPoly {
    pub coeffs: Vec<BigInt>,
    /// `(τ, δ)` = (trace, det) when the matrix is 2×2, so `χ = t² − τt + δ`.
    pub block: Option<(BigInt, BigInt)>,
}

impl Serialize for CharPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("CharPoly", 2)?;
        st.serialize_field("coefficients", &BigIntSeq(&self.coeffs))?;
        st.serialize_field("polynomial", &self.to_string())?;
        st.end()
    }
}

impl CharPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        eval_poly(&self.coeffs, t)
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let coef = if mag.is_one() && k > 0 { String::new() } else { mag.to_string() };
            match k {
                0 => write!(f, "{mag}")?,
                1 => write!(f, "{coef}t")?,
                _ => write!(f, "{coef}t^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OrderResult {
    Finite(u32),
    Infinite,
    Unknown(u32),
}

impl fmt::Display for OrderResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderResult::Finite(k) => write!(f, "{k}"),
            OrderResult::Infinite => f.write_str("infinite"),
            OrderResult::Unknown(b) => write!(f, "unknown (no power ≤ {b} is the identity)"),
        }
    }
}

impl Serialize for OrderResult {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            OrderResult::Finite(k) => s.serialize_u32(*k),
            OrderResult::Infinite => s.serialize_str("infinite"),
            OrderResult::Unknown(_) => s.serialize_str("unknown"),
        }
    }
}

/// One eigenvalue (listed with multiplicity). Quadratic and cubic roots
/// carry the irreducible factor they belong to, ascending coefficients
/// without the leading 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Eigenvalue {
    /// An integer root (the only rational roots a monic integer polynomial has).
    Rational {
        #[serde(serialize_with = "serialize_bigint")]
        value: BigInt,
    },
    QuadraticIrrational {
        #[serde(serialize_with = "serialize_bigints")]
        factor: [BigInt; 2],
        #[serde(serialize_with = "serialize_bigint")]
        discriminant: BigInt,
    },
    ComplexPair {
        #[serde(serialize_with = "serialize_bigints")]
        factor: [BigInt; 2],
        #[serde(serialize_with = "serialize_bigint")]
        discriminant: BigInt,
    },
    IrreducibleCubic {
        #[serde(serialize_with = "serialize_bigints")]
        factor: [BigInt; 3],
    },
}

impl fmt::Display for Eigenvalue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Eigenvalue::Rational { value: r } => write!(f, "{r}"),
            Eigenvalue::QuadraticIrrational { factor, discriminant } => {
                write!(f, "({} ± √{})/2 [real, disc {}]", -&factor[1], discriminant, discriminant)
            }
            Eigenvalue::ComplexPair { factor, discriminant } => {
                write!(f, "({} ± i√{})/2 [complex, disc {}]", -&factor[1], -discriminant, discriminant)
            }
            Eigenvalue::IrreducibleCubic { factor } => {
                write!(f, "root of t^3 + {}t^2 + {}t + {}", factor[2], factor[1], factor[0])
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EigenReport {
    pub char_poly: CharPoly,
    pub eigenvalues: Vec<Eigenvalue>,
    /// Every eigenvalue is +1 or −1.
    pub all_unit: bool,
}

impl EigenReport {
    pub fn rational_roots(&self) -> Vec<BigInt> {
        self.eigenvalues
            .iter()
            .filter_map(|e| match e {
                Eigenvalue::Rational { value: r } => Some(r.clone()),
                _ => None,
            })
            .collect()
    }
}

impl<'a> Mul<&'a IntMatrix> for &'a IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &'a IntMatrix) -> IntMatrix {
        IntMatrix::mul(self, rhs).expect("matrix dimensions must agree")
    }
}

impl<'a> Add<&'a IntMatrix> for &'a IntMatrix {
    type Output = IntMatrix;
    fn add(self, rhs: &'a IntMatrix) -> IntMatrix {
        IntMatrix::add(self, rhs).expect("matrix dimensions must agree")
    }
}

impl<'a> Sub<&'a IntMatrix> for &'a IntMatrix {
    type Output = IntMatrix;
    fn sub(self, rhs: &'a IntMatrix) -> IntMatrix {
        IntMatrix::sub(self, rhs).expect("matrix dimensions must agree")
    }
}

impl Neg for &IntMatrix {
    type Output = IntMatrix;
    fn neg(self) -> IntMatrix {
        IntMatrix { n: self.n, entries: self.entries.iter().map(|e| -e).collect() }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            if i > 0 {
                f.write_str("; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            f.write_str(&row.join(" "))?;
        }
        Ok(())
    }
}

impl IntMatrix {
    /// Multi-line, column-aligned rendering.
    pub fn pretty(&self) -> String {
        let cells: Vec<String> = self.entries.iter().map(ToString::to_string).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        let mut s = String::new();
        for i in 0..self.n {
            s.push('[');
            for j in 0..self.n {
                if j > 0 {
                    s.push(' ');
                }
                s.push_str(&format!("{:>width$}", cells[i * self.n + j]));
            }
            s.push_str("]\n");
        }
        s
    }
}

/// Serializes an integer as a JSON number when it fits in `i64`, else as a
/// decimal string.
pub fn serialize_bigint<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v.to_i64() {
        Some(x) => s.serialize_i64(x),
        None => s.serialize_str(&v.to_string()),
    }
}

/// Serializes a sequence of integers element-wise like [`serialize_bigint`].
pub fn serialize_bigints<S: Serializer, T: AsRef<[BigInt]>>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    BigIntSeq(v.as_ref()).serialize(s)
}

struct BigIntSeq<'a>(&'a [BigInt]);

impl Serialize for BigIntSeq<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for v in self.0 {
            seq.serialize_element(&BigIntJson(v))?;
        }
        seq.end()
    }
}

/// Wrapper that serializes like [`serialize_bigint`].
pub struct BigIntJson<'a>(pub &'a BigInt);

impl Serialize for BigIntJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serialize_bigint(self.0, s)
    }
}

struct RowView<'a>(&'a [BigInt]);

impl Serialize for RowView<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for v in self.0 {
            seq.serialize_element(&BigIntJson(v))?;
        }
        seq.end()
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.n))?;
        for i in 0..self.n {
            seq.serialize_element(&RowView(self.row(i)))?;
        }
        seq.end()
    }
}

/// Parses `1 2 0; 0 1 0; 0 0 1` (entries separated by spaces or commas) or
/// a bracketed array of arrays such as `[[1,2,0],[0,1,0],[0,0,1]]`.
impl FromStr for IntMatrix {
    type Err = Error;
    fn from_str(text: &str) -> Result<IntMatrix> {
        let trimmed = text.trim();
        let normalized = if trimmed.starts_with('[') {
            let compact: String = trimmed.chars().filter(|c| !c.is_whitespace()).collect();
            if !compact.starts_with("[[") || !compact.ends_with("]]") {
                return Err(Error::MalformedMatrix(format!("expected an array of arrays, got `{trimmed}`")));
            }
            compact.replace("],", ";").replace(['[', ']'], "").replace(',', " ")
        } else {
            trimmed.to_string()
        };
        let rows = normalized
            .split(';')
            .map(|r| r.trim())
            .filter(|r| !r.is_empty())
            .map(|r| {
                r.split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|t| !t.is_empty())
                    .map(|t| {
                        t.parse::<BigInt>()
                            .map_err(|_| Error::MalformedMatrix(format!("bad entry `{t}`")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        IntMatrix::from_rows(rows)
    }
}

/// Abelianized generators of the palindromic subgroup: `I + 2E_ij`
/// (`A_ij`), `I − 2E_ii` (`σ_i`) and permutation matrices (`τ_ρ`). All
/// permutations are included for `n ≤ 4`; above that, adjacent
/// transpositions and the long cycle.
pub fn hat_generators(n: usize) -> Vec<IntMatrix> {
    let mut gens = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut m = IntMatrix::identity(n);
                m.set(i, j, BigInt::from(2));
                gens.push(m);
            }
        }
    }
    for i in 0..n {
        let mut m = IntMatrix::identity(n);
        m.set(i, i, BigInt::from(-1));
        gens.push(m);
    }
    if n <= 4 {
        gens.extend(Permutation::all(n).iter().map(IntMatrix::permutation));
    } else {
        for i in 1..n {
            let mut images: Vec<usize> = (1..=n).collect();
            images.swap(i - 1, i);
            gens.push(IntMatrix::permutation(&Permutation::from_images(images).unwrap()));
        }
        let cycle: Vec<usize> = (1..=n).map(|i| i % n + 1).collect();
        gens.push(IntMatrix::permutation(&Permutation::from_images(cycle).unwrap()));
    }
    gens
}

/// Deterministic product of `length` random abelianized generators.
pub fn random_hat_element(n: usize, seed: u64, length: usize) -> IntMatrix {
    let gens = hat_generators(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = IntMatrix::identity(n);
    for _ in 0..length {
        m = &m * &gens[rng.gen_range(0..gens.len())];
    }
    m
}

/// Deterministic product of `length` random elementary unimodular
/// matrices (transvections `I ± E_ij`, sign changes, transpositions).
/// Parity is not controlled.
pub fn random_unimodular(n: usize, seed: u64, length: usize) -> IntMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = IntMatrix::identity(n);
    if n == 1 {
        return if rng.gen_bool(0.5) { m } else { -&m };
    }
    for _ in 0..length {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let mut g = IntMatrix::identity(n);
        match rng.gen_range(0..6) {
            0..=3 => g.set(i, j, BigInt::from(if rng.gen_bool(0.5) { 1 } else { -1 })),
            4 => g.set(i, i, BigInt::from(-1)),
            _ => {
                g.set(i, i, BigInt::zero());
                g.set(j, j, BigInt::zero());
                g.set(i, j, BigInt::one());
                g.set(j, i, BigInt::one());
            }
        }
        m = &m * &g;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m3(rows: [[i64; 3]; 3]) -> IntMatrix {
        IntMatrix::from_array(rows)
    }

    /// Cofactor expansion along the first row, independent of Bareiss.
    fn det_cofactor(m: &IntMatrix) -> BigInt {
        let n = m.dim();
        if n == 1 {
            return m.get(0, 0).clone();
        }
        (0..n)
            .map(|j| {
                let c = m.get(0, j) * det_cofactor(&m.minor(0, j));
                if j % 2 == 0 { c } else { -c }
            })
            .sum()
    }

    #[test]
    fn det_examples() {
        assert_eq!(m3([[1, 2, 0], [0, 1, 0], [0, 0, 1]]).det(), BigInt::from(1));
        assert_eq!(m3([[1, 2, 2], [0, 3, 4], [0, 2, 3]]).det(), BigInt::from(1));
        assert_eq!(IntMatrix::identity(3).inverse_unimodular().unwrap(), IntMatrix::identity(3));
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        for seed in 0..40 {
            let a = random_unimodular(5, seed, 12);
            let b = random_hat_element(5, seed + 100, 6);
            let c = a.add(&b).unwrap();
            assert_eq!(c.det(), det_cofactor(&c));
            assert_eq!(a.det().abs(), BigInt::one());
        }
    }

    #[test]
    fn inverse_errors_and_roundtrip() {
        assert!(matches!(m3([[2, 0, 0], [0, 1, 0], [0, 0, 1]]).inverse_unimodular(), Err(Error::NotUnimodular(_))));
        for seed in 0..20 {
            let a = random_unimodular(4, seed, 15);
            let inv = a.inverse_unimodular().unwrap();
            assert!((&a * &inv).is_identity());
        }
        assert!(IntMatrix::identity(3).mul(&IntMatrix::identity(2)).is_err());
    }

    #[test]
    fn char_poly_examples() {
        let c = IntMatrix::from_array([[3, 4], [2, 3]]).char_poly();
        assert_eq!(c.coeffs, vec![BigInt::from(1), BigInt::from(-6), BigInt::from(1)]);
        assert_eq!(c.block, Some((BigInt::from(6), BigInt::from(1))));
        let e = m3([[0, 0, 1], [1, 0, 0], [0, 1, 0]]).char_poly();
        assert_eq!(e.coeffs, [-1, 0, 0, 1].map(BigInt::from).to_vec());
        assert_eq!(e.to_string(), "t^3 - 1");
        let i = IntMatrix::identity(3).char_poly();
        assert_eq!(i.coeffs, [-1, 3, -3, 1].map(BigInt::from).to_vec());
    }

    #[test]
    fn char_poly_agrees_with_pointwise_determinants() {
        // χ(t) = det(tI − A) checked at n + 1 integer points.
        for seed in 0..30 {
            let n = 1 + (seed as usize % 4);
            let a = random_unimodular(n, seed, 10).add(&random_hat_element(n, seed, 3)).unwrap();
            let chi = a.char_poly();
            for t in -2..=2i64 {
                let direct = (&IntMatrix::scalar(n, t) - &a).det();
                assert_eq!(chi.eval(&BigInt::from(t)), direct, "seed {seed} t {t}");
            }
        }
    }

    #[test]
    fn unit_eigenvalue_examples() {
        assert_eq!(m3([[1, 0, 0], [0, 2, 1], [0, 3, 2]]).unit_eigenvalues().unwrap(), vec![1]);
        assert_eq!(IntMatrix::scalar(3, -1).unit_eigenvalues().unwrap(), vec![-1]);
        assert_eq!(m3([[0, 1, 0], [1, 0, 0], [0, 0, 1]]).unit_eigenvalues().unwrap(), vec![1, -1]);
        assert!(m3([[2, 0, 0], [0, 1, 0], [0, 0, 1]]).unit_eigenvalues().is_err());
    }

    #[test]
    fn order_examples() {
        assert_eq!(m3([[1, 0, 0], [0, 0, -1], [0, 1, 0]]).order().unwrap(), OrderResult::Finite(4));
        assert_eq!(m3([[1, 2, 0], [0, 1, 0], [0, 0, 1]]).order().unwrap(), OrderResult::Infinite);
        assert_eq!(IntMatrix::diag(&[-1, 1, 1]).order().unwrap(), OrderResult::Finite(2));
        assert_eq!(m3([[0, 0, 1], [1, 0, 0], [0, 1, 0]]).order().unwrap(), OrderResult::Finite(3));
        // [[0,-1],[1,1]] ⊕ (−1) has order 6
        assert_eq!(m3([[0, -1, 0], [1, 1, 0], [0, 0, -1]]).order().unwrap(), OrderResult::Finite(6));
        assert!(IntMatrix::identity(4).order().is_err());
        assert_eq!(IntMatrix::identity(4).order_with_bound(3), OrderResult::Finite(1));
        let big = IntMatrix::diag(&[1, 1, 1, 1]).add(&{
            let mut m = IntMatrix::zeros(4);
            m.set(0, 3, BigInt::from(2));
            m
        });
        assert_eq!(big.unwrap().order_with_bound(10), OrderResult::Unknown(10));
    }

    #[test]
    fn eigen_examples() {
        let r = m3([[1, 0, 0], [0, 2, 1], [0, 3, 2]]).eigen_classify().unwrap();
        assert_eq!(r.eigenvalues[0], Eigenvalue::Rational { value: BigInt::from(1) });
        assert!(matches!(&r.eigenvalues[1], Eigenvalue::QuadraticIrrational { discriminant, .. } if *discriminant == BigInt::from(12)));
        assert!(!r.all_unit);

        let u = m3([[1, 2, -2], [0, 1, 2], [0, 0, 1]]).eigen_classify().unwrap();
        assert!(u.all_unit);
        assert_eq!(u.rational_roots(), vec![BigInt::from(1); 3]);

        let e = m3([[0, 0, 1], [1, 0, 0], [0, 1, 0]]).eigen_classify().unwrap();
        assert_eq!(e.eigenvalues[0], Eigenvalue::Rational { value: BigInt::from(1) });
        assert!(matches!(&e.eigenvalues[1], Eigenvalue::ComplexPair { discriminant, .. } if *discriminant == BigInt::from(-3)));

        // irreducible cubic t^3 - 2 (companion matrix)
        let c = m3([[0, 0, 2], [1, 0, 0], [0, 1, 0]]).eigen_classify().unwrap();
        assert!(matches!(c.eigenvalues[0], Eigenvalue::IrreducibleCubic { .. }));
    }

    #[test]
    fn hat_gl_examples() {
        assert!(m3([[1, 2, 2], [0, 3, 4], [0, 2, 3]]).is_in_hat_gl());
        assert!(m3([[0, 1, 0], [1, 0, 0], [0, 0, 1]]).is_in_hat_gl());
        assert!(!m3([[1, 1, 0], [0, 1, 0], [0, 0, 1]]).is_in_hat_gl());
        assert!(!m3([[3, 0, 0], [0, 1, 0], [0, 0, 1]]).is_in_hat_gl());
    }

    #[test]
    fn random_hat_elements() {
        assert!(random_hat_element(3, 7, 0).is_identity());
        assert_eq!(random_hat_element(3, 11, 5), random_hat_element(3, 11, 5));
        for seed in 0..200 {
            assert!(random_hat_element(3, seed, 1 + seed as usize % 20).is_in_hat_gl());
        }
        assert!(random_hat_element(6, 3, 30).is_in_hat_gl());
    }

    #[test]
    fn parse_formats() {
        let a: IntMatrix = "1 2 0; 0 1 0; 0 0 1".parse().unwrap();
        assert_eq!(a, m3([[1, 2, 0], [0, 1, 0], [0, 0, 1]]));
        let b: IntMatrix = "[[1, 2, 0], [0, 1, 0], [0, 0, 1]]".parse().unwrap();
        assert_eq!(a, b);
        let c: IntMatrix = "1,2,0;0,1,0;0,0,1".parse().unwrap();
        assert_eq!(a, c);
        assert_eq!(a.to_string().parse::<IntMatrix>().unwrap(), a);
        assert!("1 2; 3".parse::<IntMatrix>().is_err());
        match "1 x; 0 1".parse::<IntMatrix>() {
            Err(Error::MalformedMatrix(msg)) => assert!(msg.contains("`x`")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn permutation_matrix_convention() {
        let rho = Permutation::from_cycles(3, "(123)").unwrap();
        assert_eq!(IntMatrix::permutation(&rho), m3([[0, 0, 1], [1, 0, 0], [0, 1, 0]]));
    }
}

//! Integer row lattices: Hermite normal form, saturated integer kernels
//! and bounded enumeration of lattice points.
//!
//! Vectors are `Vec<BigInt>`; a lattice is given by a list of generating
//! rows. All elimination is fraction-free (Euclidean row operations).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type IntVec = Vec<BigInt>;

fn sub_multiple(target: &mut [BigInt], source: &[BigInt], q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for (t, s) in target.iter_mut().zip(source) {
        if !s.is_zero() {
            *t -= q * s;
        }
    }
}

/// Brings `rows` to row echelon form on the first `width` columns using
/// unimodular row operations only. Returns the pivot columns; rows
/// `pivots.len()..` are zero on those columns afterwards. With `reduce`,
/// pivots are made positive and the entries above each pivot are reduced
/// into `[0, pivot)`.
fn echelon(rows: &mut [IntVec], width: usize, reduce: bool) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..width {
        if top == rows.len() {
            break;
        }
        while let Some(best) = (top..rows.len())
            .filter(|&r| !rows[r][col].is_zero())
            .min_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()))
        {
            rows.swap(top, best);
            let (head, tail) = rows.split_at_mut(top + 1);
            let pivot_row = &head[top];
            let mut done = true;
            for r in tail.iter_mut() {
                if r[col].is_zero() {
                    continue;
                }
                let q = r[col].div_floor(&pivot_row[col]);
                sub_multiple(r, pivot_row, &q);
                if !r[col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if rows[top][col].is_zero() {
            continue;
        }
        if reduce {
            if rows[top][col].is_negative() {
                for v in rows[top].iter_mut() {
                    *v = -&*v;
                }
            }
            let (head, tail) = rows.split_at_mut(top);
            let pivot_row = &tail[0];
            for r in head.iter_mut() {
                let q = r[col].div_floor(&pivot_row[col]);
                sub_multiple(r, pivot_row, &q);
            }
        }
        pivots.push(col);
        top += 1;
    }
    pivots
}

/// Row-style Hermite normal form of the lattice generated by `rows`
/// (zero rows dropped). Two generating sets span the same lattice iff
/// their HNFs are equal.
pub fn hnf(rows: &[IntVec]) -> Vec<IntVec> {
    let Some(width) = rows.first().map(Vec::len) else {
        return Vec::new();
    };
    let mut work = rows.to_vec();
    let pivots = echelon(&mut work, width, true);
    work.truncate(pivots.len());
    work
}

/// Pivot column of each row of a basis in Hermite normal form.
pub fn pivot_columns(basis: &[IntVec]) -> Vec<usize> {
    basis
        .iter()
        .map(|r| r.iter().position(|v| !v.is_zero()).expect("HNF rows are nonzero"))
        .collect()
}

/// Rank over ℚ of the span of `rows`.
pub fn rank(rows: &[IntVec]) -> usize {
    hnf(rows).len()
}

/// Basis, in Hermite normal form, of `{x ∈ ℤ^ncols : S·x = 0}` where the
/// rows of `S` are `system`. The basis comes from the unimodular transform
/// that echelonizes `Sᵀ`, so it spans the whole integer kernel.
pub fn integer_kernel(system: &[IntVec], ncols: usize) -> Vec<IntVec> {
    let neq = system.len();
    let mut aug: Vec<IntVec> = (0..ncols)
        .map(|k| {
            let mut row: IntVec = system.iter().map(|eq| eq[k].clone()).collect();
            row.extend((0..ncols).map(|j| BigInt::from((j == k) as i64)));
            row
        })
        .collect();
    let pivots = echelon(&mut aug, neq, false);
    let kernel: Vec<IntVec> = aug[pivots.len()..].iter().map(|r| r[neq..].to_vec()).collect();
    hnf(&kernel)
}

/// Smallest saturated lattice containing `rows`: `(ℚ·L) ∩ ℤ^n`.
pub fn saturate(rows: &[IntVec]) -> Vec<IntVec> {
    let Some(width) = rows.first().map(Vec::len) else {
        return Vec::new();
    };
    let orth = integer_kernel(rows, width);
    if orth.is_empty() {
        return (0..width).map(|k| (0..width).map(|j| BigInt::from((j == k) as i64)).collect()).collect();
    }
    integer_kernel(&orth, width)
}

/// True iff the lattice spanned by `rows` is primitive (saturated).
pub fn is_saturated(rows: &[IntVec]) -> bool {
    hnf(rows) == saturate(rows)
}

/// True iff `v` lies in the ℚ-span of `rows`.
pub fn in_rational_span(rows: &[IntVec], v: &IntVec) -> bool {
    let mut with = rows.to_vec();
    with.push(v.clone());
    rank(&with) == rank(rows)
}

/// Solves `x·M = y` over ℤ for a row vector `x`, where `M` is given by its
/// rows. Returns `None` when no integer solution exists.
pub fn solve_left(m_rows: &[IntVec], y: &IntVec) -> Option<IntVec> {
    // x·M = y  ⇔  (x, −1)·[M; y] = 0 ; search the left kernel of [M; y]
    let k = m_rows.len();
    let width = y.len();
    let mut system: Vec<IntVec> = (0..width)
        .map(|c| {
            let mut col: IntVec = m_rows.iter().map(|r| r[c].clone()).collect();
            col.push(y[c].clone());
            col
        })
        .collect();
    if system.is_empty() {
        system.push(vec![BigInt::zero(); k + 1]);
    }
    let kernel = integer_kernel(&system, k + 1);
    // The last coordinates of the kernel generate an ideal gℤ; a solution
    // exists iff g = 1.
    let mut rows = kernel;
    let last = k;
    // Euclid on the last coordinate
    let pivots = {
        let mut reordered: Vec<IntVec> = rows
            .iter()
            .map(|r| {
                let mut v = vec![r[last].clone()];
                v.extend_from_slice(&r[..last]);
                v
            })
            .collect();
        let p = echelon(&mut reordered, 1, true);
        rows = reordered;
        p
    };
    if pivots.is_empty() || !rows[0][0].is_one() {
        return None;
    }
    Some(rows[0][1..].iter().map(|v| -v).collect())
}

/// Visits every point of the lattice with HNF basis `basis` whose entries
/// all lie in `[-bound, bound]`. Points are produced in a fixed order.
///
/// Coordinates are determined pivot by pivot: entry `p_i` of a point only
/// involves the first `i` basis rows, and every entry before `p_{i+1}` is
/// final once those coordinates are fixed, which is where pruning happens.
pub fn for_each_bounded_point<F>(basis: &[IntVec], bound: i64, mut visit: F) -> Result<()>
where
    F: FnMut(&[i128]),
{
    let Some(width) = basis.first().map(Vec::len) else {
        visit(&[]);
        return Ok(());
    };
    let rows: Vec<Vec<i128>> = basis
        .iter()
        .map(|r| r.iter().map(|v| v.to_i128()).collect::<Option<Vec<_>>>())
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Internal("lattice basis entries exceed i128".into()))?;
    let pivots = pivot_columns(basis);
    let mut point = vec![0i128; width];
    descend(&rows, &pivots, 0, bound as i128, &mut point, &mut visit)
}

fn descend<F: FnMut(&[i128])>(
    rows: &[Vec<i128>],
    pivots: &[usize],
    level: usize,
    bound: i128,
    point: &mut Vec<i128>,
    visit: &mut F,
) -> Result<()> {
    let width = point.len();
    if level == rows.len() {
        if point.iter().all(|v| v.abs() <= bound) {
            visit(point);
        }
        return Ok(());
    }
    let p = pivots[level];
    let h = rows[level][p];
    let s = point[p];
    // c·h + s ∈ [−bound, bound]
    let lo = div_ceil(-bound - s, h);
    let hi = (bound - s).div_euclid(h);
    let final_until = pivots.get(level + 1).copied().unwrap_or(width);
    let overflow = || Error::Internal("lattice enumeration overflow".into());
    for c in lo..=hi {
        for (q, b) in point.iter_mut().zip(&rows[level]).skip(p) {
            *q = b.checked_mul(c).and_then(|x| q.checked_add(x)).ok_or_else(overflow)?;
        }
        if point[p..final_until].iter().all(|v| v.abs() <= bound) {
            descend(rows, pivots, level + 1, bound, point, visit)?;
        }
        for (q, b) in point.iter_mut().zip(&rows[level]).skip(p) {
            *q -= b * c;
        }
    }
    Ok(())
}

fn div_ceil(a: i128, b: i128) -> i128 {
    -((-a).div_euclid(b))
}

pub fn to_bigints(v: &[i128]) -> IntVec {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

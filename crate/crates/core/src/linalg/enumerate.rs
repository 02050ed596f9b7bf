//! Exact short-vector enumeration for positive-definite forms.
//!
//! The quadratic form is factored into rational diagonal-pivot shape
//! and the search tree is pruned with exact rational interval bounds,
//! so the enumeration is exhaustive and reproducible.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::matrix::{IntMatrix, RatMatrix};
use crate::error::{Error, Result};

/// Exact diagonal-pivot factorization of a symmetric positive-definite form.
///
/// Convention: the returned matrix `q` is upper triangular with the pivots
/// on the diagonal, and `x^T G x = sum_i q[i][i] * (x_i + sum_{j>i} q[i][j] x_j)^2`.
/// The pivots multiply to `det G`.
pub fn rational_cholesky(g: &IntMatrix) -> Result<RatMatrix> {
    assert!(g.is_symmetric(), "Gram matrix must be symmetric");
    let n = g.rows();
    let mut a = g.to_rational();
    let mut q = RatMatrix::zero(n, n);
    for i in 0..n {
        let p = a.get(i, i).clone();
        if !p.is_positive() {
            return Err(Error::NotPositiveDefinite(i));
        }
        q.set(i, i, p.clone());
        for j in i + 1..n {
            q.set(i, j, a.get(i, j) / &p);
        }
        for j in i + 1..n {
            for k in j..n {
                let v = a.get(j, k) - a.get(i, j) * a.get(i, k) / &p;
                a.set(j, k, v.clone());
                a.set(k, j, v);
            }
        }
    }
    Ok(q)
}

/// Largest integer `x` with `x <= c + sqrt(r)`, for rational `c` and `r >= 0`.
///
/// Starts from an integer-sqrt estimate and fixes it up with the exact
/// predicate `x - c <= sqrt(r) <=> x - c <= 0 or (x - c)^2 <= r`.
pub(crate) fn floor_plus_sqrt(c: &BigRational, r: &BigRational) -> BigInt {
    debug_assert!(!r.is_negative());
    let le_sqrt = |x: &BigInt| -> bool {
        let d = BigRational::from_integer(x.clone()) - c;
        !d.is_positive() || &d * &d <= *r
    };
    let s = (r.numer() * r.denom()).sqrt();
    let mut m = (c + BigRational::new(s, r.denom().clone())).floor().to_integer();
    while le_sqrt(&(&m + 1)) {
        m += 1;
    }
    while !le_sqrt(&m) {
        m -= 1;
    }
    m
}

/// Smallest integer `x` with `x >= c - sqrt(r)`.
pub(crate) fn ceil_minus_sqrt(c: &BigRational, r: &BigRational) -> BigInt {
    -floor_plus_sqrt(&-c, r)
}

/// All vectors `v` in `shift + Z^n` with `v^T G v = norm`, for `G` positive
/// definite. The output is sorted lexicographically by coordinates; for zero
/// shift it is closed under negation.
///
/// No basis reduction runs ahead of the factorization: ranks stay below ~20
/// and norms at 2 in this crate, which keeps the tree small. A reduction
/// pass in front of `rational_cholesky` is the upgrade path for anything
/// bigger.
pub fn vectors_of_norm(
    g: &IntMatrix,
    norm: &BigInt,
    shift: &[BigRational],
) -> Result<Vec<Vec<BigRational>>> {
    let n = g.rows();
    assert_eq!(shift.len(), n, "shift length must match the rank");
    let q = rational_cholesky(g)?;
    if norm.is_negative() {
        return Ok(Vec::new());
    }
    let target = BigRational::from_integer(norm.clone());
    let mut coords = vec![BigRational::zero(); n];
    let mut out = Vec::new();
    descend(&q, shift, n, &target, &mut coords, &mut out);
    out.sort();
    Ok(out)
}

/// Depth-first over levels n-1, ..., 0; `budget` is what remains of the norm
/// after the contributions of levels above `level`.
fn descend(
    q: &RatMatrix,
    shift: &[BigRational],
    level: usize,
    budget: &BigRational,
    coords: &mut Vec<BigRational>,
    out: &mut Vec<Vec<BigRational>>,
) {
    if level == 0 {
        if budget.is_zero() {
            out.push(coords.clone());
        }
        return;
    }
    let i = level - 1;
    // Inner offset from the already-chosen outer coordinates.
    let mut c = BigRational::zero();
    for j in level..q.cols() {
        c += q.get(i, j) * &coords[j];
    }
    let t = &shift[i] + &c;
    let r = budget / q.get(i, i);
    let lo = ceil_minus_sqrt(&-&t, &r);
    let hi = floor_plus_sqrt(&-&t, &r);
    let mut x = lo;
    while x <= hi {
        let y = BigRational::from_integer(x.clone()) + &shift[i];
        let z = &y + &c;
        let w = q.get(i, i) * &z * &z;
        if w <= *budget {
            coords[i] = y;
            let rem = budget - &w;
            descend(q, shift, i, &rem, coords, out);
        }
        x += 1;
    }
    coords[i] = BigRational::zero();
}

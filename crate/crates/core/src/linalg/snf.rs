//! Smith and Hermite normal forms over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

/// Smith normal form: returns `(u, d, v)` with `u * a * v = d`, `u` and `v`
/// unimodular, `d` diagonal with non-negative entries and `d[0] | d[1] | ...`.
///
/// The pivot choice (least absolute value, first occurrence in row-major
/// order) is fixed, so the output is deterministic for a given input.
pub fn smith_normal_form(a: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let m = a.rows();
    let n = a.cols();
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    let mut t = 0;
    while t < m.min(n) {
        match find_pivot(&d, t) {
            None => break,
            Some((pi, pj)) => {
                d.swap_rows(t, pi);
                u.swap_rows(t, pi);
                d.swap_cols(t, pj);
                v.swap_cols(t, pj);
            }
        }
        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let q = d.get(i, t).div_floor(d.get(t, t));
                let q = -q;
                d.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                if !d.get(i, t).is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..n {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let q = d.get(t, j).div_floor(d.get(t, t));
                let q = -q;
                d.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                if !d.get(t, j).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // Remainders smaller than the pivot appeared; re-pivot on the
                // smallest entry and run the reduction again.
                if let Some((pi, pj)) = find_pivot(&d, t) {
                    d.swap_rows(t, pi);
                    u.swap_rows(t, pi);
                    d.swap_cols(t, pj);
                    v.swap_cols(t, pj);
                }
                continue;
            }
            // Row t and column t are clear beyond the pivot. Enforce the
            // divisibility chain: the pivot must divide the full submatrix.
            let piv = d.get(t, t).clone();
            let offender = (t + 1..m)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !(d.get(i, j) % &piv).is_zero());
            match offender {
                None => break,
                Some((i, _)) => {
                    let one = BigInt::from(1);
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
            }
        }
        t += 1;
    }
    for i in 0..m.min(n) {
        if d.get(i, i).is_negative() {
            d.negate_row(i);
            u.negate_row(i);
        }
    }
    (u, d, v)
}

fn find_pivot(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let val = d.get(i, j);
            if val.is_zero() {
                continue;
            }
            match best {
                None => best = Some((i, j)),
                Some((bi, bj)) => {
                    if val.abs() < d.get(bi, bj).abs() {
                        best = Some((i, j));
                    }
                }
            }
        }
    }
    best
}

/// The diagonal of the Smith normal form, signs normalized positive,
/// including any trailing zeros.
pub fn invariant_factors(a: &IntMatrix) -> Vec<BigInt> {
    let (_, d, _) = smith_normal_form(a);
    (0..d.rows().min(d.cols()))
        .map(|i| d.get(i, i).clone())
        .collect()
}

/// Solve `b * x = t` for an integer vector `x`, if one exists.
///
/// `b` is an integer matrix and `t` a rational column; the answer decides
/// whether `t` lies in the integer column span of `b`.
pub fn hermite_solve(b: &IntMatrix, t: &[BigRational]) -> Option<Vec<BigInt>> {
    assert_eq!(b.rows(), t.len(), "dimension mismatch");
    let (u, d, v) = smith_normal_form(b);
    let rhs = u.to_rational().mul_vec(t);
    let n = b.cols();
    let mut y = vec![BigInt::zero(); n];
    for (i, r) in rhs.iter().enumerate() {
        let dii = if i < n && i < d.rows() {
            d.get(i, i).clone()
        } else {
            BigInt::zero()
        };
        if dii.is_zero() {
            if !r.is_zero() {
                return None;
            }
        } else {
            let q = r / BigRational::from_integer(dii);
            if !q.is_integer() {
                return None;
            }
            y[i] = q.to_integer();
        }
    }
    Some(v.mul_vec(&y))
}

/// Row-style Hermite normal form of the integer row span of `a`.
///
/// Returns the canonical basis matrix: pivots positive, entries above each
/// pivot reduced into `[0, pivot)`, zero rows dropped.
pub fn row_hnf(a: &IntMatrix) -> IntMatrix {
    let m = a.rows();
    let n = a.cols();
    let mut h = a.clone();
    let mut r = 0;
    for col in 0..n {
        if r == m {
            break;
        }
        loop {
            let piv = (r..m)
                .filter(|&i| !h.get(i, col).is_zero())
                .min_by_key(|&i| h.get(i, col).abs());
            let piv = match piv {
                Some(p) => p,
                None => break,
            };
            h.swap_rows(r, piv);
            let mut any = false;
            for i in r + 1..m {
                if h.get(i, col).is_zero() {
                    continue;
                }
                let q = -h.get(i, col).div_floor(h.get(r, col));
                h.add_row_multiple(i, r, &q);
                if !h.get(i, col).is_zero() {
                    any = true;
                }
            }
            if !any {
                break;
            }
        }
        if h.get(r, col).is_zero() {
            continue;
        }
        if h.get(r, col).is_negative() {
            h.negate_row(r);
        }
        for i in 0..r {
            let q = -h.get(i, col).div_floor(h.get(r, col));
            if !q.is_zero() {
                h.add_row_multiple(i, r, &q);
            }
        }
        r += 1;
    }
    if r == 0 {
        // Span is trivial; represent it by a single zero row.
        return IntMatrix::zero(1, n);
    }
    IntMatrix::from_fn(r, n, |i, j| h.get(i, j).clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn check_snf(a: &IntMatrix) {
        let (u, d, v) = smith_normal_form(a);
        assert_eq!(u.mul(a).mul(&v), d, "u*a*v != d");
        assert_eq!(u.det().abs(), BigInt::one(), "u not unimodular");
        assert_eq!(v.det().abs(), BigInt::one(), "v not unimodular");
        let k = d.rows().min(d.cols());
        for i in 0..k {
            for j in 0..k {
                if i != j {
                    assert!(d.get(i, j).is_zero(), "d not diagonal");
                }
            }
            assert!(!d.get(i, i).is_negative());
        }
        for i in 0..k.saturating_sub(1) {
            let a0 = d.get(i, i);
            let a1 = d.get(i + 1, i + 1);
            if a0.is_zero() {
                assert!(a1.is_zero(), "zero must come last in the chain");
            } else {
                assert!((a1 % a0).is_zero(), "divisibility chain broken");
            }
        }
    }

    #[test]
    fn snf_one_by_one() {
        let a = IntMatrix::from_rows(&[vec![2]]);
        let (u, d, v) = smith_normal_form(&a);
        assert_eq!(d, IntMatrix::from_rows(&[vec![2]]));
        assert_eq!(u, IntMatrix::identity(1));
        assert_eq!(v, IntMatrix::identity(1));
    }

    #[test]
    fn snf_identity_is_identity() {
        let a = IntMatrix::identity(3);
        let (_, d, _) = smith_normal_form(&a);
        assert_eq!(d, IntMatrix::identity(3));
    }

    #[test]
    fn snf_a2_gram_invariant_factors() {
        // Hand row-reduction of [[-2, 1], [1, -2]] gives factors (1, 3).
        let a = IntMatrix::from_rows(&[vec![-2, 1], vec![1, -2]]);
        check_snf(&a);
        let f = invariant_factors(&a);
        assert_eq!(f, vec![BigInt::one(), BigInt::from(3)]);
    }

    #[test]
    fn snf_rectangular_and_rank_deficient() {
        check_snf(&IntMatrix::from_rows(&[vec![2, 4, 4]]));
        check_snf(&IntMatrix::from_rows(&[vec![2], vec![3], vec![5]]));
        check_snf(&IntMatrix::from_rows(&[vec![1, 2], vec![2, 4]]));
        check_snf(&IntMatrix::from_rows(&[
            vec![6, 4, 2],
            vec![4, 8, 2],
            vec![2, 2, 10],
        ]));
    }

    #[test]
    fn snf_randomized_matrices_up_to_20x20() {
        // Deterministic LCG so the corpus is reproducible.
        let mut state = 0x2545f4914f6cdd1du64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) as i64 % 19) - 9
        };
        for size in [1usize, 2, 3, 5, 8, 13, 20] {
            let a = IntMatrix::from_fn(size, size, |_, _| BigInt::from(next()));
            check_snf(&a);
        }
        for (m, n) in [(3usize, 7usize), (7, 3), (20, 5)] {
            let a = IntMatrix::from_fn(m, n, |_, _| BigInt::from(next()));
            check_snf(&a);
        }
    }

    #[test]
    fn hermite_solve_scalar_cases() {
        let b = IntMatrix::from_rows(&[vec![2]]);
        let four = vec![BigRational::from_integer(BigInt::from(4))];
        assert_eq!(hermite_solve(&b, &four), Some(vec![BigInt::from(2)]));
        let one = vec![BigRational::from_integer(BigInt::one())];
        assert_eq!(hermite_solve(&b, &one), None);
    }

    #[test]
    fn hermite_solve_column_membership() {
        // First column of the A2 Gram is in the column span with x = (1, 0).
        let b = IntMatrix::from_rows(&[vec![-2, 1], vec![1, -2]]);
        let t = vec![
            BigRational::from_integer(BigInt::from(-2)),
            BigRational::from_integer(BigInt::one()),
        ];
        let x = hermite_solve(&b, &t).expect("column must be in the span");
        assert_eq!(x, vec![BigInt::one(), BigInt::zero()]);
    }

    #[test]
    fn hermite_solve_rational_target() {
        let b = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let t = vec![
            BigRational::new(BigInt::from(1), BigInt::from(2)),
            BigRational::from_integer(BigInt::zero()),
        ];
        assert_eq!(hermite_solve(&b, &t), None);
    }

    #[test]
    fn row_hnf_canonical_basis() {
        let a = IntMatrix::from_rows(&[vec![2, 4], vec![4, 2]]);
        let h = row_hnf(&a);
        assert_eq!(h, IntMatrix::from_rows(&[vec![2, 4], vec![0, 6]]));
        // Shuffled generators of the same span produce the same form.
        let b = IntMatrix::from_rows(&[vec![4, 2], vec![2, 4], vec![6, 6]]);
        assert_eq!(row_hnf(&b), h);
    }
}

//! Randomized property tests for the exact kernel and the form reductions.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use zariski_core::binforms::{gl2_reduce, sl2_reduce, BinaryEvenForm};
use zariski_core::linalg::{
    rational_cholesky, smith_normal_form, vectors_of_norm, IntMatrix, RatMatrix,
};

fn int_matrix(max_dim: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim)
        .prop_flat_map(move |n| {
            proptest::collection::vec(-bound..=bound, n * n).prop_map(move |vals| {
                IntMatrix::from_fn(n, n, |i, j| BigInt::from(vals[i * n + j]))
            })
        })
}

/// Random positive-definite Gram: A^T A + I over a random integer A.
fn pos_def_gram(max_dim: usize) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim)
        .prop_flat_map(move |n| {
            proptest::collection::vec(-3i64..=3, n * n).prop_map(move |vals| {
                let a = IntMatrix::from_fn(n, n, |i, j| BigInt::from(vals[i * n + j]));
                let mut g = a.transpose().mul(&a);
                for i in 0..n {
                    let v = g.get(i, i) + BigInt::one();
                    g.set(i, i, v);
                }
                g
            })
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn snf_relation_and_chain(a in int_matrix(6, 9)) {
        let (u, d, v) = smith_normal_form(&a);
        prop_assert_eq!(u.mul(&a).mul(&v), d.clone());
        prop_assert_eq!(u.det().abs(), BigInt::one());
        prop_assert_eq!(v.det().abs(), BigInt::one());
        let k = d.rows().min(d.cols());
        for i in 0..k {
            prop_assert!(!d.get(i, i).is_negative());
            if i + 1 < k && !d.get(i, i).is_zero() {
                prop_assert!((d.get(i + 1, i + 1) % d.get(i, i)).is_zero());
            }
        }
    }

    #[test]
    fn cholesky_pivots_multiply_to_det(g in pos_def_gram(5)) {
        let q = rational_cholesky(&g).unwrap();
        let mut prod = BigRational::one();
        for i in 0..g.rows() {
            prop_assert!(q.get(i, i).is_positive());
            prod *= q.get(i, i);
        }
        prop_assert_eq!(prod, BigRational::from_integer(g.det()));
    }

    #[test]
    fn short_vectors_match_box_oracle(g in pos_def_gram(4), n in 0i64..=12) {
        let rank = g.rows();
        let shift = vec![BigRational::zero(); rank];
        let got = vectors_of_norm(&g, &BigInt::from(n), &shift).unwrap();
        let want = box_oracle(&g, n);
        prop_assert_eq!(&got, &want);
        // Closed under negation at zero shift.
        for v in &got {
            let neg: Vec<BigRational> = v.iter().map(|x| -x).collect();
            prop_assert!(got.contains(&neg));
        }
    }

    #[test]
    fn even_form_reduction_properties(
        a in 1i64..=20,
        b in -40i64..=40,
        c in 1i64..=20,
    ) {
        let f = match BinaryEvenForm::new(2 * a, b, 2 * c) {
            Ok(f) => f,
            Err(_) => return Ok(()),  // not positive definite
        };
        let g = gl2_reduce(&f);
        prop_assert!(g.is_gl2_reduced());
        prop_assert_eq!(g.det(), f.det());
        prop_assert_eq!(gl2_reduce(&g), g);
        prop_assert_eq!(g.a % 2, 0);
        prop_assert_eq!(g.c % 2, 0);
        let s = sl2_reduce(&f);
        prop_assert!(s.form.is_sl2_reduced());
        prop_assert_eq!(s.form.det(), f.det());
        prop_assert_eq!(sl2_reduce(&s.form), s);
        // Forgetting orientation must land in the same GL2 class.
        prop_assert_eq!(gl2_reduce(&s.form), g);
    }
}

/// Independent oracle: enumerate a coordinate box from the dual bound
/// `x_i^2 <= n * (G^{-1})_{ii}` and filter by the exact norm.
fn box_oracle(g: &IntMatrix, n: i64) -> Vec<Vec<BigRational>> {
    let rank = g.rows();
    let inv = RatMatrix::from_fn(rank, rank, |i, j| {
        BigRational::from_integer(g.get(i, j).clone())
    })
    .inverse();
    let bounds: Vec<i64> = (0..rank)
        .map(|i| {
            let b = inv.get(i, i) * BigRational::from_integer(BigInt::from(n));
            // Over-approximate the square root; the norm filter is exact.
            let approx = b.numer().to_string().len() as u32;
            let crude = 10i64.pow(approx / 2 + 1);
            let mut r = 0i64;
            while r * r <= crude * crude && BigRational::from_integer(BigInt::from(r * r)) <= b {
                r += 1;
            }
            r
        })
        .collect();
    let mut out = Vec::new();
    let mut x = vec![0i64; rank];
    enumerate_box(g, n, &bounds, 0, &mut x, &mut out);
    out.sort();
    out
}

fn enumerate_box(
    g: &IntMatrix,
    n: i64,
    bounds: &[i64],
    level: usize,
    x: &mut Vec<i64>,
    out: &mut Vec<Vec<BigRational>>,
) {
    if level == x.len() {
        let mut acc = BigInt::zero();
        for i in 0..x.len() {
            for j in 0..x.len() {
                acc += g.get(i, j) * BigInt::from(x[i]) * BigInt::from(x[j]);
            }
        }
        if acc == BigInt::from(n) {
            out.push(
                x.iter()
                    .map(|&v| BigRational::from_integer(BigInt::from(v)))
                    .collect(),
            );
        }
        return;
    }
    for v in -bounds[level]..=bounds[level] {
        x[level] = v;
        enumerate_box(g, n, bounds, level + 1, x, out);
    }
    x[level] = 0;
}

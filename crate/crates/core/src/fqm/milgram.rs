//! Mod-8 signature of a finite quadratic form from its Gauss sum.
//!
//! The sum `S = sum_x exp(pi i q(x))` equals `sqrt(|G|) * zeta_8^sigma`
//! for a nondegenerate form; `sigma mod 8` recovers the signature of any
//! even lattice inducing the form. Everything is evaluated in the ring
//! `Z[x]/(x^N - 1)` with equality tested modulo the N-th cyclotomic
//! polynomial, so no floating point enters.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::FiniteQuadraticForm;
use crate::error::{Error, Result};

/// Signature residue `sigma mod 8` with
/// `sum_x exp(pi i q(x)) = sqrt(|G|) * exp(2 pi i sigma / 8)`.
pub fn milgram_signature(q: &FiniteQuadraticForm) -> Result<u8> {
    if q.is_trivial() {
        return Ok(0);
    }
    let values: Vec<_> = q.elements().into_iter().map(|x| q.q_value(&x)).collect();
    let mut denom = BigInt::one();
    for v in &values {
        denom = denom.lcm(v.denom());
    }
    let d = u64::try_from(denom).expect("denominator fits u64");
    let order = q.order();
    let (square_root, squarefree) = split_square(order);

    let mut n = (2 * d).lcm(&8);
    for p in odd_prime_factors(squarefree) {
        n = n.lcm(&p);
    }
    let n = usize::try_from(n).expect("ring size fits usize");

    // Gauss sum S in Z[x]/(x^N - 1).
    let mut s = vec![BigInt::zero(); n];
    for v in &values {
        let num = u64::try_from(v.numer().clone()).expect("q value in [0,2)");
        let den = u64::try_from(v.denom().clone()).expect("positive denominator");
        // exp(pi i num/den) = zeta_N ^ (num * N / (2 den))
        let e = (num as usize * (n / (2 * den as usize))) % n;
        s[e] += 1;
    }

    // sqrt(|G|) = square_root * prod_p gauss_p * i^{-t}, with
    // gauss_p = sum_a zeta_p^{a^2} (= sqrt(p) for p = 1 mod 4, i sqrt(p)
    // for p = 3 mod 4) and sqrt(2) = zeta_8 + zeta_8^{-1}.
    let mut w = vec![BigInt::zero(); n];
    w[0] = BigInt::from(square_root);
    let mut t = 0u32;
    for p in odd_prime_factors(squarefree) {
        let p = p as usize;
        let mut g = vec![BigInt::zero(); n];
        for a in 0..p {
            g[(n / p) * ((a * a) % p)] += 1;
        }
        w = cyclic_mul(&w, &g);
        if p % 4 == 3 {
            t += 1;
        }
    }
    if squarefree % 2 == 0 {
        let mut r2 = vec![BigInt::zero(); n];
        r2[n / 8] += 1;
        r2[7 * n / 8] += 1;
        w = cyclic_mul(&w, &r2);
    }
    let t_corr = ((4 - (t % 4)) % 4) as usize;
    let w = rotate(&w, t_corr * (n / 4));

    let phi = cyclotomic(n);
    for k in 0..8u8 {
        let rhs = rotate(&w, k as usize * (n / 8));
        let mut diff: Vec<BigInt> = s.iter().zip(&rhs).map(|(a, b)| a - b).collect();
        poly_rem_monic(&mut diff, &phi);
        if diff.iter().all(|c| c.is_zero()) {
            return Ok(k);
        }
    }
    Err(Error::DegenerateForm)
}

/// `m = s^2 * f` with `f` squarefree; returns `(s, f)`.
fn split_square(m: u64) -> (u64, u64) {
    let mut m = m;
    let mut s = 1u64;
    let mut f = 1u64;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            s *= p.pow(e / 2);
            if e % 2 == 1 {
                f *= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        f *= m;
    }
    (s, f)
}

fn odd_prime_factors(mut f: u64) -> Vec<u64> {
    let mut out = Vec::new();
    while f % 2 == 0 {
        f /= 2;
    }
    let mut p = 3u64;
    while p * p <= f {
        if f % p == 0 {
            out.push(p);
            while f % p == 0 {
                f /= p;
            }
        }
        p += 2;
    }
    if f > 1 {
        out.push(f);
    }
    out
}

/// Product in `Z[x]/(x^n - 1)`, skipping zero coefficients.
fn cyclic_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len();
    let mut out = vec![BigInt::zero(); n];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            let k = (i + j) % n;
            out[k] += ai * bj;
        }
    }
    out
}

/// Multiplication by `x^shift` in `Z[x]/(x^n - 1)`.
fn rotate(a: &[BigInt], shift: usize) -> Vec<BigInt> {
    let n = a.len();
    let mut out = vec![BigInt::zero(); n];
    for (i, v) in a.iter().enumerate() {
        out[(i + shift) % n] = v.clone();
    }
    out
}

/// Coefficients (ascending) of the n-th cyclotomic polynomial, computed by
/// exact division of `x^n - 1` by the cyclotomic polynomials of the proper
/// divisors.
fn cyclotomic(n: usize) -> Vec<BigInt> {
    let mut memo: Vec<Option<Vec<BigInt>>> = vec![None; n + 1];
    for m in 1..=n {
        if n % m != 0 {
            continue;
        }
        let mut f = vec![BigInt::zero(); m + 1];
        f[0] = BigInt::from(-1);
        f[m] = BigInt::one();
        for d in 1..m {
            if m % d == 0 {
                let phi_d = memo[d].as_ref().expect("divisors visited in order");
                f = poly_div_exact(&f, phi_d);
            }
        }
        memo[m] = Some(f);
    }
    memo[n].take().expect("n divides n")
}

/// Exact division of polynomials with integer coefficients; the divisor is
/// monic and the division must leave no remainder.
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = deg(num);
    let dd = deg(den);
    assert!(den[dd].is_one(), "divisor must be monic");
    assert!(dn >= dd);
    let mut rem = num.to_vec();
    let mut quo = vec![BigInt::zero(); dn - dd + 1];
    for k in (0..=dn - dd).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        quo[k] = c.clone();
        for (i, dv) in den.iter().enumerate().take(dd + 1) {
            rem[k + i] -= &c * dv;
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "division must be exact");
    quo
}

/// In-place remainder modulo a monic polynomial.
fn poly_rem_monic(a: &mut Vec<BigInt>, m: &[BigInt]) {
    let dm = deg(m);
    assert!(m[dm].is_one());
    let da = deg(a);
    if a.iter().all(|c| c.is_zero()) {
        return;
    }
    for k in (dm..=da).rev() {
        let c = a[k].clone();
        if c.is_zero() {
            continue;
        }
        for (i, mv) in m.iter().enumerate().take(dm + 1) {
            a[k - dm + i] -= &c * mv;
        }
    }
    a.truncate(dm);
}

fn deg(p: &[BigInt]) -> usize {
    p.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
}

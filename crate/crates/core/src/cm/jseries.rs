//! Integer q-expansion of the modular j-invariant, from `E4^3 / Delta`.
//!
//! All series arithmetic is exact over the integers; the expansion
//! coefficients are frozen facts about `j`, independent of any evaluation
//! precision downstream.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Coefficients `c_0..c_terms` with `j = 1/q + sum_{n>=0} c_n q^n`
/// (so `c_0 = 744`, `c_1 = 196884`, ...).
pub fn j_coefficients(terms: usize) -> Vec<BigInt> {
    let len = terms + 2;
    // E4 = 1 + 240 sum sigma_3(n) q^n
    let mut e4 = vec![BigInt::zero(); len];
    e4[0] = BigInt::one();
    for n in 1..len {
        e4[n] = BigInt::from(240u32) * sigma3(n as u64);
    }
    let e4_cubed = mul_trunc(&mul_trunc(&e4, &e4, len), &e4, len);
    // Delta / q = prod_{m >= 1} (1 - q^m)^24
    let mut eta = vec![BigInt::zero(); len];
    eta[0] = BigInt::one();
    for m in 1..len {
        // Multiply by the sparse factor (1 - q^m).
        for n in (m..len).rev() {
            let t = eta[n - m].clone();
            eta[n] -= t;
        }
    }
    let mut eta24 = vec![BigInt::zero(); len];
    eta24[0] = BigInt::one();
    let mut power = eta;
    let mut e = 24u32;
    while e > 0 {
        if e & 1 == 1 {
            eta24 = mul_trunc(&eta24, &power, len);
        }
        e >>= 1;
        if e > 0 {
            power = mul_trunc(&power, &power, len);
        }
    }
    // (j q) = E4^3 / (Delta / q); constant term 1, then 744, 196884, ...
    let jq = div_series(&e4_cubed, &eta24, len);
    debug_assert!(jq[0].is_one());
    jq[1..].to_vec()
}

fn sigma3(n: u64) -> BigInt {
    let mut acc = BigInt::zero();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            acc += BigInt::from(d).pow(3);
            let e = n / d;
            if e != d {
                acc += BigInt::from(e).pow(3);
            }
        }
        d += 1;
    }
    acc
}

fn mul_trunc(a: &[BigInt], b: &[BigInt], len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    for (i, ai) in a.iter().enumerate().take(len) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(len - i) {
            if bj.is_zero() {
                continue;
            }
            out[i + j] += ai * bj;
        }
    }
    out
}

/// Power-series division `num / den` with `den[0] = 1`; exact over Z.
fn div_series(num: &[BigInt], den: &[BigInt], len: usize) -> Vec<BigInt> {
    assert!(den[0].is_one());
    let mut out = vec![BigInt::zero(); len];
    for n in 0..len {
        let mut acc = num[n].clone();
        for k in 0..n {
            acc -= &out[k] * &den[n - k];
        }
        out[n] = acc;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leading_coefficients_of_j() {
        let c = j_coefficients(4);
        assert_eq!(c[0], BigInt::from(744u32));
        assert_eq!(c[1], BigInt::from(196884u32));
        assert_eq!(c[2], BigInt::from(21493760u64));
        assert_eq!(c[3], BigInt::from(864299970u64));
        assert_eq!(c[4], BigInt::from(20245856256u64));
    }

    #[test]
    fn sigma3_values() {
        assert_eq!(sigma3(1), BigInt::from(1));
        assert_eq!(sigma3(2), BigInt::from(9));
        assert_eq!(sigma3(6), BigInt::from(252));
    }
}

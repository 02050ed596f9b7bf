//! Fixed-point big-integer real arithmetic for the class-polynomial
//! evaluation: values are `mantissa / 10^digits`. Only this corner of the
//! library works with approximate numbers, and every operation rounds to
//! nearest, so the accumulated error stays within a few units in the last
//! place and is absorbed by the guard digits.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

pub struct FxCtx {
    digits: u32,
    one: BigInt,
}

impl FxCtx {
    pub fn new(digits: u32) -> Self {
        FxCtx {
            digits,
            one: BigInt::from(10u32).pow(digits),
        }
    }

    pub fn one(&self) -> &BigInt {
        &self.one
    }

    pub fn from_i64(&self, v: i64) -> BigInt {
        BigInt::from(v) * &self.one
    }

    pub fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        div_round(&(a * b), &self.one)
    }

    pub fn div(&self, a: &BigInt, b: &BigInt) -> BigInt {
        div_round(&(a * &self.one), b)
    }

    /// sqrt(n) for a non-negative integer n.
    pub fn sqrt_u64(&self, n: u64) -> BigInt {
        (BigInt::from(n) * &self.one * &self.one).sqrt()
    }

    /// pi by Machin's formula 16 atan(1/5) - 4 atan(1/239), computed with
    /// ten guard digits so the series drift stays below one output ulp.
    pub fn pi(&self) -> BigInt {
        let fine = FxCtx::new(self.digits + 10);
        let a = fine.atan_inv(5);
        let b = fine.atan_inv(239);
        let p: BigInt = 16 * a - 4 * b;
        div_round(&p, &BigInt::from(10u64.pow(10)))
    }

    /// atan(1/k) by the alternating power series, exact term division.
    fn atan_inv(&self, k: u64) -> BigInt {
        let k2 = BigInt::from(k * k);
        let mut term = div_round(&self.one, &BigInt::from(k));
        let mut acc = BigInt::zero();
        let mut n = 0u64;
        while !term.is_zero() {
            let contribution = div_round(&term, &BigInt::from(2 * n + 1));
            if n % 2 == 0 {
                acc += contribution;
            } else {
                acc -= contribution;
            }
            term = div_round(&term, &k2);
            n += 1;
        }
        acc
    }

    /// exp(x) for any fixed-point x, by scaling-and-squaring plus Taylor.
    pub fn exp(&self, x: &BigInt) -> BigInt {
        if x.is_negative() {
            let e = self.exp(&-x);
            return self.div(&self.one, &e);
        }
        let half = &self.one / 2;
        let mut r = x.clone();
        let mut k = 0u32;
        while r > half {
            r /= 2;
            k += 1;
        }
        let mut term = self.one.clone();
        let mut acc = self.one.clone();
        let mut n = 1u64;
        loop {
            term = div_round(&(&term * &r), &(&self.one * BigInt::from(n)));
            if term.is_zero() {
                break;
            }
            acc += &term;
            n += 1;
        }
        for _ in 0..k {
            acc = self.mul(&acc, &acc);
        }
        acc
    }

    /// (cos x, sin x) with range reduction modulo 2 pi.
    pub fn cos_sin(&self, x: &BigInt) -> (BigInt, BigInt) {
        let two_pi = 2 * self.pi();
        let m = div_round(x, &two_pi);
        let r = x - m * &two_pi;
        let r2 = self.mul(&r, &r);
        let mut cos = self.one.clone();
        let mut sin = r.clone();
        let mut term_c = self.one.clone();
        let mut term_s = r.clone();
        let mut n = 1u64;
        loop {
            // cos term: (-1)^n x^{2n} / (2n)!; sin term: x^{2n+1} / (2n+1)!
            term_c = div_round(
                &(&term_c * &r2),
                &(&self.one * BigInt::from((2 * n - 1) * (2 * n))),
            );
            term_s = div_round(
                &(&term_s * &r2),
                &(&self.one * BigInt::from((2 * n) * (2 * n + 1))),
            );
            if term_c.is_zero() && term_s.is_zero() {
                break;
            }
            if n % 2 == 1 {
                cos -= &term_c;
                sin -= &term_s;
            } else {
                cos += &term_c;
                sin += &term_s;
            }
            n += 1;
        }
        (cos, sin)
    }
}

/// Rounded division, half away from zero; the divisor must be positive.
pub fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    debug_assert!(b.is_positive());
    let doubled: BigInt = a * 2;
    let q: BigInt = &doubled / b;
    // q = floor-ish truncated quotient of 2a/b; recover round(a/b).
    if q.is_negative() {
        (q - 1) / 2
    } else {
        (q + 1) / 2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_division() {
        let b = BigInt::from(10);
        assert_eq!(div_round(&BigInt::from(14), &b), BigInt::from(1));
        assert_eq!(div_round(&BigInt::from(15), &b), BigInt::from(2));
        assert_eq!(div_round(&BigInt::from(-14), &b), BigInt::from(-1));
        assert_eq!(div_round(&BigInt::from(-15), &b), BigInt::from(-2));
    }

    #[test]
    fn pi_digits() {
        let ctx = FxCtx::new(30);
        let pi = ctx.pi();
        // pi = 3.14159265358979323846264338327950288...; the mantissa may
        // sit a couple of ulp off the true rounding.
        let want = BigInt::parse_bytes(b"3141592653589793238462643383280", 10).unwrap();
        let err = (&pi - &want).magnitude().clone();
        assert!(err <= 2u32.into(), "pi off by {err}");
    }

    #[test]
    fn exp_and_log_values() {
        let ctx = FxCtx::new(40);
        let e = ctx.exp(ctx.one());
        // e = 2.7182818284590452353602874713526624977572...
        assert!(e.to_string().starts_with("27182818284590452353602874713526624977"));
        let em1 = ctx.exp(&-ctx.one().clone());
        let prod = ctx.mul(&e, &em1);
        let err = (&prod - ctx.one()).magnitude().clone();
        assert!(err < 100u32.into());
    }

    #[test]
    fn trig_identity() {
        let ctx = FxCtx::new(40);
        let x = ctx.div(&ctx.from_i64(7), &ctx.from_i64(3));
        let (c, s) = ctx.cos_sin(&x);
        let lhs = ctx.mul(&c, &c) + ctx.mul(&s, &s);
        let err = (&lhs - ctx.one()).magnitude().clone();
        assert!(err < 100u32.into());
        // cos at pi/2 vanishes.
        let pi = ctx.pi();
        let (c, s) = ctx.cos_sin(&(pi / 2));
        assert!(c.magnitude() < &100u32.into());
        let err = (&s - ctx.one()).magnitude().clone();
        assert!(err < 100u32.into());
    }
}

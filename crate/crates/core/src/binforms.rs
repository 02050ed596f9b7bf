//! Binary quadratic forms, two flavors.
//!
//! Even positive-definite Gram data `Q[a,b,c]` (both `a` and `c` even) with
//! GL2 and SL2 reduction and class enumeration by determinant, and classical
//! primitive forms `(a, b, c)` of negative discriminant `b^2 - 4ac` with
//! Gauss composition. The even forms present rank-2 even lattices
//! `Lambda[a,b,c]`; SL2 classes are the oriented ones.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::linalg::IntMatrix;

/// Even positive-definite Gram form `Q[a,b,c]` = [[a, b], [b, c]].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BinaryEvenForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl BinaryEvenForm {
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self> {
        if a <= 0 || c <= 0 || a % 2 != 0 || c % 2 != 0 {
            return Err(Error::InvalidForm(format!(
                "Q[{a},{b},{c}]: need a, c positive and even"
            )));
        }
        let f = BinaryEvenForm { a, b, c };
        if f.det() <= 0 {
            return Err(Error::InvalidForm(format!(
                "Q[{a},{b},{c}] is not positive definite"
            )));
        }
        Ok(f)
    }

    pub fn det(&self) -> i64 {
        let d = self.a as i128 * self.c as i128 - self.b as i128 * self.b as i128;
        i64::try_from(d).expect("determinant fits i64")
    }

    /// The GL2 window `0 <= 2b <= a <= c`.
    pub fn is_gl2_reduced(&self) -> bool {
        0 <= self.b && 2 * self.b <= self.a && self.a <= self.c
    }

    /// The SL2 window `-a < 2b <= a <= c`, with `b >= 0` when `a = c`.
    pub fn is_sl2_reduced(&self) -> bool {
        -self.a < 2 * self.b
            && 2 * self.b <= self.a
            && self.a <= self.c
            && (self.a != self.c || self.b >= 0)
    }

    /// Display name of the underlying lattice.
    pub fn name(&self) -> String {
        format!("\u{039b}[{},{},{}]", self.a, self.b, self.c)
    }

    /// Display name of the oriented lattice.
    pub fn oriented_name(&self) -> String {
        format!("\u{039b}\u{0303}[{},{},{}]", self.a, self.b, self.c)
    }
}

impl std::fmt::Display for BinaryEvenForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Translate `b` into the centered window `(-a/2, a/2]`, adjusting `c`.
fn center_b(a: i64, b: i64, c: i64) -> (i64, i64) {
    let k = (2 * b + a - 1).div_euclid(2 * a);
    let nb = b - k * a;
    let nc = c - 2 * k * b + k * k * a;
    (nb, nc)
}

/// The unique GL2-reduced representative `0 <= 2b <= a <= c` of the class
/// of `f`. Translations, swaps, and the det(-1) sign flip preserve the
/// determinant and evenness throughout.
pub fn gl2_reduce(f: &BinaryEvenForm) -> BinaryEvenForm {
    let (mut a, mut b, mut c) = (f.a, f.b, f.c);
    loop {
        let (nb, nc) = center_b(a, b, c);
        b = nb;
        c = nc;
        if a > c {
            std::mem::swap(&mut a, &mut c);
            continue;
        }
        break;
    }
    if b < 0 {
        b = -b;
    }
    let out = BinaryEvenForm { a, b, c };
    debug_assert!(out.is_gl2_reduced());
    debug_assert_eq!(out.det(), f.det());
    out
}

/// An SL2-reduced (oriented) class representative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct OrientedClassRep {
    pub form: BinaryEvenForm,
}

/// The unique SL2-reduced representative `-a < 2b <= a <= c`, `b >= 0`
/// when `a = c`.
pub fn sl2_reduce(f: &BinaryEvenForm) -> OrientedClassRep {
    let (mut a, mut b, mut c) = (f.a, f.b, f.c);
    loop {
        let (nb, nc) = center_b(a, b, c);
        b = nb;
        c = nc;
        if a > c {
            // The SL2 swap [[0,-1],[1,0]] sends (a, b, c) to (c, -b, a).
            std::mem::swap(&mut a, &mut c);
            b = -b;
            continue;
        }
        break;
    }
    if a == c && b < 0 {
        b = -b;
    }
    let form = BinaryEvenForm { a, b, c };
    debug_assert!(form.is_sl2_reduced());
    debug_assert_eq!(form.det(), f.det());
    OrientedClassRep { form }
}

/// All GL2-reduced even forms of determinant `d`, sorted by `(a, b, c)`.
///
/// Scans `b` while `3 b^2 <= d` and factors `a c = d + b^2` over even
/// divisor pairs inside the window.
pub fn enumerate_even_classes(d: i64) -> Vec<BinaryEvenForm> {
    assert!(d >= 1, "determinant must be positive");
    let mut out = Vec::new();
    let mut b = 0i64;
    while 3 * b * b <= d {
        let m = d + b * b;
        let mut a = (2 * b).max(2);
        while a * a <= m {
            if m % a == 0 {
                let c = m / a;
                if c % 2 == 0 {
                    out.push(BinaryEvenForm { a, b, c });
                }
            }
            a += 2;
        }
        b += 1;
    }
    out.sort();
    out
}

/// Size of the fiber of the orientation-forgetting map over a GL2-reduced
/// class: 2 when `0 < 2b < a < c` strictly, 1 otherwise.
pub fn sl2_fiber_size(f: &BinaryEvenForm) -> Result<u8> {
    if !f.is_gl2_reduced() {
        return Err(Error::NotReduced(format!("{f:?}")));
    }
    if 0 < f.b && 2 * f.b < f.a && f.a < f.c {
        Ok(2)
    } else {
        Ok(1)
    }
}

/// The rank-2 even positive-definite lattice with Gram [[a, b], [b, c]].
pub fn lattice_of(f: &BinaryEvenForm) -> Lattice {
    Lattice::new(IntMatrix::from_rows(&[vec![f.a, f.b], vec![f.b, f.c]]))
        .expect("positive-definite form is nondegenerate")
}

/// Classical primitive positive-definite form `a x^2 + b x y + c y^2` of
/// negative discriminant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ClassicalForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl ClassicalForm {
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self> {
        let f = ClassicalForm { a, b, c };
        if a <= 0 || f.discriminant() >= 0 {
            return Err(Error::InvalidForm(format!(
                "({a},{b},{c}) is not positive definite"
            )));
        }
        if gcd3(a, b, c) != 1 {
            return Err(Error::InvalidForm(format!("({a},{b},{c}) is not primitive")));
        }
        Ok(f)
    }

    pub fn discriminant(&self) -> i64 {
        let d = self.b as i128 * self.b as i128 - 4 * self.a as i128 * self.c as i128;
        i64::try_from(d).expect("discriminant fits i64")
    }

    pub fn is_reduced(&self) -> bool {
        let (a, b, c) = (self.a, self.b, self.c);
        b.abs() <= a && a <= c && (b >= 0 || (b.abs() != a && a != c))
    }

    /// The inverse class representative `(a, -b, c)`.
    pub fn inverse(&self) -> ClassicalForm {
        ClassicalForm {
            a: self.a,
            b: -self.b,
            c: self.c,
        }
    }
}

impl std::fmt::Display for ClassicalForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

fn gcd3(a: i64, b: i64, c: i64) -> i64 {
    use num_integer::Integer;
    a.gcd(&b).gcd(&c)
}

/// The principal (identity) form of discriminant `d < 0`.
pub fn principal_form(d: i64) -> Result<ClassicalForm> {
    match d.rem_euclid(4) {
        0 => ClassicalForm::new(1, 0, -d / 4),
        1 => ClassicalForm::new(1, 1, (1 - d) / 4),
        _ => Err(Error::InvalidForm(format!("{d} is not a discriminant"))),
    }
}

/// The unique reduced representative of the SL2 class of `f`:
/// `|b| <= a <= c` with `b >= 0` when `|b| = a or a = c`.
pub fn classical_reduce(f: &ClassicalForm) -> ClassicalForm {
    let d = f.discriminant();
    let (mut a, mut b, mut c) = (f.a, f.b, f.c);
    loop {
        if b.abs() > a {
            // Translate b into (-a, a].
            let k = (b + a - 1).div_euclid(2 * a);
            b -= 2 * k * a;
            c = i64::try_from((b as i128 * b as i128 - d as i128) / (4 * a as i128))
                .expect("coefficient fits i64");
            continue;
        }
        if a > c {
            std::mem::swap(&mut a, &mut c);
            b = -b;
            continue;
        }
        break;
    }
    if b < 0 && (b.abs() == a || a == c) {
        b = -b;
    }
    let out = ClassicalForm { a, b, c };
    debug_assert!(out.is_reduced(), "{out:?}");
    debug_assert_eq!(out.discriminant(), d);
    out
}

/// Gauss composition of primitive forms of one negative discriminant,
/// returned reduced. Dirichlet's method with the united-form gcd.
pub fn compose(f: &ClassicalForm, g: &ClassicalForm) -> Result<ClassicalForm> {
    let d = f.discriminant();
    if d != g.discriminant() {
        return Err(Error::DiscriminantMismatch(d, g.discriminant()));
    }
    let (a1, b1) = (f.a as i128, f.b as i128);
    let (a2, b2) = (g.a as i128, g.b as i128);
    let s = (b1 + b2) / 2;
    let n = (b1 - b2) / 2;
    let (g0, _, v0) = ext_gcd(a1, a2);
    let (g1, w1, t1) = ext_gcd(g0, s);
    // g1 = (w1 u0) a1 + (w1 v0) a2 + t1 s
    let v = w1 * v0;
    let w = t1;
    let a3 = (a1 / g1) * (a2 / g1);
    let inner = v * n - w * (g.c as i128);
    let mut b3 = b2 + 2 * (a2 / g1) * inner;
    let two_a3 = 2 * a3;
    b3 = b3.rem_euclid(two_a3);
    if b3 > a3 {
        b3 -= two_a3;
    }
    let c3 = (b3 * b3 - d as i128) / (4 * a3);
    let raw = ClassicalForm {
        a: i64::try_from(a3).expect("fits"),
        b: i64::try_from(b3).expect("fits"),
        c: i64::try_from(c3).expect("fits"),
    };
    Ok(classical_reduce(&raw))
}

/// Extended gcd: `(g, u, v)` with `g = u a + v b`, `g >= 0`.
fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

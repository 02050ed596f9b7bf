//! Complex-multiplication machinery: class groups of imaginary quadratic
//! fields via reduced forms and Gauss composition, the Shioda-Mitani
//! assignment of oriented rank-2 lattices to ideal classes, and the Hilbert
//! class polynomial through the q-expansion of `j`.

pub mod bigfloat;
pub mod jseries;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::binforms::{
    classical_reduce, compose, principal_form, sl2_reduce, BinaryEvenForm, ClassicalForm,
    OrientedClassRep,
};
use crate::error::{Error, Result};

use bigfloat::{div_round, FxCtx};

/// An oriented even positive-definite rank-2 lattice, i.e. an SL2 class.
pub type OrientedLattice = OrientedClassRep;

/// `d` is a fundamental discriminant of an imaginary quadratic field.
pub fn is_fundamental(d: i64) -> bool {
    if d >= 0 {
        return false;
    }
    match d.rem_euclid(4) {
        1 => is_squarefree(-d),
        0 => {
            let q = d / 4;
            let r = q.rem_euclid(4);
            (r == 2 || r == 3) && is_squarefree(-q)
        }
        _ => false,
    }
}

fn is_squarefree(mut n: i64) -> bool {
    debug_assert!(n > 0);
    let mut p = 2i64;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// All reduced primitive forms of discriminant `d < 0`, principal form
/// first, then sorted by `(a, |b|, sign, c)` with positive `b` preferred.
pub fn reduced_forms(d: i64) -> Vec<ClassicalForm> {
    assert!(d < 0 && (d.rem_euclid(4) == 0 || d.rem_euclid(4) == 1));
    let mut out = Vec::new();
    let mut b = if d.rem_euclid(2) == 0 { 0 } else { 1 };
    while 3 * b * b <= -d {
        let m = (b * b - d) / 4;
        let mut a = b.max(1);
        while a * a <= m {
            if m % a == 0 {
                let c = m / a;
                if num_integer::gcd(num_integer::gcd(a, b), c) == 1 {
                    out.push(ClassicalForm { a, b, c });
                    if 0 < b && b < a && a < c {
                        out.push(ClassicalForm { a, b: -b, c });
                    }
                }
            }
            a += 1;
        }
        b += 2;
    }
    out.sort_by_key(|f| (f.a, f.b.abs(), f.b < 0, f.c));
    out
}

/// The ideal class group of discriminant `d`, realized on reduced forms
/// with the Gauss composition table.
#[derive(Debug, Clone)]
pub struct ClassGroup {
    pub discriminant: i64,
    pub forms: Vec<ClassicalForm>,
    pub identity: usize,
    table: Vec<Vec<usize>>,
    /// Invariant factors `d_1 | d_2 | ...` of the group.
    pub cyclic_factors: Vec<u64>,
    /// Index of the canonical generator when the group is cyclic.
    pub generator: Option<usize>,
}

impl ClassGroup {
    pub fn order(&self) -> usize {
        self.forms.len()
    }

    pub fn is_cyclic(&self) -> bool {
        self.cyclic_factors.len() <= 1
    }

    pub fn compose_indices(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn index_of(&self, f: &ClassicalForm) -> Option<usize> {
        let r = classical_reduce(f);
        self.forms.iter().position(|g| *g == r)
    }

    pub fn power(&self, i: usize, k: u64) -> usize {
        let mut acc = self.identity;
        for _ in 0..k {
            acc = self.table[acc][i];
        }
        acc
    }

    pub fn element_order(&self, i: usize) -> u64 {
        let mut acc = i;
        let mut k = 1u64;
        while acc != self.identity {
            acc = self.table[acc][i];
            k += 1;
        }
        k
    }
}

/// Build the class group of a negative fundamental discriminant.
pub fn class_group(d: i64) -> Result<ClassGroup> {
    if !is_fundamental(d) {
        return Err(Error::NotFundamental(d));
    }
    let forms = reduced_forms(d);
    let n = forms.len();
    let identity = forms
        .iter()
        .position(|f| *f == principal_form(d).expect("valid discriminant"))
        .expect("principal form is reduced");
    let mut table = vec![vec![0usize; n]; n];
    for i in 0..n {
        for j in 0..n {
            let composed = compose(&forms[i], &forms[j])?;
            table[i][j] = forms
                .iter()
                .position(|f| *f == composed)
                .expect("composition lands on a reduced form");
        }
    }
    let cyclic_factors = abelian_invariants(&table, identity);
    let generator = if cyclic_factors.len() <= 1 && n > 1 {
        let full = n as u64;
        (0..n).find(|&i| order_from_table(&table, identity, i) == full)
    } else {
        None
    };
    Ok(ClassGroup {
        discriminant: d,
        forms,
        identity,
        table,
        cyclic_factors,
        generator,
    })
}

fn order_from_table(table: &[Vec<usize>], identity: usize, i: usize) -> u64 {
    let mut acc = i;
    let mut k = 1u64;
    while acc != identity {
        acc = table[acc][i];
        k += 1;
    }
    k
}

/// Invariant factors of a finite abelian group given by its multiplication
/// table: split off a maximal-order cyclic summand and recurse on the
/// quotient.
fn abelian_invariants(table: &[Vec<usize>], identity: usize) -> Vec<u64> {
    let n = table.len();
    if n == 1 {
        return Vec::new();
    }
    let (gen, max_order) = (0..n)
        .map(|i| (i, order_from_table(table, identity, i)))
        .max_by_key(|&(i, o)| (o, std::cmp::Reverse(i)))
        .expect("nonempty group");
    if max_order == n as u64 {
        return vec![max_order];
    }
    // Cosets of <gen>.
    let mut subgroup = vec![identity];
    let mut acc = gen;
    while acc != identity {
        subgroup.push(acc);
        acc = table[acc][gen];
    }
    let mut coset_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let id = reps.len();
        for &s in &subgroup {
            coset_of[table[x][s]] = id;
        }
        reps.push(x);
    }
    let m = reps.len();
    let mut q_table = vec![vec![0usize; m]; m];
    for i in 0..m {
        for j in 0..m {
            q_table[i][j] = coset_of[table[reps[i]][reps[j]]];
        }
    }
    let mut inv = abelian_invariants(&q_table, coset_of[identity]);
    inv.push(max_order);
    inv
}

/// The reduced form of the lattice `Z + Z tau` with `tau = (p + sqrt(d))/q`.
///
/// Requires `q > 0` even with `2q | p^2 - d`, which makes
/// `(q/2) t^2 - p t + (p^2 - d)/(2q)` the integral minimal polynomial.
pub fn ideal_to_form(p: i64, q: i64, d: i64) -> Result<ClassicalForm> {
    if q <= 0 || q % 2 != 0 {
        return Err(Error::InvalidForm(format!(
            "tau = ({p} + sqrt({d}))/{q}: denominator must be a positive even integer"
        )));
    }
    let num = p * p - d;
    if num % (2 * q) != 0 {
        return Err(Error::InvalidForm(format!(
            "tau = ({p} + sqrt({d}))/{q} is not of discriminant {d}"
        )));
    }
    let f = ClassicalForm::new(q / 2, -p, num / (2 * q))?;
    debug_assert_eq!(f.discriminant(), d);
    Ok(classical_reduce(&f))
}

/// The Shioda-Mitani doubling rule: the ideal class of `(a, b, c)` maps to
/// the oriented even lattice of `Q[2a, b, 2c]`, of determinant `-d`.
pub fn shioda_mitani(cls: &ClassicalForm) -> OrientedLattice {
    let form = BinaryEvenForm::new(2 * cls.a, cls.b, 2 * cls.c)
        .expect("doubling an integral positive form stays even positive");
    sl2_reduce(&form)
}

/// Oriented transcendental lattices of the CM fibers: one entry per ideal
/// class, with the square class and the resulting lattice. The image
/// depends only on the square.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CmEmbeddingEntry {
    pub index: usize,
    pub class: ClassicalForm,
    pub square: ClassicalForm,
    pub lattice: OrientedLattice,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CmEmbeddingReport {
    pub discriminant: i64,
    pub cyclic: bool,
    pub entries: Vec<CmEmbeddingEntry>,
}

/// For each class index `i`, the lattice attached to the square `[I_i]^2`.
/// When the group is cyclic the classes are indexed as powers of the
/// canonical generator, matching the labeling of the CM fibers.
pub fn embedding_lattices(d: i64) -> Result<CmEmbeddingReport> {
    let cg = class_group(d)?;
    let order = cg.order();
    let class_at = |i: usize| -> usize {
        match cg.generator {
            Some(g) => cg.power(g, i as u64),
            None => i,
        }
    };
    let mut entries = Vec::with_capacity(order);
    for i in 0..order {
        let idx = class_at(i);
        let sq = cg.compose_indices(idx, idx);
        entries.push(CmEmbeddingEntry {
            index: i,
            class: cg.forms[idx],
            square: cg.forms[sq],
            lattice: shioda_mitani(&cg.forms[sq]),
        });
    }
    Ok(CmEmbeddingReport {
        discriminant: d,
        cyclic: cg.is_cyclic(),
        entries,
    })
}

/// The Hilbert class polynomial with its evaluation diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct HilbertReport {
    pub discriminant: i64,
    pub degree: usize,
    /// Integer coefficients, highest degree first (leading 1 included).
    pub coefficients: Vec<BigInt>,
    /// Largest distance from any computed coefficient to its integer,
    /// including imaginary residue. Exact rational, no rounding.
    pub max_rounding_error: BigRational,
}

/// Evaluate `prod_i (t - j(tau_i))` over the reduced forms of `d` at the
/// requested fixed-point precision and round to integer coefficients.
///
/// Fails with a precision signal when any coefficient strays more than 1/4
/// from an integer.
pub fn hilbert_class_polynomial(d: i64, digits: u32, q_terms: u32) -> Result<HilbertReport> {
    if !is_fundamental(d) {
        return Err(Error::NotFundamental(d));
    }
    let forms = reduced_forms(d);
    let coeffs = jseries::j_coefficients(q_terms as usize);
    let guard = 15u32;
    let ctx = FxCtx::new(digits + guard);
    let pi = ctx.pi();
    let sqrt_abs_d = ctx.sqrt_u64((-d) as u64);

    // j(tau) for tau = (-b + i sqrt|d|) / (2a): q = exp(2 pi i tau) has
    // modulus exp(-pi sqrt|d| / a) and phase -pi b / a.
    let mut roots: Vec<(BigInt, BigInt)> = Vec::with_capacity(forms.len());
    for f in &forms {
        let a = ctx.from_i64(f.a);
        let x = ctx.div(&ctx.mul(&pi, &sqrt_abs_d), &a);
        let inv_r = ctx.exp(&x);
        let r = ctx.div(ctx.one(), &inv_r);
        let theta = ctx.div(&ctx.mul(&pi, &ctx.from_i64(-f.b)), &a);
        let (cos, sin) = ctx.cos_sin(&theta);
        // 1/q = inv_r * (cos - i sin); q = r * (cos + i sin)
        let q_re = ctx.mul(&r, &cos);
        let q_im = ctx.mul(&r, &sin);
        let mut j_re = ctx.mul(&inv_r, &cos);
        let mut j_im = -ctx.mul(&inv_r, &sin);
        let mut pow_re = ctx.one().clone();
        let mut pow_im = BigInt::zero();
        for c in &coeffs {
            j_re += c * &pow_re;
            j_im += c * &pow_im;
            let nr = ctx.mul(&pow_re, &q_re) - ctx.mul(&pow_im, &q_im);
            let ni = ctx.mul(&pow_re, &q_im) + ctx.mul(&pow_im, &q_re);
            pow_re = nr;
            pow_im = ni;
        }
        roots.push((j_re, j_im));
    }

    // prod (t - j_i), complex coefficients ascending in t.
    let mut poly: Vec<(BigInt, BigInt)> = vec![(ctx.one().clone(), BigInt::zero())];
    for (jr, ji) in &roots {
        let mut next = vec![(BigInt::zero(), BigInt::zero()); poly.len() + 1];
        for (k, (pr, pi_)) in poly.iter().enumerate() {
            // t * poly[k]
            next[k + 1].0 += pr;
            next[k + 1].1 += pi_;
            // -j * poly[k]
            next[k].0 -= ctx.mul(jr, pr) - ctx.mul(ji, pi_);
            next[k].1 -= ctx.mul(jr, pi_) + ctx.mul(ji, pr);
        }
        poly = next;
    }

    let mut coefficients = Vec::with_capacity(poly.len());
    let mut max_err = BigRational::zero();
    for (re, im) in poly.iter().rev() {
        let rounded = div_round(re, ctx.one());
        let err_re = (re - &rounded * ctx.one()).abs();
        let err = BigRational::new(err_re.max(im.abs()), ctx.one().clone());
        if err > max_err {
            max_err = err;
        }
        coefficients.push(rounded);
    }
    if max_err >= BigRational::new(BigInt::one(), BigInt::from(4)) {
        return Err(Error::PrecisionInsufficient(format!(
            "{:.3}",
            rational_to_f64(&max_err)
        )));
    }
    assert!(coefficients[0].is_one(), "class polynomial is monic");
    Ok(HilbertReport {
        discriminant: d,
        degree: forms.len(),
        coefficients,
        max_rounding_error: max_err,
    })
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    let scale = BigInt::from(10u64).pow(18);
    let scaled = div_round(&(r.numer() * &scale), r.denom());
    let as_i128 = i128::try_from(scaled).unwrap_or(i128::MAX);
    as_i128 as f64 / 1e18
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cf(a: i64, b: i64, c: i64) -> ClassicalForm {
        ClassicalForm::new(a, b, c).unwrap()
    }

    #[test]
    fn fundamental_discriminants() {
        for d in [-3, -4, -7, -8, -11, -55] {
            assert!(is_fundamental(d), "{d}");
        }
        for d in [-1, -9, -12, -16, -25, -27, 5, 0] {
            assert!(!is_fundamental(d), "{d}");
        }
    }

    #[test]
    fn class_group_of_minus_55() {
        let cg = class_group(-55).unwrap();
        assert_eq!(cg.order(), 4);
        assert_eq!(
            cg.forms,
            vec![cf(1, 1, 14), cf(2, 1, 7), cf(2, -1, 7), cf(4, 3, 4)]
        );
        assert_eq!(cg.cyclic_factors, vec![4]);
        assert_eq!(cg.generator, Some(1));
        assert_eq!(cg.forms[cg.generator.unwrap()], cf(2, 1, 7));
    }

    #[test]
    fn small_class_numbers() {
        assert_eq!(class_group(-3).unwrap().order(), 1);
        assert_eq!(class_group(-4).unwrap().order(), 1);
        assert_eq!(class_group(-7).unwrap().order(), 1);
        assert_eq!(class_group(-15).unwrap().order(), 2);
        assert!(class_group(-12).is_err());
    }

    #[test]
    fn composition_table_is_a_latin_square() {
        let cg = class_group(-55).unwrap();
        let n = cg.order();
        for i in 0..n {
            let row: std::collections::BTreeSet<usize> =
                (0..n).map(|j| cg.compose_indices(i, j)).collect();
            assert_eq!(row.len(), n);
            let col: std::collections::BTreeSet<usize> =
                (0..n).map(|j| cg.compose_indices(j, i)).collect();
            assert_eq!(col.len(), n);
        }
        // Associativity, checked in full at this size.
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    assert_eq!(
                        cg.compose_indices(cg.compose_indices(i, j), k),
                        cg.compose_indices(i, cg.compose_indices(j, k))
                    );
                }
            }
        }
    }

    #[test]
    fn ideal_to_form_examples() {
        assert_eq!(ideal_to_form(1, 2, -55).unwrap(), cf(1, 1, 14));
        assert_eq!(ideal_to_form(3, 4, -55).unwrap(), cf(2, 1, 7));
        assert_eq!(ideal_to_form(5, 8, -55).unwrap(), cf(4, 3, 4));
        assert_eq!(ideal_to_form(1, 4, -55).unwrap(), cf(2, -1, 7));
        assert!(ideal_to_form(1, 3, -55).is_err());
    }

    #[test]
    fn shioda_mitani_examples() {
        let sm = |a, b, c| shioda_mitani(&cf(a, b, c)).form;
        assert_eq!(sm(1, 1, 14), BinaryEvenForm::new(2, 1, 28).unwrap());
        assert_eq!(sm(4, 3, 4), BinaryEvenForm::new(8, 3, 8).unwrap());
        assert_eq!(sm(2, 1, 7), BinaryEvenForm::new(4, 1, 14).unwrap());
    }

    #[test]
    fn shioda_mitani_determinant_is_minus_d() {
        for f in reduced_forms(-55) {
            assert_eq!(shioda_mitani(&f).form.det(), 55);
        }
        for f in reduced_forms(-23) {
            assert_eq!(shioda_mitani(&f).form.det(), 23);
        }
    }

    #[test]
    fn embedding_lattices_case_split() {
        let report = embedding_lattices(-55).unwrap();
        assert!(report.cyclic);
        assert_eq!(report.entries.len(), 4);
        let lam = |i: usize| report.entries[i].lattice.form;
        let l2128 = BinaryEvenForm::new(2, 1, 28).unwrap();
        let l838 = BinaryEvenForm::new(8, 3, 8).unwrap();
        assert_eq!(lam(0), l2128);
        assert_eq!(lam(1), l838);
        assert_eq!(lam(2), l2128);
        assert_eq!(lam(3), l838);
        // The image depends only on the square class.
        for e in &report.entries {
            assert_eq!(shioda_mitani(&e.square), e.lattice);
        }
    }

    #[test]
    fn hilbert_polynomial_tiny_cases() {
        let h = hilbert_class_polynomial(-3, 40, 30).unwrap();
        assert_eq!(h.degree, 1);
        assert_eq!(h.coefficients, vec![BigInt::one(), BigInt::zero()]);
        let h = hilbert_class_polynomial(-4, 40, 30).unwrap();
        assert_eq!(h.coefficients, vec![BigInt::one(), BigInt::from(-1728)]);
        let h = hilbert_class_polynomial(-7, 40, 30).unwrap();
        assert_eq!(h.coefficients, vec![BigInt::one(), BigInt::from(3375)]);
    }

    #[test]
    fn hilbert_degree_equals_class_number() {
        for d in [-3, -4, -7, -55] {
            let h = hilbert_class_polynomial(d, 60, 40).unwrap();
            assert_eq!(h.degree, class_group(d).unwrap().order(), "{d}");
        }
    }
}

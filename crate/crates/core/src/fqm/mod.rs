//! Finite quadratic forms on finite abelian groups: discriminant forms of
//! even lattices, isotropic subgroups, isometries, and induced maps.
//!
//! Group elements are tuples over the invariant factors `d_1 | d_2 | ...`;
//! the quadratic value lives in Q/2Z and the bilinear pairing in Q/Z.

mod milgram;

pub use milgram::milgram_signature;

use std::collections::{BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::linalg::{row_hnf, smith_normal_form, IntMatrix};

/// Reduce a rational into the window `[0, m)`.
fn rat_mod(v: &BigRational, m: u32) -> BigRational {
    let m = BigRational::from_integer(BigInt::from(m));
    let q = (v / &m).floor();
    v - q * m
}

/// A finite quadratic form `(G, q)` in invariant-factor presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteQuadraticForm {
    factors: Vec<i64>,
    q_gen: Vec<BigRational>,
    b_mat: Vec<Vec<BigRational>>,
}

impl FiniteQuadraticForm {
    /// `factors` must be an ascending divisibility chain of integers > 1;
    /// `q_gen` holds the quadratic values on the generators (mod 2) and
    /// `b_mat` the symmetric bilinear values (mod 1).
    pub fn new(
        factors: Vec<i64>,
        q_gen: Vec<BigRational>,
        b_mat: Vec<Vec<BigRational>>,
    ) -> Result<Self> {
        let k = factors.len();
        assert_eq!(q_gen.len(), k);
        assert_eq!(b_mat.len(), k);
        for i in 0..k {
            assert!(factors[i] > 1, "invariant factors must exceed 1");
            if i + 1 < k {
                assert!(factors[i + 1] % factors[i] == 0, "broken divisibility chain");
            }
            assert_eq!(b_mat[i].len(), k);
        }
        let q_gen: Vec<BigRational> = q_gen.iter().map(|v| rat_mod(v, 2)).collect();
        let b_mat: Vec<Vec<BigRational>> = b_mat
            .iter()
            .map(|row| row.iter().map(|v| rat_mod(v, 1)).collect())
            .collect();
        let f = FiniteQuadraticForm { factors, q_gen, b_mat };
        for i in 0..k {
            for j in 0..k {
                assert_eq!(f.b_mat[i][j], f.b_mat[j][i], "bilinear form must be symmetric");
            }
            // q refines b: b(x, x) = q(x) mod 1.
            assert_eq!(
                rat_mod(&f.q_gen[i], 1),
                f.b_mat[i][i],
                "b diagonal inconsistent with q"
            );
            // d_i * g_i = 0 forces d_i^2 q(g_i) = 0 mod 2 and d_i b(g_i, .) = 0 mod 1
            let d = BigRational::from_integer(BigInt::from(f.factors[i]));
            assert!(rat_mod(&(&d * &d * &f.q_gen[i]), 2).is_zero(), "q value order mismatch");
            for j in 0..k {
                assert!(
                    rat_mod(&(&d * &f.b_mat[i][j]), 1).is_zero(),
                    "b value order mismatch"
                );
            }
        }
        Ok(f)
    }

    /// The trivial form on the trivial group.
    pub fn trivial() -> Self {
        FiniteQuadraticForm {
            factors: vec![],
            q_gen: vec![],
            b_mat: vec![],
        }
    }

    pub fn invariant_factors(&self) -> &[i64] {
        &self.factors
    }

    pub fn num_gens(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().map(|&d| d as u64).product()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn reduce(&self, x: &mut [i64]) {
        for (v, &d) in x.iter_mut().zip(&self.factors) {
            *v = v.rem_euclid(d);
        }
    }

    pub fn add(&self, x: &[i64], y: &[i64]) -> Vec<i64> {
        let mut out: Vec<i64> = x.iter().zip(y).map(|(a, b)| a + b).collect();
        self.reduce(&mut out);
        out
    }

    pub fn neg_elt(&self, x: &[i64]) -> Vec<i64> {
        let mut out: Vec<i64> = x.iter().map(|a| -a).collect();
        self.reduce(&mut out);
        out
    }

    pub fn zero_elt(&self) -> Vec<i64> {
        vec![0; self.num_gens()]
    }

    /// All group elements as reduced tuples, in lexicographic order.
    pub fn elements(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![]];
        for &d in &self.factors {
            let mut next = Vec::with_capacity(out.len() * d as usize);
            for prefix in &out {
                for v in 0..d {
                    let mut t = prefix.clone();
                    t.push(v);
                    next.push(t);
                }
            }
            out = next;
        }
        out
    }

    pub fn element_order(&self, x: &[i64]) -> u64 {
        let mut ord = 1u64;
        for (&v, &d) in x.iter().zip(&self.factors) {
            let o = (d / v.gcd(&d)) as u64;
            ord = ord.lcm(&o);
        }
        ord
    }

    /// Quadratic value of an arbitrary tuple, reduced into `[0, 2)`.
    pub fn q_value(&self, x: &[i64]) -> BigRational {
        let mut acc = BigRational::zero();
        for (i, &xi) in x.iter().enumerate() {
            let xi = BigRational::from_integer(BigInt::from(xi));
            acc += &xi * &xi * &self.q_gen[i];
        }
        for i in 0..x.len() {
            for j in i + 1..x.len() {
                let c = BigRational::from_integer(BigInt::from(2 * x[i] * x[j]));
                acc += c * &self.b_mat[i][j];
            }
        }
        rat_mod(&acc, 2)
    }

    /// Bilinear value of a pair, reduced into `[0, 1)`.
    pub fn b_value(&self, x: &[i64], y: &[i64]) -> BigRational {
        let mut acc = BigRational::zero();
        for i in 0..x.len() {
            for j in 0..y.len() {
                let c = BigRational::from_integer(BigInt::from(x[i] * y[j]));
                acc += c * &self.b_mat[i][j];
            }
        }
        rat_mod(&acc, 1)
    }

    /// The form with the same group and `q` replaced by `-q`.
    pub fn negate(&self) -> FiniteQuadraticForm {
        FiniteQuadraticForm {
            factors: self.factors.clone(),
            q_gen: self.q_gen.iter().map(|v| rat_mod(&-v, 2)).collect(),
            b_mat: self
                .b_mat
                .iter()
                .map(|row| row.iter().map(|v| rat_mod(&-v, 1)).collect())
                .collect(),
        }
    }

    pub fn q_on_generator(&self, i: usize) -> &BigRational {
        &self.q_gen[i]
    }
}

/// Same group, negated quadratic values.
pub fn negate(q: &FiniteQuadraticForm) -> FiniteQuadraticForm {
    q.negate()
}

/// The discriminant group of an even lattice together with the lifting data
/// connecting abstract tuples to rational dual vectors.
#[derive(Debug, Clone)]
pub struct DiscriminantGroup {
    gram: IntMatrix,
    form: FiniteQuadraticForm,
    /// Rational dual vector (in lattice coordinates) under each generator.
    dual_gens: Vec<Vec<BigRational>>,
    /// Row transform of the Smith normal form of the Gram matrix.
    u: IntMatrix,
    /// Positions and values of the nontrivial invariant factors in the
    /// full Smith chain.
    kept: Vec<(usize, i64)>,
}

impl DiscriminantGroup {
    pub fn new(l: &Lattice) -> Result<Self> {
        if !l.is_even() {
            return Err(Error::OddLattice);
        }
        let gram = l.gram().clone();
        let n = gram.rows();
        let (u, d, v) = smith_normal_form(&gram);
        let mut kept = Vec::new();
        for i in 0..n {
            let di = d.get(i, i);
            assert!(!di.is_zero(), "nondegenerate lattice has nonzero factors");
            if !di.is_one() {
                let di = i64::try_from(di.clone()).expect("invariant factor fits i64");
                kept.push((i, di));
            }
        }
        let mut dual_gens = Vec::with_capacity(kept.len());
        for &(i, di) in &kept {
            let col: Vec<BigRational> = (0..n)
                .map(|r| BigRational::new(v.get(r, i).clone(), BigInt::from(di)))
                .collect();
            dual_gens.push(col);
        }
        let pair = |x: &[BigRational], y: &[BigRational]| -> BigRational {
            let mut acc = BigRational::zero();
            for i in 0..n {
                for j in 0..n {
                    acc += &x[i] * gram.get(i, j) * &y[j];
                }
            }
            acc
        };
        let k = kept.len();
        let factors: Vec<i64> = kept.iter().map(|&(_, d)| d).collect();
        let q_gen: Vec<BigRational> = (0..k)
            .map(|i| rat_mod(&pair(&dual_gens[i], &dual_gens[i]), 2))
            .collect();
        let b_mat: Vec<Vec<BigRational>> = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| rat_mod(&pair(&dual_gens[i], &dual_gens[j]), 1))
                    .collect()
            })
            .collect();
        let form = FiniteQuadraticForm::new(factors, q_gen, b_mat)?;
        assert_eq!(
            BigInt::from(form.order()),
            l.det().abs(),
            "group order must equal |det|"
        );
        Ok(DiscriminantGroup {
            gram,
            form,
            dual_gens,
            u,
            kept,
        })
    }

    pub fn form(&self) -> &FiniteQuadraticForm {
        &self.form
    }

    /// A rational dual-vector representative of the class with tuple `t`.
    pub fn lift(&self, t: &[i64]) -> Vec<BigRational> {
        let n = self.gram.rows();
        let mut out = vec![BigRational::zero(); n];
        for (ti, gen) in t.iter().zip(&self.dual_gens) {
            let c = BigRational::from_integer(BigInt::from(*ti));
            for (o, g) in out.iter_mut().zip(gen) {
                *o += &c * g;
            }
        }
        out
    }

    /// The class tuple of a dual vector given in lattice coordinates.
    /// Panics if the vector is not in the dual lattice.
    pub fn class_of(&self, v: &[BigRational]) -> Vec<i64> {
        let n = self.gram.rows();
        assert_eq!(v.len(), n);
        let y: Vec<BigInt> = (0..n)
            .map(|i| {
                let mut acc = BigRational::zero();
                for j in 0..n {
                    acc += BigRational::from_integer(self.gram.get(i, j).clone()) * &v[j];
                }
                assert!(acc.is_integer(), "vector is not in the dual lattice");
                acc.to_integer()
            })
            .collect();
        let uy = self.u.mul_vec(&y);
        self.kept
            .iter()
            .map(|&(i, di)| {
                let r = uy[i].mod_floor(&BigInt::from(di));
                i64::try_from(r).expect("tuple entry fits i64")
            })
            .collect()
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }
}

/// The discriminant form of an even lattice; order equals `|det|`.
pub fn discriminant_form(l: &Lattice) -> Result<FiniteQuadraticForm> {
    Ok(DiscriminantGroup::new(l)?.form().clone())
}

/// A subgroup of a finite abelian group in canonical form: HNF-reduced
/// generators plus the sorted element list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupData {
    generators: Vec<Vec<i64>>,
    elements: Vec<Vec<i64>>,
}

impl SubgroupData {
    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    pub fn elements(&self) -> &[Vec<i64>] {
        &self.elements
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.elements.binary_search_by(|e| e.as_slice().cmp(x)).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }
}

/// Close a generating set under the group law and put it in canonical form.
pub fn subgroup_closure(q: &FiniteQuadraticForm, gens: &[Vec<i64>]) -> SubgroupData {
    let k = q.num_gens();
    let mut set: BTreeSet<Vec<i64>> = BTreeSet::new();
    set.insert(q.zero_elt());
    let mut frontier: VecDeque<Vec<i64>> = VecDeque::new();
    for g in gens {
        let mut g = g.clone();
        q.reduce(&mut g);
        if set.insert(g.clone()) {
            frontier.push_back(g);
        }
    }
    while let Some(x) = frontier.pop_front() {
        let current: Vec<Vec<i64>> = set.iter().cloned().collect();
        for y in current {
            let s = q.add(&x, &y);
            if set.insert(s.clone()) {
                frontier.push_back(s);
            }
        }
    }
    let elements: Vec<Vec<i64>> = set.into_iter().collect();
    // Canonical generators: HNF of the preimage lattice of the subgroup,
    // rows reduced mod the invariant factors, trivial rows dropped.
    let generators = if k == 0 || elements.len() == 1 {
        Vec::new()
    } else {
        let mut rows: Vec<Vec<i64>> = gens.to_vec();
        for (i, &d) in q.invariant_factors().iter().enumerate() {
            let mut row = vec![0; k];
            row[i] = d;
            rows.push(row);
        }
        let m = IntMatrix::from_rows(&rows);
        let h = row_hnf(&m);
        let mut out = Vec::new();
        for i in 0..h.rows() {
            let mut row: Vec<i64> = (0..k)
                .map(|j| i64::try_from(h.get(i, j).clone()).expect("entry fits i64"))
                .collect();
            q.reduce(&mut row);
            if row.iter().any(|&v| v != 0) {
                out.push(row);
            }
        }
        out
    };
    SubgroupData {
        generators,
        elements,
    }
}

/// All totally isotropic subgroups (q vanishes identically), including the
/// trivial one, each listed once, canonically ordered by (order, elements).
pub fn isotropic_subgroups(q: &FiniteQuadraticForm) -> Vec<SubgroupData> {
    let isotropic_elts: Vec<Vec<i64>> = q
        .elements()
        .into_iter()
        .filter(|x| q.q_value(x).is_zero())
        .collect();
    let trivial = subgroup_closure(q, &[]);
    let mut seen: BTreeSet<Vec<Vec<i64>>> = BTreeSet::new();
    seen.insert(trivial.elements.clone());
    let mut out = vec![trivial.clone()];
    let mut queue = VecDeque::new();
    queue.push_back(trivial);
    while let Some(h) = queue.pop_front() {
        for x in &isotropic_elts {
            if h.contains(x) {
                continue;
            }
            let mut gens = h.generators.clone();
            gens.push(x.clone());
            let hx = subgroup_closure(q, &gens);
            if !hx.elements.iter().all(|e| q.q_value(e).is_zero()) {
                continue;
            }
            // Bilinear vanishing follows from total isotropy; assert it.
            for a in &hx.elements {
                for b in &hx.elements {
                    debug_assert!(q.b_value(a, b).is_zero());
                }
            }
            if seen.insert(hx.elements.clone()) {
                out.push(hx.clone());
                queue.push_back(hx);
            }
        }
    }
    out.sort_by(|a, b| (a.order(), &a.elements).cmp(&(b.order(), &b.elements)));
    out
}

/// A homomorphism of finite quadratic form groups, stored as the images of
/// the source generators in target coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct FqmMap {
    images: Vec<Vec<i64>>,
}

impl FqmMap {
    pub fn new(images: Vec<Vec<i64>>) -> Self {
        FqmMap { images }
    }

    pub fn identity(q: &FiniteQuadraticForm) -> Self {
        let k = q.num_gens();
        let images = (0..k)
            .map(|i| {
                let mut e = vec![0; k];
                e[i] = 1;
                e
            })
            .collect();
        FqmMap { images }
    }

    pub fn images(&self) -> &[Vec<i64>] {
        &self.images
    }

    /// Image of an arbitrary source tuple; `target` supplies the reduction.
    pub fn apply(&self, target: &FiniteQuadraticForm, x: &[i64]) -> Vec<i64> {
        let mut acc = vec![0i64; target.num_gens()];
        for (xi, img) in x.iter().zip(&self.images) {
            for (a, v) in acc.iter_mut().zip(img) {
                *a += xi * v;
            }
        }
        target.reduce(&mut acc);
        acc
    }

    /// Composition `next . self`, with `self: A -> B` and `next: B -> C`.
    pub fn then(&self, next: &FqmMap, final_target: &FiniteQuadraticForm) -> FqmMap {
        FqmMap {
            images: self
                .images
                .iter()
                .map(|im| next.apply(final_target, im))
                .collect(),
        }
    }

    /// Check that the map carries `(src, q_src)` isometrically onto
    /// `(dst, q_dst)` (bijective and value-preserving).
    pub fn is_isometry(&self, src: &FiniteQuadraticForm, dst: &FiniteQuadraticForm) -> bool {
        if self.images.len() != src.num_gens() {
            return false;
        }
        for (i, img) in self.images.iter().enumerate() {
            let mut e = vec![0; src.num_gens()];
            e[i] = 1;
            if dst.q_value(img) != src.q_value(&e) {
                return false;
            }
            for (j, jmg) in self.images.iter().enumerate() {
                let mut f = vec![0; src.num_gens()];
                f[j] = 1;
                if dst.b_value(img, jmg) != src.b_value(&e, &f) {
                    return false;
                }
            }
        }
        subgroup_closure(dst, &self.images).order() == dst.order()
    }
}

/// Complete list of isomorphisms of finite quadratic forms from `src` to
/// `dst`, canonically ordered. Empty when the groups or forms mismatch.
pub fn fqm_isomorphisms(
    src: &FiniteQuadraticForm,
    dst: &FiniteQuadraticForm,
) -> Vec<FqmMap> {
    if src.invariant_factors() != dst.invariant_factors() {
        return Vec::new();
    }
    let k = src.num_gens();
    if k == 0 {
        return vec![FqmMap { images: vec![] }];
    }
    // Candidates per generator slot: elements of the right order whose
    // quadratic value matches.
    let elements = dst.elements();
    let mut candidates: Vec<Vec<Vec<i64>>> = Vec::with_capacity(k);
    for i in 0..k {
        let mut e = vec![0; k];
        e[i] = 1;
        let want_order = src.element_order(&e);
        let want_q = src.q_value(&e);
        candidates.push(
            elements
                .iter()
                .filter(|y| dst.element_order(y) == want_order && dst.q_value(y) == want_q)
                .cloned()
                .collect(),
        );
    }
    let mut out = Vec::new();
    let mut picked: Vec<Vec<i64>> = Vec::with_capacity(k);
    search_isomorphisms(src, dst, &candidates, &mut picked, &mut out);
    out
}

fn search_isomorphisms(
    src: &FiniteQuadraticForm,
    dst: &FiniteQuadraticForm,
    candidates: &[Vec<Vec<i64>>],
    picked: &mut Vec<Vec<i64>>,
    out: &mut Vec<FqmMap>,
) {
    let i = picked.len();
    if i == candidates.len() {
        let map = FqmMap {
            images: picked.clone(),
        };
        if subgroup_closure(dst, picked).order() == dst.order() {
            out.push(map);
        }
        return;
    }
    let mut ei = vec![0; candidates.len()];
    ei[i] = 1;
    'next: for y in &candidates[i] {
        for (j, prev) in picked.iter().enumerate() {
            let mut ej = vec![0; candidates.len()];
            ej[j] = 1;
            if dst.b_value(y, prev) != src.b_value(&ei, &ej) {
                continue 'next;
            }
        }
        picked.push(y.clone());
        search_isomorphisms(src, dst, candidates, picked, out);
        picked.pop();
    }
}

/// The automorphism group of a finite quadratic form.
pub fn orthogonal_group(q: &FiniteQuadraticForm) -> Vec<FqmMap> {
    fqm_isomorphisms(q, q)
}

/// The automorphism of the discriminant form induced by an isometry of the
/// lattice, given as an integer matrix in the lattice basis.
pub fn induced_map(g: &IntMatrix, disc: &DiscriminantGroup) -> Result<FqmMap> {
    if g.transpose().mul(disc.gram()).mul(g) != *disc.gram() {
        return Err(Error::NotIsometry);
    }
    let g_rat = g.to_rational();
    let images = (0..disc.form().num_gens())
        .map(|i| {
            let mut t = vec![0; disc.form().num_gens()];
            t[i] = 1;
            let v = disc.lift(&t);
            let w = g_rat.mul_vec(&v);
            disc.class_of(&w)
        })
        .collect();
    Ok(FqmMap { images })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynkin::DynkinType;
    use crate::lattice::{polarized_m0, root_lattice};

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn lattice_of(rows: &[Vec<i64>]) -> Lattice {
        Lattice::new(IntMatrix::from_rows(rows)).unwrap()
    }

    #[test]
    fn discriminant_form_of_h() {
        let q = discriminant_form(&lattice_of(&[vec![2]])).unwrap();
        assert_eq!(q.invariant_factors(), &[2]);
        assert_eq!(q.q_value(&[1]), rat(1, 2));
    }

    #[test]
    fn discriminant_form_of_a1() {
        let q = discriminant_form(&lattice_of(&[vec![-2]])).unwrap();
        assert_eq!(q.invariant_factors(), &[2]);
        assert_eq!(q.q_value(&[1]), rat(3, 2));
    }

    #[test]
    fn discriminant_form_of_e8_is_trivial() {
        let e8 = root_lattice(&DynkinType::parse("E8").unwrap());
        let q = discriminant_form(&e8).unwrap();
        assert!(q.is_trivial());
    }

    #[test]
    fn odd_lattice_rejected() {
        let odd = lattice_of(&[vec![1]]);
        assert_eq!(discriminant_form(&odd), Err(Error::OddLattice));
    }

    #[test]
    fn order_matches_determinant() {
        for s in ["A1", "A4", "A7", "D4", "D5", "E6", "E7", "A16+A2+A1"] {
            let l = root_lattice(&DynkinType::parse(s).unwrap());
            let q = discriminant_form(&l).unwrap();
            assert_eq!(BigInt::from(q.order()), l.det().abs(), "{s}");
        }
    }

    #[test]
    fn lift_class_roundtrip() {
        let l = root_lattice(&DynkinType::parse("A4+A2").unwrap());
        let disc = DiscriminantGroup::new(&l).unwrap();
        for t in disc.form().elements() {
            assert_eq!(disc.class_of(&disc.lift(&t)), t);
        }
    }

    #[test]
    fn isotropic_subgroups_z3_only_trivial() {
        // Z/3 with q(g) = 4/3: q(2g) = 16/3 = 4/3 mod 2, so no isotropic
        // element besides 0.
        let q = FiniteQuadraticForm::new(
            vec![3],
            vec![rat(4, 3)],
            vec![vec![rat(1, 3)]],
        )
        .unwrap();
        let subs = isotropic_subgroups(&q);
        assert_eq!(subs.len(), 1);
        assert!(subs[0].is_trivial());
    }

    #[test]
    fn isotropic_subgroups_trivial_group() {
        let q = FiniteQuadraticForm::trivial();
        let subs = isotropic_subgroups(&q);
        assert_eq!(subs.len(), 1);
    }

    #[test]
    fn negate_involution() {
        let p = polarized_m0(&DynkinType::parse("A19").unwrap());
        let q = discriminant_form(&p.m0).unwrap();
        assert_eq!(negate(&negate(&q)), q);
        let z2 = FiniteQuadraticForm::new(vec![2], vec![rat(1, 2)], vec![vec![rat(1, 2)]]).unwrap();
        assert_eq!(negate(&z2).q_value(&[1]), rat(3, 2));
    }

    #[test]
    fn isomorphisms_of_rank_one_forms() {
        let a = FiniteQuadraticForm::new(vec![2], vec![rat(1, 2)], vec![vec![rat(1, 2)]]).unwrap();
        let b = FiniteQuadraticForm::new(vec![2], vec![rat(3, 2)], vec![vec![rat(1, 2)]]).unwrap();
        assert_eq!(fqm_isomorphisms(&a, &a).len(), 1);
        assert!(fqm_isomorphisms(&a, &b).is_empty());
        let t = FiniteQuadraticForm::trivial();
        assert_eq!(fqm_isomorphisms(&t, &t).len(), 1);
    }

    #[test]
    fn orthogonal_group_sizes() {
        let t = FiniteQuadraticForm::trivial();
        assert_eq!(orthogonal_group(&t).len(), 1);
        let z2 = FiniteQuadraticForm::new(vec![2], vec![rat(1, 2)], vec![vec![rat(1, 2)]]).unwrap();
        assert_eq!(orthogonal_group(&z2).len(), 1);
        let z3 = FiniteQuadraticForm::new(vec![3], vec![rat(4, 3)], vec![vec![rat(1, 3)]]).unwrap();
        assert_eq!(orthogonal_group(&z3).len(), 2);
    }

    #[test]
    fn orthogonal_group_is_closed() {
        let l = root_lattice(&DynkinType::parse("A4").unwrap());
        let q = discriminant_form(&l).unwrap();
        let g = orthogonal_group(&q);
        for a in &g {
            for b in &g {
                let c = a.then(b, &q);
                assert!(g.contains(&c));
            }
        }
        assert!(g.contains(&FqmMap::identity(&q)));
    }

    #[test]
    fn induced_map_identity_and_flip() {
        let a2 = root_lattice(&DynkinType::parse("A2").unwrap());
        let disc = DiscriminantGroup::new(&a2).unwrap();
        let id = induced_map(&IntMatrix::identity(2), &disc).unwrap();
        assert_eq!(id, FqmMap::identity(disc.form()));
        // The diagram flip acts as negation on Z/3.
        let flip = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        let m = induced_map(&flip, &disc).unwrap();
        assert_eq!(m.images(), &[vec![2]]);
    }

    #[test]
    fn induced_map_negation_on_a1_factor() {
        let p = polarized_m0(&DynkinType::parse("A1").unwrap());
        let disc = DiscriminantGroup::new(&p.m0).unwrap();
        let g = IntMatrix::from_rows(&[vec![-1, 0], vec![0, 1]]);
        let m = induced_map(&g, &disc).unwrap();
        // Negation on the A1 factor fixes every element of (Z/2)^2, so the
        // induced map is the identity.
        assert_eq!(m, FqmMap::identity(disc.form()));
        let not_isometry = IntMatrix::from_rows(&[vec![1, 1], vec![0, 1]]);
        assert!(induced_map(&not_isometry, &disc).is_err());
    }

    #[test]
    fn anti_isometry_double_negation_contains_identity() {
        let p = polarized_m0(&DynkinType::parse("A16+A3").unwrap());
        let q = discriminant_form(&p.m0).unwrap();
        let maps = fqm_isomorphisms(&q, &negate(&negate(&q)));
        assert!(!maps.is_empty());
        assert!(maps.contains(&FqmMap::identity(&q)));
    }
}

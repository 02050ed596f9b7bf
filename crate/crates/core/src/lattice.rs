//! Integer lattices with distinguished data: root lattices of Dynkin types,
//! the polarized lattice `M0 = Sigma_R(-1) ++ <h>`, even overlattices built
//! from isotropic glue, and the admissibility conditions on them.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::dynkin::DynkinType;
use crate::error::{Error, Result};
use crate::fqm::{DiscriminantGroup, SubgroupData};
use crate::linalg::{row_hnf, smith_normal_form, vectors_of_norm, IntMatrix, RatMatrix};

/// A nondegenerate integer lattice, optionally carrying the expression of
/// its basis inside a reference lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    gram: IntMatrix,
    basis_in_ambient: Option<RatMatrix>,
}

impl Lattice {
    pub fn new(gram: IntMatrix) -> Result<Self> {
        assert!(gram.is_symmetric(), "Gram matrix must be symmetric");
        if gram.det().is_zero() {
            return Err(Error::DegenerateLattice);
        }
        Ok(Lattice {
            gram,
            basis_in_ambient: None,
        })
    }

    pub fn with_ambient_basis(gram: IntMatrix, basis: RatMatrix) -> Result<Self> {
        let mut l = Lattice::new(gram)?;
        l.basis_in_ambient = Some(basis);
        Ok(l)
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn det(&self) -> BigInt {
        self.gram.det()
    }

    pub fn is_even(&self) -> bool {
        self.gram.has_even_diagonal()
    }

    pub fn basis_in_ambient(&self) -> Option<&RatMatrix> {
        self.basis_in_ambient.as_ref()
    }

    /// Signature `(s_plus, s_minus)` by congruence diagonalization
    /// (Sylvester's law); exact, no eigenvalues involved.
    pub fn signature(&self) -> (usize, usize) {
        let n = self.rank();
        let mut a = self.gram.to_rational();
        let mut pos = 0;
        let mut neg = 0;
        for k in 0..n {
            if a.get(k, k).is_zero() {
                // Nondegeneracy guarantees a nonzero pairing in this row;
                // e_k += e_j makes the diagonal entry nonzero.
                if let Some(j) = (k + 1..n).find(|&j| !a.get(k, j).is_zero()) {
                    for t in 0..n {
                        let v = a.get(k, t) + a.get(j, t);
                        a.set(k, t, v);
                    }
                    for t in 0..n {
                        let v = a.get(t, k) + a.get(t, j);
                        a.set(t, k, v);
                    }
                } else {
                    continue;
                }
            }
            let p = a.get(k, k).clone();
            if p.is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            for i in k + 1..n {
                if a.get(i, k).is_zero() {
                    continue;
                }
                let f = a.get(i, k) / &p;
                for j in k..n {
                    let v = a.get(i, j) - &f * a.get(k, j);
                    a.set(i, j, v);
                }
                for j in k..n {
                    let v = a.get(j, i) - &f * a.get(k, j);
                    a.set(j, i, v);
                }
            }
        }
        (pos, neg)
    }
}

/// Negative-definite root lattice of type `R`: block-diagonal negated Cartan
/// matrices, components in the canonical order, Bourbaki node order within
/// each component.
pub fn root_lattice(r: &DynkinType) -> Lattice {
    let rank = r.rank() as usize;
    let mut gram = IntMatrix::zero(rank, rank);
    let offsets = r.block_offsets();
    for (c, off) in r.components().iter().zip(offsets) {
        let cartan = c.cartan();
        let k = c.rank() as usize;
        for i in 0..k {
            for j in 0..k {
                gram.set(off + i, off + j, -cartan.get(i, j));
            }
        }
    }
    Lattice::new(gram).expect("root lattices are nondegenerate")
}

/// The polarized lattice `M0` of a Dynkin type: the root block first, the
/// polarization vector `h` with `(h, h) = 2` last.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolarizedRootData {
    pub dynkin: DynkinType,
    pub m0: Lattice,
    pub root_count: u64,
}

impl PolarizedRootData {
    pub fn rank(&self) -> usize {
        self.m0.rank()
    }

    /// Index of `h` in the basis (the last slot).
    pub fn h_index(&self) -> usize {
        self.m0.rank() - 1
    }
}

pub fn polarized_m0(r: &DynkinType) -> PolarizedRootData {
    let roots = root_lattice(r);
    let n = roots.rank() + 1;
    let mut gram = IntMatrix::zero(n, n);
    for i in 0..n - 1 {
        for j in 0..n - 1 {
            gram.set(i, j, roots.gram().get(i, j).clone());
        }
    }
    gram.set(n - 1, n - 1, BigInt::from(2));
    PolarizedRootData {
        dynkin: r.clone(),
        m0: Lattice::new(gram).expect("M0 is nondegenerate"),
        root_count: r.root_count(),
    }
}

/// A finite-index even overlattice of `M0`, stored by a rational row basis
/// in `M0` coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Overlattice {
    base: PolarizedRootData,
    basis: RatMatrix,
    basis_t_inv: RatMatrix,
    index: u64,
    gram: IntMatrix,
}

impl Overlattice {
    /// The trivial overlattice `M = M0`.
    pub fn trivial(base: PolarizedRootData) -> Overlattice {
        let n = base.rank();
        let gram = base.m0.gram().clone();
        Overlattice {
            base,
            basis: RatMatrix::identity(n),
            basis_t_inv: RatMatrix::identity(n),
            index: 1,
            gram,
        }
    }

    pub fn base(&self) -> &PolarizedRootData {
        &self.base
    }

    pub fn basis(&self) -> &RatMatrix {
        &self.basis
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    /// The overlattice viewed as a plain lattice carrying its `M0`-basis.
    pub fn lattice(&self) -> Lattice {
        Lattice::with_ambient_basis(self.gram.clone(), self.basis.clone())
            .expect("overlattice Gram is nondegenerate")
    }

    /// Coordinates of an `M0`-rational vector in the basis of `M`, if the
    /// vector belongs to `M`.
    pub fn coords_in_m(&self, v_m0: &[BigRational]) -> Option<Vec<BigInt>> {
        let y = self.basis_t_inv.mul_vec(v_m0);
        if y.iter().all(|c| c.is_integer()) {
            Some(y.iter().map(|c| c.to_integer()).collect())
        } else {
            None
        }
    }

    pub fn contains(&self, v_m0: &[BigRational]) -> bool {
        self.coords_in_m(v_m0).is_some()
    }

    /// Express `M`-coordinates back in `M0` coordinates.
    pub fn to_m0_coords(&self, y: &[BigInt]) -> Vec<BigRational> {
        let yr: Vec<BigRational> = y
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        self.basis.transpose().mul_vec(&yr)
    }

    /// Matrix of an isometry `g` of `M0` in the basis of `M`. Errors unless
    /// `g` preserves `M` and the Gram form of `M`.
    pub fn conjugate_isometry(&self, g: &IntMatrix) -> Result<IntMatrix> {
        let a = self
            .basis_t_inv
            .mul(&g.to_rational())
            .mul(&self.basis.transpose());
        if !a.is_integral() {
            return Err(Error::NotIsometry);
        }
        let a = a.to_int();
        if a.transpose().mul(&self.gram).mul(&a) != self.gram {
            return Err(Error::NotIsometry);
        }
        Ok(a)
    }
}

/// Build the even overlattice `M` of `M0` with `M/M0 = H`, for a totally
/// isotropic subgroup `H` of the discriminant form of `M0`.
///
/// A subgroup whose lift produces a non-integral or odd Gram is rejected:
/// that signals non-isotropic glue.
pub fn overlattice_from_isotropic(
    base: &PolarizedRootData,
    disc: &DiscriminantGroup,
    h: &SubgroupData,
) -> Result<Overlattice> {
    let n = base.rank();
    let gens = h.generators();
    let mut stacked = RatMatrix::zero(n + gens.len(), n);
    for i in 0..n {
        stacked.set(i, i, BigRational::one());
    }
    for (k, g) in gens.iter().enumerate() {
        let lift = disc.lift(g);
        for (j, v) in lift.into_iter().enumerate() {
            stacked.set(n + k, j, v);
        }
    }
    let scale = stacked.denominator_lcm();
    let scaled = stacked
        .scale(&BigRational::from_integer(scale.clone()))
        .to_int();
    let hnf = row_hnf(&scaled);
    assert_eq!(hnf.rows(), n, "overlattice basis must have full rank");
    let basis = hnf
        .to_rational()
        .scale(&BigRational::new(BigInt::one(), scale));
    let gram_rat = basis
        .mul(&base.m0.gram().to_rational())
        .mul(&basis.transpose());
    if !gram_rat.is_integral() {
        return Err(Error::NotIsotropic);
    }
    let gram = gram_rat.to_int();
    if !gram.has_even_diagonal() {
        return Err(Error::NotIsotropic);
    }
    let index_rat = basis.det();
    let index = (BigRational::one() / index_rat).abs();
    assert!(index.is_integer(), "overlattice index must be an integer");
    let index_int = index.to_integer();
    assert_eq!(
        BigInt::from(h.order()),
        index_int,
        "index must equal the glue-group order"
    );
    // det(M) * |H|^2 = det(M0)
    assert_eq!(gram.det() * &index_int * &index_int, base.m0.gram().det());
    let index = u64::try_from(index_int).expect("index fits in u64");
    Ok(Overlattice {
        base: base.clone(),
        basis_t_inv: basis.transpose().inverse(),
        basis,
        index,
        gram,
    })
}

/// The sublattice `P_M = h^perp in M` as a pair `(gram_p, embed)` where the
/// columns of `embed` give the `M`-coordinates of the basis of `P_M`.
fn h_perp_in_m(m: &Overlattice) -> (IntMatrix, IntMatrix) {
    let n = m.rank();
    let h_idx = m.base().h_index();
    // Pairings of the M-basis with h: integral because h is in M.
    let g0 = m.base().m0.gram();
    let pairings = IntMatrix::from_fn(1, n, |_, j| {
        let mut acc = BigRational::zero();
        for t in 0..n {
            acc += m.basis().get(j, t) * g0.get(t, h_idx);
        }
        assert!(acc.is_integer(), "(b_j, h) must be an integer");
        acc.to_integer()
    });
    let (_, d, v) = smith_normal_form(&pairings);
    assert!(!d.get(0, 0).is_zero(), "pairing with h cannot vanish on M");
    let embed = IntMatrix::from_fn(n, n - 1, |i, j| v.get(i, j + 1).clone());
    let gram_p = embed.transpose().mul(&m.gram()).mul(&embed);
    (gram_p, embed)
}

/// All `v` in `M` with `(v, h) = 0` and `(v, v) = -2`, in `M0` coordinates,
/// sorted canonically.
pub fn roots_orthogonal_to_h(m: &Overlattice) -> Result<Vec<Vec<BigRational>>> {
    let (gram_p, embed) = h_perp_in_m(m);
    let k = gram_p.rows();
    let neg = IntMatrix::from_fn(k, k, |i, j| -gram_p.get(i, j));
    let shift = vec![BigRational::zero(); k];
    let sols = vectors_of_norm(&neg, &BigInt::from(2), &shift)?;
    let mut out: Vec<Vec<BigRational>> = sols
        .into_iter()
        .map(|z| {
            let zi: Vec<BigInt> = z.iter().map(|c| c.to_integer()).collect();
            let y = embed.mul_vec(&zi);
            m.to_m0_coords(&y)
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Condition (m1): `M` has no vector `v` with `(v, h) = 1` and `(v, v) = 0`.
///
/// Such a `v` corresponds to a root `u = 2v - h` of `P_M` with
/// `(u + h)/2` in `M`, which turns an unbounded indefinite search into root
/// enumeration plus membership tests.
pub fn check_m1(m: &Overlattice) -> Result<bool> {
    let n = m.rank();
    let h_idx = m.base().h_index();
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    for u in roots_orthogonal_to_h(m)? {
        let mut cand: Vec<BigRational> = u.iter().map(|c| c * &half).collect();
        cand[h_idx] += &half;
        debug_assert_eq!(cand.len(), n);
        if m.contains(&cand) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Condition (m2): the roots of `M` orthogonal to `h` are exactly the roots
/// of the root block, i.e. every enumerated root has integral coordinates
/// over the fundamental basis and the count matches the root number of `R`.
pub fn check_m2(m: &Overlattice) -> Result<bool> {
    let roots = roots_orthogonal_to_h(m)?;
    if roots.len() as u64 != m.base().root_count {
        return Ok(false);
    }
    Ok(roots
        .iter()
        .all(|v| v.iter().all(|c| c.is_integer())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fqm;

    fn dt(s: &str) -> DynkinType {
        DynkinType::parse(s).unwrap()
    }

    #[test]
    fn root_lattice_small_grams() {
        assert_eq!(
            root_lattice(&dt("A1")).gram(),
            &IntMatrix::from_rows(&[vec![-2]])
        );
        assert_eq!(
            root_lattice(&dt("A2")).gram(),
            &IntMatrix::from_rows(&[vec![-2, 1], vec![1, -2]])
        );
    }

    #[test]
    fn e8_is_unimodular() {
        assert_eq!(root_lattice(&dt("E8")).det(), BigInt::one());
    }

    #[test]
    fn root_lattices_are_negative_definite() {
        for s in ["A1", "A5", "D4", "D7", "E6", "E7", "E8", "2A3+D4"] {
            let l = root_lattice(&dt(s));
            let neg = IntMatrix::from_fn(l.rank(), l.rank(), |i, j| -l.gram().get(i, j));
            assert!(
                crate::linalg::rational_cholesky(&neg).is_ok(),
                "{s} not negative definite"
            );
            assert_eq!(l.signature(), (0, l.rank()));
        }
    }

    #[test]
    fn polarized_m0_shape_and_dets() {
        let p = polarized_m0(&dt("A1"));
        assert_eq!(
            p.m0.gram(),
            &IntMatrix::from_rows(&[vec![-2, 0], vec![0, 2]])
        );
        assert_eq!(p.root_count, 2);

        let p = polarized_m0(&dt("A16+A2+A1"));
        assert_eq!(p.m0.signature(), (1, 19));
        assert_eq!(p.m0.det().abs(), BigInt::from(204));

        let p = polarized_m0(&dt("A10+A9"));
        assert_eq!(p.m0.det().abs(), BigInt::from(220));
    }

    #[test]
    fn trivial_overlattice_roots() {
        let m = Overlattice::trivial(polarized_m0(&dt("A1")));
        assert_eq!(roots_orthogonal_to_h(&m).unwrap().len(), 2);
        let m = Overlattice::trivial(polarized_m0(&dt("A16+A2+A1")));
        assert_eq!(roots_orthogonal_to_h(&m).unwrap().len(), 280);
        let m = Overlattice::trivial(polarized_m0(&dt("A19")));
        assert_eq!(roots_orthogonal_to_h(&m).unwrap().len(), 380);
    }

    #[test]
    fn m0_satisfies_m1_and_m2() {
        for s in ["A1", "A16+A2+A1", "A16+A3", "A18+A1", "A15+A4", "A19", "A10+A9"] {
            let m = Overlattice::trivial(polarized_m0(&dt(s)));
            assert!(check_m1(&m).unwrap(), "{s}: m1 fails on M0");
            assert!(check_m2(&m).unwrap(), "{s}: m2 fails on M0");
        }
    }

    #[test]
    fn a1_glue_overlattice_violates_m1() {
        // H generated by (e/2 + h/2): the glue vector has square 0, and
        // (v, h) = 1, so (m1) must fail on the index-2 overlattice.
        let base = polarized_m0(&dt("A1"));
        let disc = fqm::DiscriminantGroup::new(&base.m0).unwrap();
        assert_eq!(disc.form().invariant_factors(), &[2, 2]);
        let q = disc.form();
        let iso = fqm::isotropic_subgroups(q);
        let nontrivial: Vec<_> = iso.iter().filter(|h| h.order() > 1).collect();
        assert_eq!(nontrivial.len(), 1);
        let m = overlattice_from_isotropic(&base, &disc, nontrivial[0]).unwrap();
        assert_eq!(m.index(), 2);
        assert!(!check_m1(&m).unwrap());
        assert!(check_m2(&m).unwrap());
    }

    #[test]
    fn a15_a4_has_admissible_index_two_overlattice() {
        let base = polarized_m0(&dt("A15+A4"));
        let disc = fqm::DiscriminantGroup::new(&base.m0).unwrap();
        let iso = fqm::isotropic_subgroups(disc.form());
        let order2: Vec<_> = iso.iter().filter(|h| h.order() == 2).collect();
        assert_eq!(order2.len(), 1, "unique admissible order-2 glue");
        let m = overlattice_from_isotropic(&base, &disc, order2[0]).unwrap();
        assert_eq!(m.index(), 2);
        assert!(check_m1(&m).unwrap());
        assert!(check_m2(&m).unwrap());
        // det(M) * index^2 = det(M0)
        assert_eq!(
            m.gram().det() * BigInt::from(4),
            base.m0.gram().det()
        );
    }

    #[test]
    fn a7_glue_creates_new_roots_and_fails_m2() {
        let base = polarized_m0(&dt("A7"));
        let disc = fqm::DiscriminantGroup::new(&base.m0).unwrap();
        let iso = fqm::isotropic_subgroups(disc.form());
        let nontrivial: Vec<_> = iso.iter().filter(|h| h.order() > 1).collect();
        assert!(!nontrivial.is_empty());
        let m = overlattice_from_isotropic(&base, &disc, nontrivial[0]).unwrap();
        let roots = roots_orthogonal_to_h(&m).unwrap();
        assert!(roots.len() > 56, "glue must create extra roots");
        assert!(!check_m2(&m).unwrap());
    }

    #[test]
    fn roots_closed_under_negation_even_count() {
        let m = Overlattice::trivial(polarized_m0(&dt("A2+A1")));
        let roots = roots_orthogonal_to_h(&m).unwrap();
        assert_eq!(roots.len() % 2, 0);
        for v in &roots {
            let neg: Vec<BigRational> = v.iter().map(|c| -c).collect();
            assert!(roots.contains(&neg));
        }
    }
}

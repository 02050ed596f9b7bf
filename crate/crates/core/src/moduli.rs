//! Connected components of the moduli of maximizing sextics of a rank-19
//! Dynkin type.
//!
//! The pipeline enumerates admissible even overlattices `M` of
//! `M0 = Sigma_R(-1) ++ <h>` up to diagram symmetry, lists the rank-2 even
//! positive-definite lattices `N` whose discriminant form is anti-isometric
//! to that of `M`, and counts the orbits of the gluing set times the two
//! period components under the stabilizer of `M` and `O(N)`. Each orbit is
//! one connected component; an orbit is real when it is stable under the
//! swap of the two period components.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::binforms::{enumerate_even_classes, lattice_of, BinaryEvenForm};
use crate::dynkin::DynkinType;
use crate::error::{Error, Result};
use crate::fqm::{
    fqm_isomorphisms, induced_map, negate, subgroup_closure, DiscriminantGroup, FqmMap,
    SubgroupData,
};
use crate::lattice::{
    check_m1, check_m2, overlattice_from_isotropic, polarized_m0, Overlattice,
    PolarizedRootData,
};
use crate::linalg::{vectors_of_norm, IntMatrix};

/// The polarized automorphisms `O_{F,h}(M0)`: permutations of the
/// fundamental roots fixing `h`, generated by per-component diagram flips
/// and permutations of equal components. Isomorphic to the automorphism
/// group of the Dynkin diagram.
#[derive(Debug, Clone)]
pub struct DiagramSymmetryGroup {
    /// Full element list as permutations of the root-basis nodes.
    perms: Vec<Vec<usize>>,
    /// The same elements as matrices on the `M0` basis (h fixed, last slot).
    matrices: Vec<IntMatrix>,
    /// Induced automorphisms of the discriminant form of `M0`.
    induced: Vec<FqmMap>,
}

impl DiagramSymmetryGroup {
    pub fn order(&self) -> usize {
        self.perms.len()
    }

    pub fn permutations(&self) -> &[Vec<usize>] {
        &self.perms
    }

    pub fn matrices(&self) -> &[IntMatrix] {
        &self.matrices
    }

    pub fn induced_maps(&self) -> &[FqmMap] {
        &self.induced
    }
}

fn compose_perm(f: &[usize], g: &[usize]) -> Vec<usize> {
    // (f . g)(i) = f(g(i))
    g.iter().map(|&i| f[i]).collect()
}

fn perm_to_m0_matrix(perm: &[usize], n: usize) -> IntMatrix {
    // Column convention: column i holds the image of basis vector i.
    let mut m = IntMatrix::zero(n, n);
    for (i, &pi) in perm.iter().enumerate() {
        m.set(pi, i, num_bigint::BigInt::from(1));
    }
    m.set(n - 1, n - 1, num_bigint::BigInt::from(1));
    m
}

/// Build the diagram symmetry group of `R` together with its action on the
/// discriminant form of `M0`.
pub fn diagram_symmetries(r: &DynkinType) -> Result<DiagramSymmetryGroup> {
    let base = polarized_m0(r);
    let disc = DiscriminantGroup::new(&base.m0)?;
    diagram_symmetries_with(&base, &disc)
}

pub(crate) fn diagram_symmetries_with(
    base: &PolarizedRootData,
    disc: &DiscriminantGroup,
) -> Result<DiagramSymmetryGroup> {
    let r = &base.dynkin;
    let rank = r.rank() as usize;
    let offsets = r.block_offsets();
    let comps = r.components();

    let mut generators: Vec<Vec<usize>> = Vec::new();
    // Per-component diagram automorphisms, shifted into the global basis.
    for (c, &off) in comps.iter().zip(&offsets) {
        for local in c.diagram_automorphism_generators() {
            let mut p: Vec<usize> = (0..rank).collect();
            for (i, &pi) in local.iter().enumerate() {
                p[off + i] = off + pi;
            }
            generators.push(p);
        }
    }
    // Swaps of adjacent equal components.
    for i in 0..comps.len().saturating_sub(1) {
        if comps[i] == comps[i + 1] {
            let mut p: Vec<usize> = (0..rank).collect();
            let k = comps[i].rank() as usize;
            for t in 0..k {
                p[offsets[i] + t] = offsets[i + 1] + t;
                p[offsets[i + 1] + t] = offsets[i] + t;
            }
            generators.push(p);
        }
    }

    // Close under composition.
    let identity: Vec<usize> = (0..rank).collect();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    seen.insert(identity.clone());
    let mut queue = VecDeque::new();
    queue.push_back(identity);
    while let Some(p) = queue.pop_front() {
        for g in &generators {
            let q = compose_perm(g, &p);
            if seen.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    let perms: Vec<Vec<usize>> = seen.into_iter().collect();
    let n = base.rank();
    let matrices: Vec<IntMatrix> = perms.iter().map(|p| perm_to_m0_matrix(p, n)).collect();
    let mut induced = Vec::with_capacity(matrices.len());
    for m in &matrices {
        induced.push(induced_map(m, disc)?);
    }
    Ok(DiagramSymmetryGroup {
        perms,
        matrices,
        induced,
    })
}

/// One admissible overlattice, tagged with its diagram-symmetry orbit.
#[derive(Debug, Clone)]
pub struct MsEntry {
    pub subgroup: SubgroupData,
    pub overlattice: Overlattice,
    /// Discriminant data of the overlattice itself.
    pub disc: DiscriminantGroup,
    pub orbit_id: usize,
    pub is_orbit_representative: bool,
    pub orbit_size: usize,
    /// Indices into the diagram group of the elements fixing the glue
    /// subgroup, i.e. `O_{F,h,M}(M0)`.
    pub stabilizer: Vec<usize>,
}

/// Per-orbit summary of the gluing-times-period action.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitSummary {
    pub size: u32,
    pub real: bool,
}

/// Orbit decomposition of `Ls(M, N) x {+, -}` for one pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitReport {
    pub gluing_count: u32,
    pub orbits: Vec<OrbitSummary>,
}

impl OrbitReport {
    pub fn component_count(&self) -> u32 {
        self.orbits.len() as u32
    }
}

/// Report rows for one admissible overlattice class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MsClassReport {
    pub class_index: u32,
    /// Index `[M : M0]`.
    pub overlattice_index: u64,
    /// Canonical generators of the glue subgroup in the discriminant group
    /// of `M0`.
    pub glue_generators: Vec<Vec<i64>>,
    pub orbit_size: u32,
    pub stabilizer_order: u32,
    /// Whether `Ns(M)` is nonempty; only sharp classes carry components.
    pub sharp: bool,
    pub ns: Vec<NsFiberReport>,
}

/// One transcendental candidate `N` with its orbit decomposition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NsFiberReport {
    pub form: BinaryEvenForm,
    pub orbit_report: OrbitReport,
}

/// A pair of components over the same overlattice class carrying
/// non-isomorphic `N`: candidates for arithmetic Zariski pairs, since the
/// rank-2 invariant distinguishes their embeddings topologically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZariskiCandidate {
    pub class_index: u32,
    pub first: BinaryEvenForm,
    pub second: BinaryEvenForm,
}

/// Full component census of the moduli space of one rank-19 type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentReport {
    pub dynkin_type: String,
    pub rank: u32,
    pub classes: Vec<MsClassReport>,
    pub total_components: u32,
    pub zariski_candidates: Vec<ZariskiCandidate>,
}

/// Shared state for one Dynkin type: `M0`, its discriminant data, and the
/// diagram symmetries.
pub struct ModuliPipeline {
    base: PolarizedRootData,
    disc0: DiscriminantGroup,
    symmetries: DiagramSymmetryGroup,
}

impl ModuliPipeline {
    /// Rejects any rank other than 19: for lower ranks the classification
    /// of `Ns(M)` needs spinor genera of indefinite lattices, which is out
    /// of scope here.
    pub fn new(r: &DynkinType) -> Result<Self> {
        if r.rank() != 19 {
            return Err(Error::RankOutOfScope(r.rank()));
        }
        let base = polarized_m0(r);
        let disc0 = DiscriminantGroup::new(&base.m0)?;
        let symmetries = diagram_symmetries_with(&base, &disc0)?;
        Ok(ModuliPipeline {
            base,
            disc0,
            symmetries,
        })
    }

    pub fn base(&self) -> &PolarizedRootData {
        &self.base
    }

    pub fn symmetries(&self) -> &DiagramSymmetryGroup {
        &self.symmetries
    }

    /// Image of a glue subgroup under one diagram element.
    fn subgroup_image(&self, h: &SubgroupData, elt: usize) -> SubgroupData {
        let q0 = self.disc0.form();
        let map = &self.symmetries.induced_maps()[elt];
        let gens: Vec<Vec<i64>> = h
            .generators()
            .iter()
            .map(|g| map.apply(q0, g))
            .collect();
        subgroup_closure(q0, &gens)
    }

    /// All admissible overlattices (conditions m1 and m2), grouped into
    /// diagram-symmetry orbits, sorted by (index, glue subgroup).
    pub fn enumerate_ms(&self) -> Result<Vec<MsEntry>> {
        let q0 = self.disc0.form();
        let mut admissible: Vec<(SubgroupData, Overlattice)> = Vec::new();
        for h in crate::fqm::isotropic_subgroups(q0) {
            let m = overlattice_from_isotropic(&self.base, &self.disc0, &h)?;
            if check_m1(&m)? && check_m2(&m)? {
                admissible.push((h, m));
            }
        }
        admissible.sort_by(|(ha, _), (hb, _)| {
            (ha.order(), ha.elements()).cmp(&(hb.order(), hb.elements()))
        });

        // Orbit decomposition under the diagram group.
        let keys: Vec<Vec<Vec<i64>>> = admissible
            .iter()
            .map(|(h, _)| h.elements().to_vec())
            .collect();
        let index_of: BTreeMap<Vec<Vec<i64>>, usize> = keys
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, k)| (k, i))
            .collect();
        let mut orbit_of: Vec<Option<usize>> = vec![None; admissible.len()];
        let mut orbit_sizes: Vec<usize> = Vec::new();
        let mut reps: Vec<usize> = Vec::new();
        for i in 0..admissible.len() {
            if orbit_of[i].is_some() {
                continue;
            }
            let orbit_id = orbit_sizes.len();
            let mut members = BTreeSet::new();
            for elt in 0..self.symmetries.order() {
                let img = self.subgroup_image(&admissible[i].0, elt);
                let j = *index_of
                    .get(img.elements())
                    .expect("diagram action preserves admissibility");
                members.insert(j);
            }
            for &j in &members {
                orbit_of[j] = Some(orbit_id);
            }
            orbit_sizes.push(members.len());
            reps.push(*members.iter().next().expect("orbit is nonempty"));
        }

        let mut out = Vec::with_capacity(admissible.len());
        for (i, (h, m)) in admissible.into_iter().enumerate() {
            let stabilizer: Vec<usize> = (0..self.symmetries.order())
                .filter(|&elt| self.subgroup_image(&h, elt).elements() == h.elements())
                .collect();
            let orbit_id = orbit_of[i].expect("all entries assigned");
            let disc = DiscriminantGroup::new(&m.lattice())?;
            out.push(MsEntry {
                subgroup: h,
                overlattice: m,
                disc,
                orbit_id,
                is_orbit_representative: reps[orbit_id] == i,
                orbit_size: orbit_sizes[orbit_id],
                stabilizer,
            });
        }
        Ok(out)
    }

    /// The transcendental candidates for one class: GL2-reduced even forms
    /// of determinant `|G_M|` whose discriminant form is anti-isometric to
    /// that of `M`.
    pub fn enumerate_ns(&self, m: &MsEntry) -> Result<Vec<BinaryEvenForm>> {
        let q_m = m.disc.form();
        let neg_qm = negate(q_m);
        let d = i64::try_from(q_m.order()).expect("determinant fits i64");
        let mut out = Vec::new();
        for n in enumerate_even_classes(d) {
            let q_n = crate::fqm::discriminant_form(&lattice_of(&n))?;
            if !fqm_isomorphisms(&neg_qm, &q_n).is_empty() {
                out.push(n);
            }
        }
        Ok(out)
    }

    /// The gluing set `Ls(M, N)`: all anti-isometries from the discriminant
    /// form of `M` to that of `N`, canonically ordered.
    pub fn enumerate_ls(&self, m: &MsEntry, n: &BinaryEvenForm) -> Result<Vec<FqmMap>> {
        let q_n = crate::fqm::discriminant_form(&lattice_of(n))?;
        Ok(fqm_isomorphisms(&negate(m.disc.form()), &q_n))
    }

    /// Orbit decomposition of `Ls(M, N) x {+, -}` under the stabilizer of
    /// `M` and `O(N)`; orientation-reversing isometries of `N` swap the two
    /// period labels.
    pub fn fiber_orbits(&self, m: &MsEntry, n: &BinaryEvenForm) -> Result<OrbitReport> {
        let disc_n = DiscriminantGroup::new(&lattice_of(n))?;
        let q_n = disc_n.form().clone();
        let ls = fqm_isomorphisms(&negate(m.disc.form()), &q_n);
        if ls.is_empty() {
            return Err(Error::EmptyGluing);
        }
        let ls_index: BTreeMap<&FqmMap, usize> =
            ls.iter().enumerate().map(|(i, g)| (g, i)).collect();

        // Stabilizer action on the discriminant form of M.
        let mut stab_maps: BTreeSet<FqmMap> = BTreeSet::new();
        for &elt in &m.stabilizer {
            let g0 = &self.symmetries.matrices()[elt];
            let gm = m.overlattice.conjugate_isometry(g0)?;
            stab_maps.insert(induced_map(&gm, &m.disc)?);
        }

        // O(N) action on the discriminant form of N, tagged by whether the
        // isometry reverses orientation.
        let mut on_maps: BTreeSet<(FqmMap, bool)> = BTreeSet::new();
        for (g, det) in rank2_orthogonal_group(n)? {
            on_maps.insert((induced_map(&g, &disc_n)?, det < 0));
        }

        // Points are (gluing index, period label); the full group acts, so
        // iterating over un-inverted elements reaches the same orbits.
        let num_points = 2 * ls.len();
        let mut uf = UnionFind::new(num_points);
        for (gi, gamma) in ls.iter().enumerate() {
            for phi in &stab_maps {
                let pre = phi.then(gamma, &q_n);
                for (psi, flips) in &on_maps {
                    let post = pre.then(psi, &q_n);
                    let ti = *ls_index
                        .get(&post)
                        .expect("the action must preserve the gluing set");
                    for eps in 0..2usize {
                        let from = 2 * gi + eps;
                        let to = 2 * ti + if *flips { 1 - eps } else { eps };
                        uf.union(from, to);
                    }
                }
            }
        }

        let mut orbits: BTreeMap<usize, (u32, bool)> = BTreeMap::new();
        for p in 0..num_points {
            let root = uf.find(p);
            let entry = orbits.entry(root).or_insert((0, false));
            entry.0 += 1;
        }
        // An orbit is real when it is stable under the label swap.
        for gi in 0..ls.len() {
            let plus = uf.find(2 * gi);
            let minus = uf.find(2 * gi + 1);
            if plus == minus {
                orbits.get_mut(&plus).expect("seen").1 = true;
            }
        }
        let summaries: Vec<OrbitSummary> = orbits
            .values()
            .map(|&(size, real)| OrbitSummary { size, real })
            .collect();
        let total: u32 = summaries.iter().map(|o| o.size).sum();
        assert_eq!(total as usize, num_points, "orbit sizes must sum to 2|Ls|");
        Ok(OrbitReport {
            gluing_count: ls.len() as u32,
            orbits: summaries,
        })
    }

    /// The full census for this type.
    pub fn component_report(&self) -> Result<ComponentReport> {
        let entries = self.enumerate_ms()?;
        let mut classes = Vec::new();
        let mut total = 0u32;
        let mut candidates = Vec::new();
        let mut class_index = 0u32;
        for entry in entries.iter().filter(|e| e.is_orbit_representative) {
            let ns = self.enumerate_ns(entry)?;
            let sharp = !ns.is_empty();
            let mut fibers = Vec::new();
            for n in &ns {
                let report = self.fiber_orbits(entry, n)?;
                total += report.component_count();
                fibers.push(NsFiberReport {
                    form: *n,
                    orbit_report: report,
                });
            }
            for i in 0..ns.len() {
                for j in i + 1..ns.len() {
                    candidates.push(ZariskiCandidate {
                        class_index,
                        first: ns[i],
                        second: ns[j],
                    });
                }
            }
            classes.push(MsClassReport {
                class_index,
                overlattice_index: entry.overlattice.index(),
                glue_generators: entry.subgroup.generators().to_vec(),
                orbit_size: entry.orbit_size as u32,
                stabilizer_order: entry.stabilizer.len() as u32,
                sharp,
                ns: fibers,
            });
            class_index += 1;
        }
        Ok(ComponentReport {
            dynkin_type: self.base.dynkin.canonical_string(),
            rank: self.base.dynkin.rank(),
            classes,
            total_components: total,
            zariski_candidates: candidates,
        })
    }
}

/// All isometries of the rank-2 positive-definite lattice of `n`, found by
/// matching vectors of norm `a` and norm `c` with the right pairing; each
/// element is tagged with its determinant.
pub fn rank2_orthogonal_group(n: &BinaryEvenForm) -> Result<Vec<(IntMatrix, i64)>> {
    let gram = IntMatrix::from_rows(&[vec![n.a, n.b], vec![n.b, n.c]]);
    let zero = [
        num_rational::BigRational::from_integer(0.into()),
        num_rational::BigRational::from_integer(0.into()),
    ];
    let of_norm = |t: i64| -> Result<Vec<Vec<num_bigint::BigInt>>> {
        Ok(vectors_of_norm(&gram, &num_bigint::BigInt::from(t), &zero)?
            .into_iter()
            .map(|v| v.iter().map(|c| c.to_integer()).collect())
            .collect())
    };
    let va = of_norm(n.a)?;
    let vc = of_norm(n.c)?;
    let mut out = Vec::new();
    for u in &va {
        for w in &vc {
            // Pairing (u, w) must equal b.
            let p = &u[0] * gram.get(0, 0) * &w[0]
                + &u[0] * gram.get(0, 1) * &w[1]
                + &u[1] * gram.get(1, 0) * &w[0]
                + &u[1] * gram.get(1, 1) * &w[1];
            if p != num_bigint::BigInt::from(n.b) {
                continue;
            }
            let g = IntMatrix::from_fn(2, 2, |i, j| if j == 0 { u[i].clone() } else { w[i].clone() });
            let det = &u[0] * &w[1] - &u[1] * &w[0];
            let det = i64::try_from(det).expect("unimodular determinant");
            debug_assert!(det == 1 || det == -1);
            out.push((g, det));
        }
    }
    Ok(out)
}

/// Convenience entry point for one type string.
pub fn component_report(r: &DynkinType) -> Result<ComponentReport> {
    ModuliPipeline::new(r)?.component_report()
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

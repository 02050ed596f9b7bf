use thiserror::Error;

/// Errors surfaced by the exact-arithmetic pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not positive definite (pivot {0} is non-positive)")]
    NotPositiveDefinite(usize),
    #[error("lattice is not even")]
    OddLattice,
    #[error("degenerate lattice: Gram determinant is zero")]
    DegenerateLattice,
    #[error("invalid Dynkin component: {0}")]
    InvalidDynkin(String),
    #[error("cannot parse Dynkin type {0:?}")]
    DynkinParse(String),
    #[error("subgroup is not totally isotropic: lifted Gram is not an even integer matrix")]
    NotIsotropic,
    #[error("matrix does not preserve the Gram form")]
    NotIsometry,
    #[error("degenerate finite quadratic form")]
    DegenerateForm,
    #[error("Dynkin type has rank {0}; the moduli pipeline only covers rank 19 (below 19 the rank-2+ partner lattices are indefinite and classifying them needs spinor-genus methods)")]
    RankOutOfScope(u32),
    #[error("{0} is not a negative fundamental discriminant")]
    NotFundamental(i64),
    #[error("binary form {0:?} is not GL2-reduced")]
    NotReduced(String),
    #[error("discriminant mismatch: {0} vs {1}")]
    DiscriminantMismatch(i64, i64),
    #[error("invalid binary form: {0}")]
    InvalidForm(String),
    #[error("insufficient precision: max rounding error {0} exceeds 0.25")]
    PrecisionInsufficient(String),
    #[error("no gluing maps exist for the given pair; N is not in Ns(M)")]
    EmptyGluing,
}

pub type Result<T> = std::result::Result<T, Error>;

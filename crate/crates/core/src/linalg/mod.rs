//! Exact integer and rational matrix kernel: normal forms, definite-form
//! factorization, and bounded-norm vector enumeration.

mod enumerate;
mod matrix;
mod snf;

pub use enumerate::{rational_cholesky, vectors_of_norm};
pub use matrix::{IntMatrix, RatMatrix};
pub use snf::{hermite_solve, invariant_factors, row_hnf, smith_normal_form};

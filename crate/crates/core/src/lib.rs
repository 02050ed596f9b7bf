//! Exact-arithmetic lattice theory for the moduli of plane sextics with
//! simple singularities.
//!
//! The library computes, for a rank-19 Dynkin type `R`, the connected
//! components of the moduli space of degree-6 curves whose singularities
//! realize `R`, through the lattice side of the period correspondence for
//! the associated K3 double covers:
//!
//! * even overlattices of `Sigma_R(-1) + <h>` and their admissibility,
//! * discriminant forms, isotropic subgroups, and gluing isomorphisms,
//! * reduction and class enumeration of even positive-definite binary forms,
//! * the orbit count of gluings times period components under the
//!   polarized automorphisms, with real/non-real flags,
//! * class groups of imaginary quadratic fields, the Shioda-Mitani
//!   transcendental-lattice assignment, and Hilbert class polynomials.
//!
//! All lattice arithmetic is exact; floating point never enters the
//! component counts. The Hilbert class polynomial evaluator uses exact
//! integer q-expansion coefficients and fixed-point big arithmetic with a
//! reported rounding bound.

pub mod binforms;
pub mod cm;
pub mod dynkin;
pub mod error;
pub mod fqm;
pub mod lattice;
pub mod linalg;
pub mod moduli;

pub use error::{Error, Result};

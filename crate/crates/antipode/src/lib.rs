//! Symbolic kernel for finitely presented pointed Hopf algebras.
//!
//! The crate verifies Hopf-algebra axioms for a presentation (generators,
//! rewrite rules, structure maps), computes skew-primitive spaces and the
//! conjugation invariant m_H, and determines the order of the antipode —
//! returning machine-checkable certificates when that order is infinite.
//!
//! Everything is exact: coefficients live in one of four supported fields
//! (rationals, prime fields, rational functions, cyclotomic fields) and all
//! linear algebra is over those fields, so every reported identity is an
//! identity, not a numerical observation.

pub mod cli;
pub mod document;
pub mod error;
pub mod families;
pub mod hopf;
pub mod linalg;
pub mod ncpoly;
pub mod order;
pub mod parse;
pub mod rewrite;
pub mod scalar;
pub mod structure;
pub mod upoly;

pub use error::KernelError;

//! Exact computations for abelian Coulomb branch algebras (hypertoric
//! enveloping algebras), their weight modules built from Springer fibres,
//! and the fixed-point combinatorics of quiver gauge theories.
//!
//! All arithmetic is exact: coefficients are arbitrary precision rationals
//! and lattice questions are decided by integer enumeration or exact
//! Fourier-Motzkin elimination.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod lattice;
pub mod modules;
pub mod parse;
pub mod poly;
pub mod quiver;

pub use algebra::{AlgebraElement, Specialization};
pub use error::{Error, Result};
pub use lattice::{Sign, SupportPolytope, TorusDatum};
pub use modules::{
    ClassificationResult, Flavor, Label, ModuleSignature, ModuleVector, VermaStatus,
};
pub use poly::{GTPoly, Var};

/// Exact rational scalar used throughout.
pub type Rational = num::BigRational;

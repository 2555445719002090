//! Exact classification of 2-dimensional algebras.
//!
//! An algebra is a bilinear multiplication on a 2-dimensional space, given by
//! eight structure constants in a fixed basis `{e1, e2}`. This crate computes
//! with those constants exactly over ℚ and over prime fields `F_p`:
//!
//! * [`field`]: exact scalars, square tests, quadratic and cubic roots.
//! * [`algebra`]: the data model, the change-of-basis action, skew and
//!   symmetric parts, idempotents and structural predicates.
//! * [`iso`]: brute-force isomorphism and orbit enumeration over small fields,
//!   plus isomorphism-invariant fingerprints.
//! * [`f2`]: the permutation model of basis changes over `F_2` and the full
//!   orbit census of the 256 algebras.
//! * [`reduction`]: the normal-form classifier over fields of odd or zero
//!   characteristic, with an explicit basis-change witness.
//! * [`jordan`]: exact Jordan-identity checks and the catalog of
//!   2-dimensional Jordan algebras.

pub mod algebra;
pub mod errata;
pub mod error;
pub mod f2;
pub mod field;
pub mod formulas;
pub mod io;
pub mod iso;
pub mod jordan;
mod linalg;
pub mod reduction;

pub use algebra::{Algebra, BasisChange, IdempotentSet, StructuralPredicates, Vector2};
pub use error::{Error, Result};
pub use field::{FieldError, FieldSpec, Scalar};
pub use iso::{InvariantFingerprint, IsoWitness};
pub use reduction::{ClassLabel, Family, ReductionTrace};

//! Exact computations with the split octonions, their derivation algebra of
//! type G₂, and gradings of both by finite abelian groups.
//!
//! The modules build on each other bottom-up:
//!
//! - [`scalar`]: rationals, cyclotomic fields, matrices and subspaces;
//! - [`abelian`]: finite abelian groups, characters and automorphisms;
//! - [`octonion`]: the split octonions in the standard basis;
//! - [`derivations`]: the Lie algebra `Der(C)`;
//! - [`grading`]: gradings of `C` and `Der(C)` and the canonical families;
//! - [`classify`]: recognizing the family of a grading and comparing gradings;
//! - [`io`]: the JSON interchange formats.

pub mod abelian;
pub mod algebra;
pub mod classify;
pub mod derivations;
pub mod grading;
pub mod io;
pub mod octonion;
pub mod scalar;

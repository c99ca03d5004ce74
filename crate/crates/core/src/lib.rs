//! Exact tests for unitarity of spherical modules of graded affine Hecke
//! algebras of split groups.
//!
//! The crate is organised bottom-up:
//!
//! * [`rational`] and [`linalg`]: exact rational helpers and signature
//!   certification (LDLᵀ with 1×1/2×2 pivots, characteristic polynomials).
//! * [`rootsys`]: root data, Weyl group enumeration, dominance.
//! * [`heckeops`]: the long intertwining operator on `C[W]` and its
//!   normalisation.
//! * [`wrep`]: conjugacy classes, character tables, per-W-type signatures.
//! * [`strings`]: string (multisegment) decomposition of classical parameters.
//! * [`regions`]: complementary-series region data and the unitarity tables.
//! * [`ramified`]: sign characters `δ`, good roots, R-groups and the extended
//!   operator.

pub mod error;
pub mod heckeops;
pub mod linalg;
pub mod ramified;
pub mod rational;
pub mod regions;
pub mod rootsys;
pub mod strings;
pub mod wrep;

pub use error::{Error, Result};
pub use rational::Q;

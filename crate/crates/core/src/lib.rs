//! Anticanonical complexes and Gorenstein indices of Fano general
//! arrangement varieties, computed with exact arithmetic.
//!
//! The pipeline runs bottom-up:
//!
//! * [`arrangement`] validates the defining data `(A, P)`, presents the
//!   class group and finds the Fano fan `Σ(−K)`;
//! * [`tropical`] describes the leaves of the tropical variety and prunes
//!   fans to the minimal ambient toric variety;
//! * [`acomplex`] refines the fan along the tropical variety, truncates
//!   each piece at its anticanonical support function and reads off the
//!   Gorenstein index twice (lattice distances, per-cone Cartier indices);
//! * [`classify`] enumerates candidate Fano threefolds of the five
//!   parametrised families at a fixed Gorenstein index.

pub mod acomplex;
pub mod arrangement;
pub mod classify;
pub mod cli;
pub mod error;
pub mod exactla;
pub mod polyhedra;
pub mod tropical;

pub use error::{Error, Result};

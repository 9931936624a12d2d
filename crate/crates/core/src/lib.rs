//! Exact Bott-Borel-Weil cohomology along classical group towers.
//!
//! The crate computes, level by level in a chain of classical groups
//! (`SL(n) ⊂ SL(n+1)`, `SO(n) ⊂ SO(n+1)`, `Sp(2n) ⊂ Sp(2n+2)`, or a diagonal
//! type-A chain), the cohomology of homogeneous line/vector bundles via the
//! dot action, decides integrability criteria for the duals of limit
//! highest-weight modules, and enumerates the possible direct-sum
//! decompositions of limit cohomology for filtered bundles.
//!
//! All arithmetic is exact: weight coordinates are half-integers stored as
//! integer numerators over the fixed denominator 2, and dimensions are
//! arbitrary-precision integers. There is no floating point anywhere.
//!
//! Every operation is a pure function of its inputs; all values are
//! immutable after construction, so unrestricted concurrent use is safe.
//!
//! The crate is `no_std`-compatible (with `alloc`); the companion CLI crate
//! carries IO, the problem-file format, and the report format.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

mod error;
mod half;

pub mod bbw;
pub mod branching;
pub mod decomposer;
pub mod families;
pub mod integrability;
pub mod weights;
pub mod weyl;

pub use error::Error;
pub use half::Half;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

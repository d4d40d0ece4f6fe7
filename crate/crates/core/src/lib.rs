//! Exact-arithmetic library for the stratification of moduli spaces of
//! stable bundles on the projective plane by the Betti data of their
//! minimal free resolutions.
//!
//! The crate computes, entirely in integers:
//!
//! - admissibility and arithmetic stability conditions of resolution pairs
//!   ([`pairs`]);
//! - cohomology of line bundles and of the general bundle presented by a
//!   pair ([`cohom`]);
//! - stratum dimensions and codimensions, the unique natural pair of given
//!   Chern data, bounded enumeration of all admissible pairs, and the
//!   uniqueness-of-codimension-zero certificate ([`strata`]);
//! - explicit banded presentation matrices over a prime field with a
//!   deterministic pointwise rank check ([`resolution`]).
//!
//! The crate is `no_std` (with `alloc`); IO, serialization and the command
//! line live in the companion CLI crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod cohom;
pub mod pairs;
pub mod resolution;
pub mod strata;

pub use num_rational::Ratio;

pub use cohom::{CohomError, CohomologyRow, CohomologyTable};
pub use pairs::{AdmissibilityClass, ChernData, Pair, PairError, Rank2Stability};
pub use resolution::{
    BandEntry, BandedMatrix, BuildMode, DegreeTable, FormSystem, RankReport, ResolutionError,
};
pub use strata::{NaturalPairParams, StrataError, StratumRecord, UniquenessReport};

//! Exact combinatorics for complete toric varieties.
//!
//! The crate covers integer lattices and normal forms, fans and their torus
//! orbits, isogenies between toric varieties sharing a fan, subdivisions and
//! toric resolutions, invariant divisors with Fano-type certificates, and
//! rational curves written in Cox coordinates. [`plan`] assembles these into
//! auditable proof scaffolds and [`document`] fixes the JSON formats used by
//! the `torickit` binary.

#![allow(clippy::needless_range_loop)]

pub mod citations;
pub mod curve;
pub mod divisor;
pub mod document;
pub mod error;
pub mod fan;
pub mod geometry;
pub mod isogeny;
pub mod lattice;
pub mod linalg;
pub mod numbers;
pub mod plan;
pub mod poly;
pub mod refine;

pub use error::{Error, Result};
pub use fan::{Cone, Fan, OrbitDescriptor};
pub use lattice::{IntegerMatrix, SnfResult, SublatticeBasis};

//! A numerical laboratory for non-elliptic one-parameter semigroups of
//! holomorphic self-maps of the unit disk.
//!
//! The crate builds semigroups from explicit Koenigs functions, computes
//! orbits by Newton continuation, and measures how fast orbits approach
//! the Denjoy–Wolff point in Euclidean distance, hyperbolic distance and
//! harmonic measure, checking the fitted rates against the bracket bounds
//! the underlying theory prescribes for finite- and infinite-shift
//! semigroups.
//!
//! Module map:
//! - [`complex`]: principal-branch arithmetic and Cayley correspondences;
//! - [`hypgeo`]: exact hyperbolic distances (disk, half-plane, sector);
//! - [`models`]: the six-model catalog and the sector-inclusion probe;
//! - [`orbits`]: Newton orbit computation with per-sample metrics;
//! - [`harmonic`]: exact harmonic measure and walk-on-spheres estimates;
//! - [`rates`]: least-squares rate fits and bracket verdicts;
//! - [`verify`]: the acceptance suite shared by the CLI and the tests.

// negated comparisons like `!(x > 0.0)` are load-bearing: they reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod complex;
pub mod error;
pub mod harmonic;
pub mod hypgeo;
pub mod models;
pub mod orbits;
pub mod rates;
pub mod report;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64;

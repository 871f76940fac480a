//! Exact cohomology on Hirzebruch surfaces and the extendability calculus for
//! K3 carpets.
//!
//! All arithmetic is arbitrary precision. Line-bundle cohomology is exact;
//! rank-two bundles go through [`les`] and come back as intervals whenever a
//! connecting map is not forced by dimensions.

pub mod anchors;
pub mod classification;
pub mod cohomology;
pub mod conditions;
pub mod error;
pub mod extendability;
pub mod interval;
pub mod lemmas;
pub mod les;
pub mod repro;
pub mod rules;
pub mod scan;
pub mod surface;

pub use cohomology::{cohomology, euler_char, CohomologyDims, SplitBundle};
pub use error::{Error, Result};
pub use interval::Interval;
pub use surface::{DivisorClass, HirzebruchSurface};

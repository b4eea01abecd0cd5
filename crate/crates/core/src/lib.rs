//! Exact toolkit for intersecting set families.
//!
//! * [`family`]: bitset families over `[n]`, validity, intersection spectra
//!   and the common-element / hitting-pair predicates.
//! * [`bounds`]: exact big-integer evaluation of the classical and uniform
//!   intersecting-family bounds with their hypotheses.
//! * [`constructions`]: projective planes, biplanes, residuals, Steiner
//!   augmentation and the mixed-size counterexample, plus design checks.
//! * [`search`]: exact maximum families by clique branch and bound, the
//!   triple cover, and threshold scans.
//! * [`cli`]: the `setfam` command line.

pub mod bounds;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod family;
pub mod search;

pub use error::{Error, Result};
pub use family::{IntersectionConstraint, SetFamily, SubsetBits};

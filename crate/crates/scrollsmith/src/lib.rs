//! Smoothness classification, enumeration, and randomized finite-field
//! verification for pencils of fiberwise quadrics on fivefold scrolls over
//! the projective line.
//!
//! The library has four layers:
//!
//! * [`scroll`] — the integer parameter model: canonicalization, coefficient
//!   degree grids, base loci, Euler characteristics, rationality verdicts.
//! * [`criterion`] — the 25-case smoothness table as a total decision
//!   procedure on parameters.
//! * [`enumerate`] — bounded exhaustive searches: families by Euler
//!   characteristic, standardness filtering, per-case realizability, and
//!   deterministic atlas export.
//! * [`oracle`] — an independent randomized check: samples concrete quadric
//!   pencils over a prime field and decides the two smoothness conditions
//!   directly with exact polynomial algebra from [`polyalg`].

pub mod criterion;
pub mod enumerate;
pub mod oracle;
pub mod polyalg;
pub mod scroll;

pub use criterion::{classify, matching_cases, CaseId, Classification, CriterionOptions};
pub use enumerate::{enumerate_by_chi, is_standard, realizability_sweep, SearchBounds};
pub use scroll::{BaseLocus, Rationality, RationalityVerdict, ScrollParams};

//! Randomized verification of smoothness verdicts on concrete pencils.

pub mod sample;

pub use sample::PencilInstance;

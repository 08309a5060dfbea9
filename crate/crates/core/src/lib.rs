//! Exact sphere volumes, Singleton-like and sphere-packing bounds, and
//! non-existence criteria for linear perfect codes in the sum-rank metric.
//!
//! Every quantity is an exact integer or rational; nothing goes through
//! floating point.

pub mod bounds;
pub mod error;
pub mod exact;
pub mod field;
pub mod oracle;
pub mod rules;
pub mod tables;
pub mod volume;

pub use error::{Error, Result};
pub use exact::{ExactInt, PrimePowerField};
pub use oracle::{GeneratorSet, WeightDistribution};
pub use rules::{Conclusion, ParamSet, RuleVerdict};
pub use tables::{TableEntry, TableStatus};
pub use volume::BlockProfile;

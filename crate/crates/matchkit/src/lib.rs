//! Exact combinatorics of perfect matchings of [2n] under the pattern
//! order: containment search, pruned avoider enumeration, formal power
//! series identities, the ternary-tree bijection, and poset intervals.

pub mod bijection;
pub mod count;
pub mod enumerate;
pub mod error;
pub mod formulas;
pub mod interval;
pub mod matching;
pub mod numbers;
pub mod pattern;
pub mod series;

pub use error::{Error, Result};
pub use matching::{Edge, Matching};
pub use pattern::{avoids, avoids_all, contains, occurrences, UnlabeledMatching};
pub use series::PowerSeries;

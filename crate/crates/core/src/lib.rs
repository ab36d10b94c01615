//! Verification lab for a Rogers–Ramanujan-type identity on colored
//! overpartitions: the level-raising bijection, exhaustive enumeration of
//! the constrained families, and exact truncated products.

pub mod bijection;
pub mod cli;
pub mod color;
pub mod enumerate;
pub mod io;
pub mod partition;
pub mod predicates;
pub mod qseries;

pub use bijection::{fold_full, merge_one_level, split_one_level, unfold_full, CheckedMode};
pub use color::{Color, Level};
pub use partition::{ColoredPart, DistinctPartition, Overpartition};
pub use predicates::{check_membership, Family, FamilyKind};

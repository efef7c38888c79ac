//! Latency-bounded target set selection.
//!
//! * [`activation`]: the threshold activation process and problem instances.
//! * [`kexpr`]: k-expressions (parse, print, evaluate, irredundancy, lifting,
//!   family generators).
//! * [`cwd`]: the exact dynamic program over k-expressions for the
//!   budget/requirement and budget/target-set variants.
//! * [`tree`]: the linear-time exact solver for the target-set variant on
//!   trees.
//! * [`oracle`]: exhaustive solvers used as ground truth.

pub mod activation;
pub mod cwd;
pub mod error;
pub mod graph;
pub mod kexpr;
pub mod oracle;
pub mod random;
pub mod tree;

pub use activation::{simulate, verify_solution, ActivationTrace, Instance, Variant};
pub use error::{Error, Result};
pub use graph::{normalize_thresholds, Graph, Thresholds};

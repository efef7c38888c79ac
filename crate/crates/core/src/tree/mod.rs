//! Exact linear-time solver for the target-set variant on trees and
//! forests.
//!
//! Vertices are processed children-first. Each vertex records the round it
//! would activate from its own subtree (`time`) and how long a chain of
//! descendants depends on it (`path`); a target is seeded only when neither
//! its children nor its parent can activate it in time.

mod audit;
mod rooted;
mod solve;

pub use audit::{audit, NodeAudit};
pub use rooted::{root_and_order, select_tth_smallest, RootedTree};
pub use solve::{solve, solve_detailed, TreeNodeState, TreeOptions, TreeSolution};

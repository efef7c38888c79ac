//! Exact dynamic program over k-expressions.
//!
//! `γ_H(α, r)` asks whether the labeled graph `H` of a subexpression admits
//! an activation process in which `α[i,ℓ]` vertices of label ℓ become active
//! at round `i`, when every label-ℓ vertex already gets `r[i,ℓ]` of its
//! threshold in round `i` from neighbors outside `H`. Queries are answered
//! top-down from the root with memoization, so only reachable pairs are ever
//! computed.

mod cases;
mod matrix;
mod solver;
mod verify;

pub use cases::{eta_reduction, gamma_eta, gamma_leaf, gamma_rho, gamma_union, leaf_round};
pub use matrix::{AlphaMatrix, RMatrix};
pub use solver::{
    decide, decide_targets, min_target_set, select, select_targets, CwdSolver, GammaEntry,
    GammaTable, TargetSolver, Witness, WitnessFailure,
};
pub use verify::verify_ar_process;

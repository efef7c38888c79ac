//! Reference values for the solver's per-vertex state, computed directly
//! from activation runs on each subtree.

use super::rooted::RootedTree;
use crate::activation::simulate;
use crate::error::Result;
use crate::graph::{Graph, Thresholds};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NodeAudit {
    /// Activation round of `v` when only `S ∩ T(v)` is seeded inside `T(v)`;
    /// `None` if `v` never activates there.
    pub time_star: Option<usize>,
    pub path_star: i64,
    pub max_path_star: usize,
    /// `|Active_{T(v)}[S, λ - maxPath*(v) - 1] ∩ C(v)|`, 0 when the round is
    /// negative.
    pub act_star: usize,
}

impl NodeAudit {
    /// `time_star` in the solver's capped encoding.
    pub fn capped_time(&self, lambda: usize) -> usize {
        self.time_star.map_or(lambda + 1, |t| t.min(lambda + 1))
    }
}

/// Audit values for every vertex, with the forest rooted as the solver
/// roots it. Thresholds are normalized and `lambda` is capped at `n`, like
/// the solver does.
pub fn audit(
    tree: &Graph,
    thresholds: &Thresholds,
    lambda: usize,
    seeds: &[usize],
    targets: &[usize],
    root: Option<usize>,
) -> Result<Vec<NodeAudit>> {
    let rooted = RootedTree::forest(tree, root)?;
    let t = thresholds.normalize(tree);
    let n = tree.n();
    let lambda = lambda.min(n);
    let mut in_x = vec![false; n];
    for &s in seeds {
        tree.check_vertex(s)?;
        in_x[s] = true;
    }
    let mut in_a = vec![false; n];
    for &v in targets {
        tree.check_vertex(v)?;
        in_a[v] = true;
    }

    let mut out = vec![NodeAudit { time_star: None, path_star: -1, max_path_star: 0, act_star: 0 }; n];
    for &v in rooted.order() {
        let sub = rooted.subtree(v);
        let mut local = vec![usize::MAX; n];
        for (i, &w) in sub.iter().enumerate() {
            local[w] = i;
        }
        let h = tree.induced_subgraph(&sub);
        let ht = Thresholds::new(sub.iter().map(|&w| t.get(w)).collect());
        let hseed: Vec<usize> = sub.iter().filter(|&&w| in_x[w]).map(|&w| local[w]).collect();
        // Run to the fixpoint: every productive round activates someone.
        let trace = simulate(&h, &ht, &hseed, sub.len())?;

        let children = rooted.children(v);
        let time_star = trace.activation_round(0);
        let max_path_star = children
            .iter()
            .map(|&u| out[u].path_star)
            .max()
            .map_or(0, |p| (1 + p) as usize);
        let act_star = match (lambda as i64) - max_path_star as i64 - 1 {
            round if round < 0 => 0,
            round => children.iter().filter(|&&u| trace.is_active(local[u], round as usize)).count(),
        };
        let tv = t.get(v) as i64;
        let path_star = if in_x[v] {
            -1
        } else if children.is_empty() {
            // Only a threshold-1 target leaf leans on its parent; the root
            // of a one-vertex component has no parent to lean on.
            if in_a[v] && tv == 1 && rooted.parent(v).is_some() {
                0
            } else {
                -1
            }
        } else if max_path_star < lambda && act_star as i64 == tv - 1 && (in_a[v] || max_path_star > 0) {
            max_path_star as i64
        } else {
            -1
        };
        out[v] = NodeAudit { time_star, path_star, max_path_star, act_star };
    }
    Ok(out)
}

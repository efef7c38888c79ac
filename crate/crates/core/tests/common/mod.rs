#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tss_core::kexpr::{evaluate, path_expression, star_expression, tree_expression, KExpr};
use tss_core::random::{random_subset, random_tree, thresholds_extended, thresholds_within_degree};
use tss_core::{Graph, Thresholds};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone)]
pub struct TreeCase {
    pub graph: Graph,
    pub thresholds: Thresholds,
    pub lambda: usize,
    pub targets: Vec<usize>,
}

/// Random trees with n in [2,12], thresholds uniform in [1,d(v)], each
/// vertex a target with probability 1/2, λ uniform in [1,n].
pub fn tree_corpus(count: usize, seed: u64) -> Vec<TreeCase> {
    let mut rng = rng(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(2..=12);
            let graph = random_tree(&mut rng, n);
            let thresholds = thresholds_within_degree(&mut rng, &graph);
            let targets = random_subset(&mut rng, n, 0.5);
            let lambda = rng.gen_range(1..=n);
            TreeCase { graph, thresholds, lambda, targets }
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct ExprCase {
    pub name: String,
    pub expr: KExpr,
    pub graph: Graph,
}

impl ExprCase {
    fn new(name: String, expr: KExpr) -> Self {
        let graph = evaluate(&expr).graph;
        ExprCase { name, expr, graph }
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }
}

/// Paths and stars on 1..=6 vertices plus `trees_per_size` random trees for
/// each size 2..=6, every expression of width at most 3.
pub fn expression_corpus(trees_per_size: usize, seed: u64) -> Vec<ExprCase> {
    let mut rng = rng(seed);
    let mut out = Vec::new();
    for n in 1..=6 {
        out.push(ExprCase::new(format!("path{n}"), path_expression(n)));
        out.push(ExprCase::new(format!("star{n}"), star_expression(n)));
    }
    for n in 2..=6 {
        for i in 0..trees_per_size {
            let tree = random_tree(&mut rng, n);
            let root = rng.gen_range(0..n);
            let expr = tree_expression(&tree, root).expect("tree");
            out.push(ExprCase::new(format!("tree{n}.{i}"), expr));
        }
    }
    out
}

/// The two threshold regimes exercised on each expression: within degree,
/// and the full normalized range including 0 and d+1.
pub fn threshold_regimes(graph: &Graph, rng: &mut ChaCha8Rng) -> Vec<(&'static str, Thresholds)> {
    vec![
        ("degree", thresholds_within_degree(rng, graph)),
        ("extended", thresholds_extended(rng, graph)),
    ]
}

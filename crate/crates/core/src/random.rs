//! Seeded random instances for tests, benchmarks and the command line.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{Graph, Thresholds};

/// A uniformly random labeled tree on `n` vertices, from a random Prüfer
/// sequence.
pub fn random_tree<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Graph {
    assert!(n > 0, "a tree needs a vertex");
    if n <= 2 {
        let edges: Vec<_> = (1..n).map(|i| (0, i)).collect();
        return Graph::new(n, &edges).expect("valid tree");
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &v in &seq {
        degree[v] += 1;
    }
    let mut leaves: std::collections::BTreeSet<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &v in &seq {
        let leaf = leaves.pop_first().expect("a leaf remains");
        edges.push((leaf, v));
        degree[v] -= 1;
        if degree[v] == 1 {
            leaves.insert(v);
        }
    }
    let rest: Vec<usize> = leaves.into_iter().collect();
    edges.push((rest[0], rest[1]));
    Graph::new(n, &edges).expect("valid tree")
}

/// An Erdős–Rényi graph with edge probability `p`.
pub fn random_graph<R: Rng + ?Sized>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges).expect("valid graph")
}

/// Thresholds uniform in `[1, d(v)]` (1 for isolated vertices).
pub fn thresholds_within_degree<R: Rng + ?Sized>(rng: &mut R, graph: &Graph) -> Thresholds {
    Thresholds::new((0..graph.n()).map(|v| rng.gen_range(1..=graph.degree(v).max(1)) as u32).collect())
}

/// Thresholds uniform in `[0, d(v) + 1]`, covering every normalized value.
pub fn thresholds_extended<R: Rng + ?Sized>(rng: &mut R, graph: &Graph) -> Thresholds {
    Thresholds::new((0..graph.n()).map(|v| rng.gen_range(0..=graph.degree(v) + 1) as u32).collect())
}

/// Each vertex independently with probability `p`, sorted.
pub fn random_subset<R: Rng + ?Sized>(rng: &mut R, n: usize, p: f64) -> Vec<usize> {
    (0..n).filter(|_| rng.gen_bool(p)).collect()
}

/// A uniformly random permutation of `0..n`.
pub fn permutation<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_trees_are_trees() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..40 {
            let g = random_tree(&mut rng, n);
            assert!(g.is_tree(), "n = {n}");
        }
    }

    #[test]
    fn thresholds_stay_in_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let g = random_graph(&mut rng, 15, 0.3);
        let t = thresholds_within_degree(&mut rng, &g);
        let e = thresholds_extended(&mut rng, &g);
        for v in 0..15 {
            assert!(t.get(v) >= 1 && t.get(v) as usize <= g.degree(v).max(1));
            assert!(e.get(v) as usize <= g.degree(v) + 1);
        }
    }
}

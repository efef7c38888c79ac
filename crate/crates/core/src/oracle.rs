//! Exhaustive solvers used as ground truth.
//!
//! These share nothing with the other solvers: the activation process is
//! re-implemented on bitmasks and candidate seed sets are enumerated by
//! increasing size, lexicographically within a size.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::graph::{Graph, Thresholds};

pub const DEFAULT_LIMIT: usize = 20;

/// Bitmask view of one instance.
#[derive(Debug, Clone)]
pub struct BruteForce {
    n: usize,
    neighbors: Vec<u64>,
    thresholds: Vec<u32>,
}

impl BruteForce {
    pub fn new(graph: &Graph, thresholds: &Thresholds) -> Result<Self> {
        Self::with_limit(graph, thresholds, DEFAULT_LIMIT)
    }

    /// `limit` is capped at 64, the mask width.
    pub fn with_limit(graph: &Graph, thresholds: &Thresholds, limit: usize) -> Result<Self> {
        let n = graph.n();
        let limit = limit.min(64);
        if n > limit {
            return Err(Error::SizeLimit { n, limit });
        }
        if thresholds.len() != n {
            return Err(Error::ThresholdCount { expected: n, got: thresholds.len() });
        }
        let neighbors = (0..n)
            .map(|v| graph.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
            .collect();
        Ok(BruteForce { n, neighbors, thresholds: thresholds.as_slice().to_vec() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `Active[S, λ]` as a mask.
    pub fn active(&self, seed: u64, lambda: usize) -> u64 {
        let mut act = seed;
        for _ in 0..lambda {
            let mut next = act;
            for v in 0..self.n {
                if act & (1 << v) == 0 && (self.neighbors[v] & act).count_ones() >= self.thresholds[v] {
                    next |= 1 << v;
                }
            }
            if next == act {
                break;
            }
            act = next;
        }
        act
    }

    /// First seed set (by size, then lexicographically) of size at most
    /// `max_size` accepted by `ok`.
    fn search(&self, max_size: usize, mut ok: impl FnMut(u64) -> bool) -> Option<Vec<usize>> {
        for size in 0..=max_size.min(self.n) {
            for combo in (0..self.n).combinations(size) {
                let mask = combo.iter().fold(0u64, |m, &v| m | 1 << v);
                if ok(mask) {
                    return Some(combo);
                }
            }
        }
        None
    }

    fn mask_of(&self, vertices: &[usize]) -> Result<u64> {
        vertices.iter().try_fold(0u64, |m, &v| {
            if v >= self.n {
                Err(Error::VertexOutOfRange { vertex: v, n: self.n })
            } else {
                Ok(m | 1 << v)
            }
        })
    }

    pub fn min_target(&self, lambda: usize, targets: &[usize]) -> Result<Vec<usize>> {
        let want = self.mask_of(targets)?;
        Ok(self
            .search(self.n, |s| self.active(s, lambda) & want == want)
            .expect("seeding the targets is feasible"))
    }

    /// Minimum seed set when the process may run to its fixpoint.
    pub fn min_target_unbounded(&self, targets: &[usize]) -> Result<Vec<usize>> {
        self.min_target(self.n, targets)
    }

    /// A seed set of size at most `beta` activating at least `requirement`
    /// vertices, if one exists.
    pub fn decision(&self, lambda: usize, beta: usize, requirement: usize) -> Option<Vec<usize>> {
        self.search(beta, |s| self.active(s, lambda).count_ones() as usize >= requirement)
    }

    /// A minimum seed set covering `targets`, if its size is at most `beta`.
    pub fn select_targets(&self, lambda: usize, beta: usize, targets: &[usize]) -> Result<Option<Vec<usize>>> {
        let want = self.mask_of(targets)?;
        Ok(self.search(beta, |s| self.active(s, lambda) & want == want))
    }
}

pub fn brute_min_target(graph: &Graph, thresholds: &Thresholds, lambda: usize, targets: &[usize]) -> Result<Vec<usize>> {
    BruteForce::new(graph, thresholds)?.min_target(lambda, targets)
}

pub fn brute_min_target_unbounded(graph: &Graph, thresholds: &Thresholds, targets: &[usize]) -> Result<Vec<usize>> {
    BruteForce::new(graph, thresholds)?.min_target_unbounded(targets)
}

/// `Some(witness)` when the decision is yes.
pub fn brute_decision(
    graph: &Graph,
    thresholds: &Thresholds,
    lambda: usize,
    beta: usize,
    requirement: usize,
) -> Result<Option<Vec<usize>>> {
    Ok(BruteForce::new(graph, thresholds)?.decision(lambda, beta, requirement))
}

pub fn brute_select_a(
    graph: &Graph,
    thresholds: &Thresholds,
    lambda: usize,
    beta: usize,
    targets: &[usize],
) -> Result<Option<Vec<usize>>> {
    BruteForce::new(graph, thresholds)?.select_targets(lambda, beta, targets)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::new(n, &edges).unwrap()
    }

    #[test]
    fn min_target_examples() {
        let p3 = path(3);
        let t = Thresholds::new(vec![1, 2, 1]);
        assert_eq!(brute_min_target(&p3, &t, 1, &[]).unwrap(), vec![]);
        assert_eq!(brute_min_target(&p3, &t, 1, &[0, 1, 2]).unwrap(), vec![1]);
        let p6 = path(6);
        let all: Vec<_> = (0..6).collect();
        assert_eq!(brute_min_target(&p6, &Thresholds::uniform(6, 1), 5, &all).unwrap().len(), 1);
    }

    #[test]
    fn decision_examples() {
        let p2 = path(2);
        let t = Thresholds::uniform(2, 1);
        assert_eq!(brute_decision(&p2, &t, 1, 1, 2).unwrap(), Some(vec![0]));
        assert_eq!(brute_decision(&p2, &t, 0, 1, 2).unwrap(), None);
        assert!(brute_decision(&p2, &t, 0, 2, 2).unwrap().is_some());
    }

    #[test]
    fn select_a_examples() {
        let p3 = path(3);
        let t = Thresholds::new(vec![1, 2, 1]);
        assert_eq!(brute_select_a(&p3, &t, 1, 0, &[0, 1, 2]).unwrap(), None);
        assert_eq!(brute_select_a(&p3, &t, 1, 3, &[]).unwrap(), Some(vec![]));
        assert_eq!(brute_select_a(&p3, &t, 1, 3, &[0, 2]).unwrap(), Some(vec![1]));
    }

    #[test]
    fn zero_threshold_is_round_one() {
        let g = Graph::empty(2);
        let b = BruteForce::new(&g, &Thresholds::new(vec![0, 1])).unwrap();
        assert_eq!(b.active(0, 0), 0);
        assert_eq!(b.active(0, 1), 0b01);
    }

    #[test]
    fn size_guard() {
        let g = Graph::empty(21);
        assert_eq!(
            BruteForce::new(&g, &Thresholds::uniform(21, 1)).unwrap_err(),
            Error::SizeLimit { n: 21, limit: 20 }
        );
        assert!(BruteForce::with_limit(&g, &Thresholds::uniform(21, 1), 30).is_ok());
    }
}

use super::rooted::{select_tth_smallest, RootedTree};
use crate::error::{Error, Result};
use crate::graph::{Graph, Thresholds};

/// Per-vertex values computed by the solver.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreeNodeState {
    /// Round at which the vertex activates from its own subtree alone,
    /// capped at `λ + 1` (read as never).
    pub time: usize,
    /// Length of the longest chain of descendants relying on this vertex,
    /// or -1 if the parent is not needed for this vertex's activation.
    pub path: i64,
    pub max_path: usize,
    /// Children active strictly before round `λ - max_path`.
    pub act_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeSolution {
    /// The seed set, sorted.
    pub seeds: Vec<usize>,
    pub states: Vec<TreeNodeState>,
    /// Vertices the solver committed to activate: the targets plus every
    /// parent recruited to help a child.
    pub in_a_prime: Vec<bool>,
    pub lambda: usize,
}

impl TreeSolution {
    /// The `time` value that stands for "never".
    pub fn infinity(&self) -> usize {
        self.lambda + 1
    }

    /// `min{λ - maxPath(v), time(v)}`: the round by which `v` is guaranteed
    /// active when it is in the committed set.
    pub fn deadline(&self, v: usize) -> usize {
        let s = self.states[v];
        (self.lambda - s.max_path.min(self.lambda)).min(s.time)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TreeOptions {
    /// Reject thresholds outside `[1, d(v)]` and `λ = 0` instead of
    /// handling them.
    pub strict: bool,
    /// Root of the component containing it; other components are rooted at
    /// their smallest vertex. Defaults to vertex 0.
    pub root: Option<usize>,
}

/// A minimum seed set activating every target within `lambda` rounds on a
/// forest.
pub fn solve(tree: &Graph, thresholds: &Thresholds, lambda: usize, targets: &[usize]) -> Result<Vec<usize>> {
    Ok(solve_detailed(tree, thresholds, lambda, targets, TreeOptions::default())?.seeds)
}

pub fn solve_detailed(
    tree: &Graph,
    thresholds: &Thresholds,
    lambda: usize,
    targets: &[usize],
    options: TreeOptions,
) -> Result<TreeSolution> {
    let n = tree.n();
    if thresholds.len() != n {
        return Err(Error::ThresholdCount { expected: n, got: thresholds.len() });
    }
    let mut in_a = vec![false; n];
    for &v in targets {
        tree.check_vertex(v)?;
        in_a[v] = true;
    }
    let rooted = RootedTree::forest(tree, options.root)?;
    if options.strict {
        if lambda < 1 {
            return Err(Error::LatencyTooSmall);
        }
        for v in 0..n {
            let t = thresholds.get(v);
            if t < 1 || t as usize > tree.degree(v) {
                return Err(Error::ThresholdAssumption { vertex: v, threshold: t, degree: tree.degree(v) });
            }
        }
    }
    let t = thresholds.normalize(tree);
    // The process is stable after n rounds, so larger bounds change nothing.
    let lambda = lambda.min(n);
    if lambda == 0 {
        return Ok(seed_targets(&in_a));
    }
    Ok(run(&rooted, &t, lambda, in_a))
}

/// With no rounds to spread, exactly the targets must be seeded.
fn seed_targets(in_a: &[bool]) -> TreeSolution {
    let seeds: Vec<usize> = (0..in_a.len()).filter(|&v| in_a[v]).collect();
    let states = in_a
        .iter()
        .map(|&a| TreeNodeState { time: if a { 0 } else { 1 }, path: -1, max_path: 0, act_count: 0 })
        .collect();
    TreeSolution { seeds, states, in_a_prime: in_a.to_vec(), lambda: 0 }
}

fn run(rooted: &RootedTree, t: &Thresholds, lambda: usize, mut a_prime: Vec<bool>) -> TreeSolution {
    let n = rooted.n();
    let lam = u32::try_from(lambda).expect("latency is clamped to the vertex count");
    let inf = lam + 1;
    // Compact per-vertex arrays keep the working set small on large trees.
    let mut time = vec![inf; n];
    let mut path = vec![-1i32; n];
    let mut max_path = vec![0u32; n];
    let mut act_count = vec![0u32; n];
    let mut in_s = vec![false; n];
    let mut scratch: Vec<u32> = Vec::new();

    // Leaves are handled by the same rules with no children: a target leaf
    // with threshold 1 recruits its parent, one with threshold 2 is seeded.
    for &v in rooted.order() {
        let children = rooted.children(v);
        let mp = children.iter().map(|&u| path[u]).max().map_or(0, |p| (1 + p) as u32);
        let limit = i64::from(lam) - i64::from(mp);
        let act = children.iter().filter(|&&u| i64::from(time[u]) < limit).count();
        let tv = t.get(v) as usize;
        let mut tm = if tv == 0 {
            1
        } else if tv > children.len() {
            inf
        } else {
            scratch.clear();
            scratch.extend(children.iter().map(|&u| time[u]));
            1 + select_tth_smallest(&mut scratch, tv).expect("tv within range")
        };
        tm = tm.min(inf);
        if a_prime[v] {
            match rooted.parent(v) {
                Some(p) => {
                    if act + 2 <= tv || mp == lam {
                        in_s[v] = true;
                        tm = 0;
                    } else if act + 1 == tv {
                        a_prime[p] = true;
                        path[v] = mp as i32;
                    }
                }
                None => {
                    if act + 1 <= tv || mp == lam {
                        in_s[v] = true;
                        tm = 0;
                    }
                }
            }
        }
        time[v] = tm;
        max_path[v] = mp;
        act_count[v] = act as u32;
    }
    let seeds = (0..n).filter(|&v| in_s[v]).collect();
    let states = (0..n)
        .map(|v| TreeNodeState {
            time: time[v] as usize,
            path: i64::from(path[v]),
            max_path: max_path[v] as usize,
            act_count: act_count[v] as usize,
        })
        .collect();
    TreeSolution { seeds, states, in_a_prime: a_prime, lambda }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simulate;

    fn p3() -> Graph {
        Graph::new(3, &[(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn empty_targets() {
        assert_eq!(solve(&p3(), &Thresholds::new(vec![1, 2, 1]), 1, &[]).unwrap(), vec![]);
    }

    #[test]
    fn p3_example() {
        let t = Thresholds::new(vec![1, 2, 1]);
        for root in 0..3 {
            let opts = TreeOptions { strict: true, root: Some(root) };
            let s = solve_detailed(&p3(), &t, 1, &[0, 1, 2], opts).unwrap();
            assert_eq!(s.seeds, vec![1], "root {root}");
        }
    }

    #[test]
    fn star_with_demanding_center() {
        let g = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let t = Thresholds::new(vec![3, 1, 1, 1]);
        let s = solve(&g, &t, 2, &[0]).unwrap();
        assert_eq!(s.len(), 1);
        assert!(simulate(&g, &t, &s, 2).unwrap().covers(&[0]));
    }

    #[test]
    fn path_spreads_from_one_seed() {
        let n = 7;
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        let g = Graph::new(n, &edges).unwrap();
        let t = Thresholds::uniform(n, 1);
        let all: Vec<usize> = (0..n).collect();
        assert_eq!(solve(&g, &t, n - 1, &all).unwrap().len(), 1);
        // With λ = 1 every seed covers itself and two neighbors.
        assert_eq!(solve(&g, &t, 1, &all).unwrap().len(), 3);
    }

    #[test]
    fn strict_mode_rejects_extensions() {
        let t = Thresholds::new(vec![1, 3, 1]);
        let strict = TreeOptions { strict: true, root: None };
        assert!(matches!(
            solve_detailed(&p3(), &t, 1, &[1], strict),
            Err(Error::ThresholdAssumption { vertex: 1, .. })
        ));
        assert_eq!(
            solve_detailed(&p3(), &Thresholds::uniform(3, 1), 0, &[1], strict),
            Err(Error::LatencyTooSmall)
        );
        // Extended mode seeds the vertex that can never be activated.
        assert_eq!(solve(&p3(), &t, 1, &[1]).unwrap(), vec![1]);
    }

    #[test]
    fn zero_latency_seeds_targets() {
        assert_eq!(solve(&p3(), &Thresholds::uniform(3, 1), 0, &[2, 0]).unwrap(), vec![0, 2]);
    }

    #[test]
    fn zero_thresholds_need_no_seed() {
        let t = Thresholds::uniform(3, 0);
        assert_eq!(solve(&p3(), &t, 1, &[0, 1, 2]).unwrap(), vec![]);
        let single = Graph::empty(1);
        assert_eq!(solve(&single, &Thresholds::uniform(1, 0), 1, &[0]).unwrap(), vec![]);
        assert_eq!(solve(&single, &Thresholds::uniform(1, 1), 1, &[0]).unwrap(), vec![0]);
    }

    #[test]
    fn forest_components_are_independent() {
        let g = Graph::new(5, &[(0, 1), (1, 2), (3, 4)]).unwrap();
        let t = Thresholds::new(vec![1, 2, 1, 1, 1]);
        let s = solve(&g, &t, 1, &[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(s.len(), 2);
        assert!(s.contains(&1));
        assert!(simulate(&g, &t, &s, 1).unwrap().covers(&[0, 1, 2, 3, 4]));
    }
}

use crate::error::{Error, Result};
use crate::graph::Graph;

const NO_PARENT: usize = usize::MAX;

/// A forest with a chosen root per component, parent/children maps and a
/// processing order in which every child precedes its parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    roots: Vec<usize>,
    parent: Vec<usize>,
    child_start: Vec<usize>,
    child_list: Vec<usize>,
    order: Vec<usize>,
}

impl RootedTree {
    /// Roots a tree at `root`.
    pub fn new(tree: &Graph, root: usize) -> Result<Self> {
        tree.check_vertex(root)?;
        let rooted = Self::build(tree, Some(root));
        if rooted.roots.len() + tree.edge_count() != tree.n() {
            return Err(Error::NotATree("has a cycle"));
        }
        if rooted.roots.len() != 1 {
            return Err(Error::NotATree("disconnected"));
        }
        Ok(rooted)
    }

    /// Roots every component of a forest. The component containing `root`
    /// (if given) is rooted there; every other component at its smallest
    /// vertex.
    pub fn forest(graph: &Graph, root: Option<usize>) -> Result<Self> {
        if let Some(r) = root {
            graph.check_vertex(r)?;
        }
        let rooted = Self::build(graph, root);
        if rooted.roots.len() + graph.edge_count() != graph.n() {
            return Err(Error::NotATree("has a cycle"));
        }
        Ok(rooted)
    }

    /// One breadth-first pass over all components; `first` (if any) is
    /// visited first.
    fn build(graph: &Graph, first: Option<usize>) -> Self {
        let n = graph.n();
        let mut parent = vec![NO_PARENT; n];
        let mut seen = vec![false; n];
        let mut bfs = Vec::with_capacity(n);
        let mut roots = Vec::new();
        for r in first.into_iter().chain(0..n) {
            if seen[r] {
                continue;
            }
            seen[r] = true;
            roots.push(r);
            let mut head = bfs.len();
            bfs.push(r);
            while head < bfs.len() {
                let v = bfs[head];
                head += 1;
                for &w in graph.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        parent[w] = v;
                        bfs.push(w);
                    }
                }
            }
        }
        let mut child_start = vec![0usize; n + 1];
        for v in 0..n {
            if parent[v] != NO_PARENT {
                child_start[parent[v] + 1] += 1;
            }
        }
        for v in 0..n {
            child_start[v + 1] += child_start[v];
        }
        let mut fill = child_start.clone();
        let mut child_list = vec![0usize; child_start[n]];
        for &v in &bfs {
            let p = parent[v];
            if p != NO_PARENT {
                child_list[fill[p]] = v;
                fill[p] += 1;
            }
        }
        bfs.reverse();
        RootedTree { roots, parent, child_start, child_list, order: bfs }
    }

    pub fn n(&self) -> usize {
        self.parent.len()
    }

    /// The root of the first component (the only one for a tree).
    pub fn root(&self) -> usize {
        self.roots[0]
    }

    pub fn roots(&self) -> &[usize] {
        &self.roots
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        (self.parent[v] != NO_PARENT).then_some(self.parent[v])
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.child_list[self.child_start[v]..self.child_start[v + 1]]
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.children(v).is_empty()
    }

    /// Reverse breadth-first order: children before parents.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// The vertices of the subtree rooted at `v`, `v` first.
    pub fn subtree(&self, v: usize) -> Vec<usize> {
        let mut out = vec![v];
        let mut i = 0;
        while i < out.len() {
            out.extend_from_slice(self.children(out[i]));
            i += 1;
        }
        out
    }
}

/// Roots `tree` at `root` and computes the processing order.
pub fn root_and_order(tree: &Graph, root: usize) -> Result<RootedTree> {
    RootedTree::new(tree, root)
}

/// The `t`-th smallest value (1-based, counting multiplicity). Reorders
/// `values`; expected linear time.
pub fn select_tth_smallest<T: Ord + Copy>(values: &mut [T], t: usize) -> Result<T> {
    if t == 0 || t > values.len() {
        return Err(Error::SelectionRange(t));
    }
    Ok(*values.select_nth_unstable(t - 1).1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_vertex() {
        let t = root_and_order(&Graph::empty(1), 0).unwrap();
        assert_eq!(t.order(), &[0]);
        assert!(t.children(0).is_empty());
        assert_eq!(t.parent(0), None);
    }

    #[test]
    fn p3_rooted_at_middle() {
        let g = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let t = root_and_order(&g, 1).unwrap();
        assert_eq!(*t.order().last().unwrap(), 1);
        assert_eq!(t.children(1), &[0, 2]);
        assert_eq!(t.parent(0), Some(1));
        assert_eq!(t.subtree(1).len(), 3);
    }

    #[test]
    fn rejects_non_trees() {
        let cycle = Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(matches!(root_and_order(&cycle, 0), Err(Error::NotATree(_))));
        assert!(matches!(RootedTree::forest(&cycle, None), Err(Error::NotATree(_))));
        let forest = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(matches!(root_and_order(&forest, 0), Err(Error::NotATree(_))));
        let f = RootedTree::forest(&forest, Some(3)).unwrap();
        assert_eq!(f.roots(), &[3, 0]);
    }

    #[test]
    fn selection_examples() {
        assert_eq!(select_tth_smallest(&mut [5], 1), Ok(5));
        assert_eq!(select_tth_smallest(&mut [3, 1, 2], 2), Ok(2));
        assert_eq!(select_tth_smallest(&mut [2, 2, 1], 3), Ok(2));
        assert_eq!(select_tth_smallest(&mut [1, 2], 0), Err(Error::SelectionRange(0)));
        assert_eq!(select_tth_smallest::<u32>(&mut [], 1), Err(Error::SelectionRange(1)));
    }
}

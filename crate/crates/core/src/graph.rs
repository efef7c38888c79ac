//! Undirected simple graphs with per-vertex thresholds.
//!
//! Vertices are dense ids `0..n`. External names are mapped to ids at the
//! I/O boundary.

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// An undirected simple graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicate edges and ids `>= n`.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for (u, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                let (a, b) = (u.min(w[0]), u.max(w[0]));
                return Err(Error::DuplicateEdge(a, b));
            }
        }
        Ok(Graph { adjacency, edge_count: edges.len() })
    }

    pub fn empty(n: usize) -> Self {
        Graph { adjacency: vec![Vec::new(); n], edge_count: 0 }
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for (u, list) in self.adjacency.iter().enumerate() {
            out.extend(list.iter().filter(|&&v| u < v).map(|&v| (u, v)));
        }
        out
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n() })
        }
    }

    /// Connected components, each sorted, listed by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            queue.push_back(s);
            let mut comp = Vec::new();
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &w in self.neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_forest(&self) -> bool {
        self.edge_count + self.components().len() == self.n()
    }

    pub fn is_tree(&self) -> bool {
        self.n() > 0 && self.edge_count + 1 == self.n() && self.components().len() == 1
    }

    /// Subgraph induced by `vertices`; vertex `vertices[i]` becomes `i`.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut adjacency = vec![Vec::new(); vertices.len()];
        let mut edge_count = 0;
        for (i, &v) in vertices.iter().enumerate() {
            for &w in self.neighbors(v) {
                let j = index[w];
                if j != usize::MAX {
                    adjacency[i].push(j);
                    if i < j {
                        edge_count += 1;
                    }
                }
            }
            adjacency[i].sort_unstable();
        }
        Graph { adjacency, edge_count }
    }
}

/// Per-vertex activation thresholds.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Thresholds(Vec<u32>);

impl Thresholds {
    pub fn new(values: Vec<u32>) -> Self {
        Thresholds(values)
    }

    pub fn uniform(n: usize, t: u32) -> Self {
        Thresholds(vec![t; n])
    }

    /// Checks that there is one threshold per vertex of `graph`.
    pub fn for_graph(values: Vec<u32>, graph: &Graph) -> Result<Self> {
        if values.len() != graph.n() {
            return Err(Error::ThresholdCount { expected: graph.n(), got: values.len() });
        }
        Ok(Thresholds(values))
    }

    pub fn get(&self, v: usize) -> u32 {
        self.0[v]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn max(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// Caps every threshold at `degree + 1`; a larger threshold can never be
    /// met by neighbors and behaves identically.
    pub fn normalize(&self, graph: &Graph) -> Thresholds {
        Thresholds(
            self.0
                .iter()
                .enumerate()
                .map(|(v, &t)| t.min(graph.degree(v) as u32 + 1))
                .collect(),
        )
    }

    pub fn is_normalized(&self, graph: &Graph) -> bool {
        self.0.iter().enumerate().all(|(v, &t)| t as usize <= graph.degree(v) + 1)
    }
}

impl From<Vec<u32>> for Thresholds {
    fn from(values: Vec<u32>) -> Self {
        Thresholds(values)
    }
}

/// Free-function form of [`Thresholds::normalize`].
pub fn normalize_thresholds(graph: &Graph, thresholds: &Thresholds) -> Thresholds {
    thresholds.normalize(graph)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> Graph {
        Graph::new(3, &[(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(Graph::new(2, &[(0, 0)]), Err(Error::SelfLoop(0)));
        assert_eq!(Graph::new(3, &[(0, 1), (1, 0)]), Err(Error::DuplicateEdge(0, 1)));
        assert_eq!(
            Graph::new(3, &[(0, 5)]),
            Err(Error::VertexOutOfRange { vertex: 5, n: 3 })
        );
    }

    #[test]
    fn adjacency_is_symmetric() {
        let g = Graph::new(4, &[(0, 1), (2, 1), (3, 0)]).unwrap();
        for u in 0..4 {
            for &v in g.neighbors(u) {
                assert!(g.neighbors(v).contains(&u));
            }
        }
        assert_eq!(g.degree(1), 2);
        assert_eq!(g.edges(), vec![(0, 1), (0, 3), (1, 2)]);
    }

    #[test]
    fn normalize_caps_at_degree_plus_one() {
        let g = path3();
        let t = Thresholds::new(vec![5, 5, 5]).normalize(&g);
        assert_eq!(t.as_slice(), &[2, 3, 2]);

        let star = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let t = Thresholds::new(vec![7, 1, 1, 1]).normalize(&star);
        assert_eq!(t.get(0), 4);
    }

    #[test]
    fn normalize_is_identity_when_already_capped() {
        let g = path3();
        let t = Thresholds::new(vec![0, 3, 1]);
        assert_eq!(t.normalize(&g), t);
    }

    #[test]
    fn tree_and_forest_detection() {
        assert!(path3().is_tree());
        let forest = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(forest.is_forest());
        assert!(!forest.is_tree());
        let cycle = Graph::new(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(!cycle.is_forest());
    }

    #[test]
    fn induced_subgraph_relabels() {
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let h = g.induced_subgraph(&[3, 2, 0]);
        assert_eq!(h.n(), 3);
        assert_eq!(h.edges(), vec![(0, 1)]);
    }
}

//! k-expressions: the clique-width construction algebra.
//!
//! An expression is stored as an arena in post-order: every node follows its
//! children and a union's left subtree precedes its right subtree. Because
//! that order is canonical, structural equality is plain arena equality and
//! every subtree occupies a contiguous slice of the arena. Deep expressions
//! (a path on 10^5 vertices nests 4·10^5 operators) are handled without
//! recursion.

mod eval;
mod generate;
mod lift;
mod parse;

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

pub use eval::{
    check_irredundant, evaluate, normalize_irredundant, LabeledGraph, Violation,
};
pub use generate::{
    cograph_expression, path_expression, random_expression, random_irredundant_expression,
    star_expression, tree_expression,
};
pub use lift::lift_for_targets;
pub use parse::{format, parse, ParseError, ParseErrorKind};

pub type Label = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub usize);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Node {
    /// `a(v)`: a new vertex `v` with label `a`.
    Leaf { label: Label, name: String },
    /// `U(l, r)`: disjoint union.
    Union(NodeId, NodeId),
    /// `eta(a,b, e)`: join every `a`-vertex to every `b`-vertex.
    Eta { a: Label, b: Label, child: NodeId },
    /// `rho(a->b, e)`: rename label `a` to `b`.
    Rho { from: Label, to: Label, child: NodeId },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KExpr {
    nodes: Vec<Node>,
}

impl KExpr {
    pub fn leaf(label: Label, name: impl Into<String>) -> Self {
        KExpr { nodes: vec![Node::Leaf { label, name: name.into() }] }
    }

    pub fn union(left: KExpr, right: KExpr) -> Self {
        let mut nodes = left.nodes;
        let l = NodeId(nodes.len() - 1);
        let offset = nodes.len();
        nodes.extend(right.nodes.into_iter().map(|n| shift(n, offset)));
        let r = NodeId(nodes.len() - 1);
        nodes.push(Node::Union(l, r));
        KExpr { nodes }
    }

    pub fn eta(a: Label, b: Label, child: KExpr) -> Self {
        let mut nodes = child.nodes;
        let c = NodeId(nodes.len() - 1);
        nodes.push(Node::Eta { a, b, child: c });
        KExpr { nodes }
    }

    pub fn rho(from: Label, to: Label, child: KExpr) -> Self {
        let mut nodes = child.nodes;
        let c = NodeId(nodes.len() - 1);
        nodes.push(Node::Rho { from, to, child: c });
        KExpr { nodes }
    }

    pub fn root(&self) -> NodeId {
        NodeId(self.nodes.len() - 1)
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id.0]
    }

    /// Nodes in post-order.
    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    /// Number of operators, leaves included.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.nodes.len()).map(NodeId)
    }

    /// Number of nodes in the subtree rooted at each node.
    pub fn subtree_sizes(&self) -> Vec<usize> {
        let mut size = vec![1usize; self.nodes.len()];
        for (i, node) in self.nodes.iter().enumerate() {
            size[i] = match node {
                Node::Leaf { .. } => 1,
                Node::Union(l, r) => 1 + size[l.0] + size[r.0],
                Node::Eta { child, .. } | Node::Rho { child, .. } => 1 + size[child.0],
            };
        }
        size
    }

    /// The subexpression rooted at `id`.
    pub fn subexpr(&self, id: NodeId) -> KExpr {
        let size = self.subtree_sizes()[id.0];
        let start = id.0 + 1 - size;
        let nodes = self.nodes[start..=id.0]
            .iter()
            .cloned()
            .map(|n| unshift(n, start))
            .collect();
        KExpr { nodes }
    }

    pub fn vertex_count(&self) -> usize {
        self.nodes.iter().filter(|n| matches!(n, Node::Leaf { .. })).count()
    }

    /// Largest label used; the DP runs with this many labels.
    pub fn max_label(&self) -> Label {
        self.nodes
            .iter()
            .map(|n| match n {
                Node::Leaf { label, .. } => *label,
                Node::Eta { a, b, .. } => (*a).max(*b),
                Node::Rho { from, to, .. } => (*from).max(*to),
                Node::Union(..) => 0,
            })
            .max()
            .unwrap_or(0)
    }

    /// Number of distinct labels appearing anywhere in the expression.
    pub fn width(&self) -> usize {
        let mut labels: Vec<Label> = Vec::new();
        for n in &self.nodes {
            match n {
                Node::Leaf { label, .. } => labels.push(*label),
                Node::Eta { a, b, .. } => labels.extend([*a, *b]),
                Node::Rho { from, to, .. } => labels.extend([*from, *to]),
                Node::Union(..) => {}
            }
        }
        labels.sort_unstable();
        labels.dedup();
        labels.len()
    }

    /// Checks the well-formedness rules the parser enforces: labels are
    /// positive, eta/rho use distinct labels, vertex names are unique
    /// identifiers, and the arena is a post-order tree.
    pub fn validate(&self) -> Result<()> {
        if self.nodes.is_empty() {
            return Err(Error::Malformed("empty expression".into()));
        }
        let size = self.subtree_sizes();
        if size[self.nodes.len() - 1] != self.nodes.len() {
            return Err(Error::Malformed("arena is not a single post-order tree".into()));
        }
        let mut names = HashMap::new();
        for (i, node) in self.nodes.iter().enumerate() {
            match node {
                Node::Leaf { label, name } => {
                    if *label == 0 {
                        return Err(Error::Malformed(format!("label 0 at leaf {name}")));
                    }
                    if name.is_empty()
                        || !name.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
                    {
                        return Err(Error::Malformed(format!("invalid vertex name {name:?}")));
                    }
                    if names.insert(name.as_str(), i).is_some() {
                        return Err(Error::Malformed(format!("duplicate vertex name {name}")));
                    }
                }
                Node::Union(l, r) => {
                    if r.0 + 1 != i || l.0 + size[r.0] != r.0 {
                        return Err(Error::Malformed(format!("union {} out of order", NodeId(i))));
                    }
                }
                Node::Eta { a, b, child } | Node::Rho { from: a, to: b, child } => {
                    if child.0 + 1 != i {
                        return Err(Error::Malformed(format!("node {} out of order", NodeId(i))));
                    }
                    if *a == 0 || *b == 0 {
                        return Err(Error::Malformed(format!("label 0 at node {}", NodeId(i))));
                    }
                    if a == b {
                        return Err(Error::Malformed(format!(
                            "equal labels {a},{b} at node {}",
                            NodeId(i)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Assigns dense vertex ids to the leaves.
    ///
    /// If the names are exactly the decimal strings `0..n` each leaf gets the
    /// id it names; otherwise ids follow left-to-right leaf order.
    pub fn vertex_map(&self) -> VertexMap {
        let leaves: Vec<(usize, &str)> = self
            .nodes
            .iter()
            .enumerate()
            .filter_map(|(i, n)| match n {
                Node::Leaf { name, .. } => Some((i, name.as_str())),
                _ => None,
            })
            .collect();
        let n = leaves.len();
        let numeric: Option<Vec<usize>> = leaves
            .iter()
            .map(|(_, name)| canonical_index(name).filter(|&v| v < n))
            .collect();
        let ids: Vec<usize> = match numeric {
            Some(ids) if {
                let mut seen = vec![false; n];
                ids.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
            } =>
            {
                ids
            }
            _ => (0..n).collect(),
        };
        let mut vertex_of_node = vec![None; self.nodes.len()];
        let mut names = vec![String::new(); n];
        for ((node, name), &id) in leaves.iter().zip(&ids) {
            vertex_of_node[*node] = Some(id);
            names[id] = name.to_string();
        }
        VertexMap { vertex_of_node, names }
    }
}

impl fmt::Display for KExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format(self))
    }
}

impl std::str::FromStr for KExpr {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        parse(s)
    }
}

/// Vertex ids of an expression's leaves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexMap {
    vertex_of_node: Vec<Option<usize>>,
    names: Vec<String>,
}

impl VertexMap {
    pub fn vertex_of(&self, leaf: NodeId) -> Option<usize> {
        self.vertex_of_node[leaf.0]
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn find(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

fn canonical_index(name: &str) -> Option<usize> {
    if name.is_empty() || !name.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    if name.len() > 1 && name.starts_with('0') {
        return None;
    }
    name.parse().ok()
}

fn shift(node: Node, offset: usize) -> Node {
    map_children(node, |c| NodeId(c.0 + offset))
}

fn unshift(node: Node, offset: usize) -> Node {
    map_children(node, |c| NodeId(c.0 - offset))
}

fn map_children(node: Node, f: impl Fn(NodeId) -> NodeId) -> Node {
    match node {
        Node::Leaf { .. } => node,
        Node::Union(l, r) => Node::Union(f(l), f(r)),
        Node::Eta { a, b, child } => Node::Eta { a, b, child: f(child) },
        Node::Rho { from, to, child } => Node::Rho { from, to, child: f(child) },
    }
}

/// Appends nodes in post-order. Callers must push every subtree completely
/// before its parent, and a union's left subtree before its right one.
#[derive(Debug, Default)]
pub(crate) struct Builder {
    nodes: Vec<Node>,
}

impl Builder {
    pub(crate) fn leaf(&mut self, label: Label, name: impl Into<String>) -> NodeId {
        self.push(Node::Leaf { label, name: name.into() })
    }

    pub(crate) fn union(&mut self, l: NodeId, r: NodeId) -> NodeId {
        self.push(Node::Union(l, r))
    }

    pub(crate) fn eta(&mut self, a: Label, b: Label, child: NodeId) -> NodeId {
        self.push(Node::Eta { a, b, child })
    }

    pub(crate) fn rho(&mut self, from: Label, to: Label, child: NodeId) -> NodeId {
        self.push(Node::Rho { from, to, child })
    }

    pub(crate) fn push(&mut self, node: Node) -> NodeId {
        self.nodes.push(node);
        NodeId(self.nodes.len() - 1)
    }

    pub(crate) fn finish(self) -> KExpr {
        let expr = KExpr { nodes: self.nodes };
        debug_assert!(expr.validate().is_ok(), "builder produced {:?}", expr.validate());
        expr
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const P5: &str = "eta(3,2, U(3(z), rho(3->2, rho(2->1, eta(3,2, U(3(y), \
        rho(3->2, rho(2->1, eta(3,2, U(3(x), eta(2,1, U(2(v), 1(u)))))))))))))";

    #[test]
    fn constructors_keep_post_order() {
        let e = KExpr::eta(2, 1, KExpr::union(KExpr::leaf(2, "v"), KExpr::leaf(1, "u")));
        assert!(e.validate().is_ok());
        assert_eq!(e.len(), 4);
        assert_eq!(e.node(e.root()), &Node::Eta { a: 2, b: 1, child: NodeId(2) });
    }

    #[test]
    fn p5_operator_count() {
        // 5 vertex creations, 4 unions, 4 etas, 4 renamings
        let e = parse(P5).unwrap();
        let ops = e.nodes().iter().filter(|n| !matches!(n, Node::Leaf { .. })).count();
        assert_eq!(ops, 12);
        assert_eq!(e.len(), 17);
        assert_eq!(e.vertex_count(), 5);
        assert_eq!(e.width(), 3);
        assert_eq!(e.max_label(), 3);
    }

    #[test]
    fn subexpr_is_contiguous() {
        let e = parse(P5).unwrap();
        let inner = e.subexpr(NodeId(6));
        assert_eq!(format(&inner), "eta(2,1, U(2(v), 1(u)))");
    }

    #[test]
    fn vertex_map_uses_numeric_names() {
        let e = parse("U(1(1), 1(0))").unwrap();
        let vm = e.vertex_map();
        assert_eq!(vm.vertex_of(NodeId(0)), Some(1));
        assert_eq!(vm.name(0), "0");

        let e = parse("U(1(b), 1(a))").unwrap();
        let vm = e.vertex_map();
        assert_eq!(vm.vertex_of(NodeId(0)), Some(0));
        assert_eq!(vm.name(0), "b");

        // "01" is not canonical, fall back to leaf order
        let e = parse("U(1(01), 1(0))").unwrap();
        assert_eq!(e.vertex_map().name(0), "01");
    }

    #[test]
    fn validate_rejects_equal_labels() {
        let e = KExpr::eta(1, 1, KExpr::leaf(1, "u"));
        assert!(e.validate().is_err());
        let e = KExpr::union(KExpr::leaf(1, "u"), KExpr::leaf(2, "u"));
        assert!(e.validate().is_err());
    }
}

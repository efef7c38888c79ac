//! Evaluation of k-expressions into labeled graphs, and irredundancy checks.

use std::collections::HashSet;

use super::{Builder, KExpr, Label, Node, NodeId, VertexMap};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// A graph whose vertices carry labels, together with the leaf names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    pub graph: Graph,
    pub labels: Vec<Label>,
    pub names: Vec<String>,
}

impl LabeledGraph {
    /// `V_ℓ(H)`.
    pub fn class(&self, label: Label) -> Vec<usize> {
        (0..self.labels.len()).filter(|&v| self.labels[v] == label).collect()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// An eta applied to a child that already has an edge between its classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub node: NodeId,
    pub a: Label,
    pub b: Label,
    /// Names of the endpoints of one pre-existing edge.
    pub edge: (String, String),
}

/// What an eta would do to the graph built so far.
struct EtaEffect {
    existing: Option<(usize, usize)>,
    existing_count: usize,
    new_count: usize,
}

/// Bottom-up evaluation state. Vertex sets of sibling subtrees are disjoint,
/// so a single edge set serves the whole walk; each pending subtree only
/// keeps its label classes.
struct Walk {
    stack: Vec<Vec<Vec<usize>>>,
    edges: HashSet<(usize, usize)>,
    width: usize,
}

impl Walk {
    fn new(expr: &KExpr) -> Self {
        Walk { stack: Vec::new(), edges: HashSet::new(), width: expr.max_label() as usize + 1 }
    }

    fn leaf(&mut self, label: Label, v: usize) {
        let mut classes = vec![Vec::new(); self.width];
        classes[label as usize].push(v);
        self.stack.push(classes);
    }

    fn union(&mut self) {
        let right = self.stack.pop().expect("union needs two operands");
        let left = self.stack.last_mut().expect("union needs two operands");
        for (l, mut r) in left.iter_mut().zip(right) {
            if r.len() > l.len() {
                std::mem::swap(l, &mut r);
            }
            l.extend(r);
        }
    }

    fn rho(&mut self, from: Label, to: Label) {
        let top = self.stack.last_mut().expect("rho needs an operand");
        let mut moved = std::mem::take(&mut top[from as usize]);
        let target = &mut top[to as usize];
        if moved.len() > target.len() {
            std::mem::swap(&mut moved, target);
        }
        target.extend(moved);
    }

    fn inspect_eta(&self, a: Label, b: Label) -> EtaEffect {
        let top = self.stack.last().expect("eta needs an operand");
        let (xs, ys) = (&top[a as usize], &top[b as usize]);
        let mut effect = EtaEffect { existing: None, existing_count: 0, new_count: 0 };
        for &x in xs {
            for &y in ys {
                if self.edges.contains(&key(x, y)) {
                    effect.existing_count += 1;
                    effect.existing.get_or_insert((x, y));
                } else {
                    effect.new_count += 1;
                }
            }
        }
        effect
    }

    fn apply_eta(&mut self, a: Label, b: Label) {
        let top = self.stack.last().expect("eta needs an operand");
        for &x in &top[a as usize] {
            for &y in &top[b as usize] {
                self.edges.insert(key(x, y));
            }
        }
    }

    fn finish(mut self, vm: &VertexMap) -> LabeledGraph {
        let classes = self.stack.pop().expect("empty expression");
        let n = vm.len();
        let mut labels = vec![0; n];
        for (label, members) in classes.iter().enumerate() {
            for &v in members {
                labels[v] = label as Label;
            }
        }
        let mut edges: Vec<_> = self.edges.drain().collect();
        edges.sort_unstable();
        let graph = Graph::new(n, &edges).expect("expression edges are simple");
        LabeledGraph { graph, labels, names: vm.names().to_vec() }
    }
}

fn key(x: usize, y: usize) -> (usize, usize) {
    (x.min(y), x.max(y))
}

/// Walks the expression bottom-up. `on_eta` sees each eta before it is
/// applied and decides whether to apply it.
fn walk(
    expr: &KExpr,
    vm: &VertexMap,
    mut on_eta: impl FnMut(NodeId, Label, Label, &EtaEffect) -> Result<bool>,
) -> Result<LabeledGraph> {
    let mut w = Walk::new(expr);
    for id in expr.ids() {
        match expr.node(id) {
            Node::Leaf { label, .. } => {
                w.leaf(*label, vm.vertex_of(id).expect("leaf has a vertex"))
            }
            Node::Union(..) => w.union(),
            Node::Rho { from, to, .. } => w.rho(*from, *to),
            Node::Eta { a, b, .. } => {
                let effect = w.inspect_eta(*a, *b);
                if on_eta(id, *a, *b, &effect)? {
                    w.apply_eta(*a, *b);
                }
            }
        }
    }
    Ok(w.finish(vm))
}

/// Builds the labeled graph defined by `expr`.
pub fn evaluate(expr: &KExpr) -> LabeledGraph {
    let vm = expr.vertex_map();
    walk(expr, &vm, |_, _, _, _| Ok(true)).expect("plain evaluation cannot fail")
}

/// Lists every eta whose child graph already contains an edge between the
/// two classes it joins. Empty means the expression is irredundant.
pub fn check_irredundant(expr: &KExpr) -> Vec<Violation> {
    let vm = expr.vertex_map();
    let mut out = Vec::new();
    walk(expr, &vm, |node, a, b, effect| {
        if let Some((x, y)) = effect.existing {
            out.push(Violation {
                node,
                a,
                b,
                edge: (vm.name(x).to_string(), vm.name(y).to_string()),
            });
        }
        Ok(true)
    })
    .expect("check cannot fail");
    out
}

/// Drops every eta that adds no new edge. An eta that adds some new edges
/// while repeating others cannot be repaired locally and is reported as
/// [`Error::PartialRedundancy`].
pub fn normalize_irredundant(expr: &KExpr) -> Result<KExpr> {
    let vm = expr.vertex_map();
    let mut dropped = vec![false; expr.len()];
    walk(expr, &vm, |node, _, _, effect| {
        if effect.new_count == 0 {
            dropped[node.0] = true;
            Ok(false)
        } else if effect.existing_count > 0 {
            Err(Error::PartialRedundancy { node })
        } else {
            Ok(true)
        }
    })?;

    let mut out = Builder::default();
    let mut remap = vec![NodeId(0); expr.len()];
    for id in expr.ids() {
        remap[id.0] = match expr.node(id) {
            Node::Leaf { label, name } => out.leaf(*label, name.clone()),
            Node::Union(l, r) => out.union(remap[l.0], remap[r.0]),
            Node::Eta { child, .. } if dropped[id.0] => remap[child.0],
            Node::Eta { a, b, child } => out.eta(*a, *b, remap[child.0]),
            Node::Rho { from, to, child } => out.rho(*from, *to, remap[child.0]),
        };
    }
    Ok(out.finish())
}

use std::collections::HashMap;

use super::cases::{eta_reduction, gamma_eta, gamma_rho, gamma_union, leaf_round};
use super::matrix::{AlphaMatrix, RMatrix};
use super::verify::verify_ar_process;
use crate::error::{Error, Result};
use crate::graph::Thresholds;
use crate::kexpr::{
    check_irredundant, evaluate, lift_for_targets, KExpr, Label, LabeledGraph, Node, NodeId,
    VertexMap,
};

/// How a satisfiable entry was established; enough to rebuild the process.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// Round at which the leaf activates, `None` if never.
    Leaf { round: Option<usize> },
    /// The left part `α1` of the split; the right part is `α - α1`.
    Union { left: AlphaMatrix },
    /// The child query uses the reduced `r` and the same `α`.
    Eta,
    /// The child's `α1` before the renaming.
    Rho { child: AlphaMatrix },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaEntry {
    witness: Option<Witness>,
}

impl GammaEntry {
    pub fn satisfiable(&self) -> bool {
        self.witness.is_some()
    }

    pub fn witness(&self) -> Option<&Witness> {
        self.witness.as_ref()
    }
}

/// Memoized values of `γ_H` for one expression node. A missing key has not
/// been queried yet.
#[derive(Debug, Clone, Default)]
pub struct GammaTable {
    entries: HashMap<Box<[u16]>, GammaEntry>,
}

impl GammaTable {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// A failed witness check, reported by [`CwdSolver::audit_witnesses`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessFailure {
    pub node: NodeId,
    pub alpha: AlphaMatrix,
    pub r: RMatrix,
}

/// Everything about the expression the recurrences need, kept apart from
/// the memo tables so both can be borrowed at once.
struct Shape {
    expr: KExpr,
    vm: VertexMap,
    thresholds: Thresholds,
    lambda: usize,
    k: usize,
    rcap: u16,
    caps: Vec<Vec<u16>>,
}

/// The dynamic program over an irredundant k-expression for a fixed
/// latency bound. Tables persist across queries, so deciding many
/// `(β, α)` pairs on one expression is cheap after the first.
pub struct CwdSolver {
    shape: Shape,
    graph: LabeledGraph,
    tables: Vec<GammaTable>,
}

impl CwdSolver {
    /// `thresholds` are indexed by the expression's vertex ids and are
    /// normalized against the graph it defines.
    pub fn new(expr: &KExpr, thresholds: &Thresholds, lambda: usize) -> Result<Self> {
        expr.validate()?;
        let n = expr.vertex_count();
        if thresholds.len() != n {
            return Err(Error::ThresholdCount { expected: n, got: thresholds.len() });
        }
        if let Some(v) = check_irredundant(expr).into_iter().next() {
            return Err(Error::Redundant { node: v.node, a: v.a, b: v.b, u: v.edge.0, v: v.edge.1 });
        }
        if n > u16::MAX as usize {
            return Err(Error::SizeLimit { n, limit: u16::MAX as usize });
        }
        let graph = evaluate(expr);
        let thresholds = thresholds.normalize(&graph.graph);
        let k = expr.max_label() as usize;
        let rcap = thresholds.max() as u16;
        let vm = expr.vertex_map();
        let caps = label_counts(expr, k);
        let tables = vec![GammaTable::default(); expr.len()];
        let shape = Shape { expr: expr.clone(), vm, thresholds, lambda, k, rcap, caps };
        Ok(CwdSolver { shape, graph, tables })
    }

    pub fn lambda(&self) -> usize {
        self.shape.lambda
    }

    pub fn k(&self) -> usize {
        self.shape.k
    }

    pub fn expr(&self) -> &KExpr {
        &self.shape.expr
    }

    /// The labeled graph the expression defines; vertex ids match the
    /// expression's vertex map.
    pub fn graph(&self) -> &LabeledGraph {
        &self.graph
    }

    /// Thresholds after normalization.
    pub fn thresholds(&self) -> &Thresholds {
        &self.shape.thresholds
    }

    /// `|V_ℓ(H)|` for every label of the subexpression at `node`.
    pub fn label_caps(&self, node: NodeId) -> &[u16] {
        &self.shape.caps[node.0]
    }

    pub fn table(&self, node: NodeId) -> &GammaTable {
        &self.tables[node.0]
    }

    /// Total number of memoized entries.
    pub fn memo_size(&self) -> usize {
        self.tables.iter().map(GammaTable::len).sum()
    }

    fn check_dims(&self, alpha: &AlphaMatrix, r: &RMatrix) -> Result<()> {
        let (lambda, k) = (self.shape.lambda, self.shape.k);
        if alpha.lambda() != lambda || alpha.k() != k || r.lambda() != lambda || r.k() != k {
            return Err(Error::Dimension(format!(
                "query is alpha {}x{}, r {}x{}; expected {}x{k} and {lambda}x{k}",
                alpha.lambda() + 1,
                alpha.k(),
                r.lambda(),
                r.k(),
                lambda + 1
            )));
        }
        Ok(())
    }

    /// `γ_H(α, r)` for the subexpression rooted at `node`.
    pub fn gamma(&mut self, node: NodeId, alpha: &AlphaMatrix, r: &RMatrix) -> Result<bool> {
        self.check_dims(alpha, r)?;
        Ok(query(&self.shape, &mut self.tables, node, alpha, r))
    }

    /// The sets `S[0..=λ]` of the witnessed process for a satisfiable query,
    /// in vertex ids of the whole expression.
    pub fn process(&mut self, node: NodeId, alpha: &AlphaMatrix, r: &RMatrix) -> Result<Option<Vec<Vec<usize>>>> {
        if !self.gamma(node, alpha, r)? {
            return Ok(None);
        }
        let rounds = self.materialize(node, alpha, r);
        Ok(Some(rounds_to_sets(&rounds, self.shape.lambda)))
    }

    /// Activation round per vertex (global ids) in the witnessed process.
    fn materialize(&self, node: NodeId, alpha: &AlphaMatrix, r: &RMatrix) -> Vec<Option<usize>> {
        let shape = &self.shape;
        let mut out = vec![None; shape.vm.len()];
        let mut stack = vec![(node, alpha.clone(), r.clone())];
        while let Some((node, alpha, r)) = stack.pop() {
            let entry = self.tables[node.0]
                .entries
                .get(&key(&alpha, &r))
                .and_then(|e| e.witness.as_ref())
                .expect("witness chain only visits satisfiable entries");
            match (shape.expr.node(node), entry) {
                (Node::Leaf { .. }, Witness::Leaf { round }) => {
                    out[shape.vm.vertex_of(node).expect("leaf")] = *round;
                }
                (Node::Union(l, rr), Witness::Union { left }) => {
                    let right = alpha.checked_sub(left).expect("split below alpha");
                    stack.push((*l, left.clone(), r.clone()));
                    stack.push((*rr, right, r));
                }
                (Node::Eta { a, b, child }, Witness::Eta) => {
                    let r1 = eta_reduction(&alpha, &r, *a, *b, shape.rcap);
                    stack.push((*child, alpha, r1));
                }
                (Node::Rho { from, to, child }, Witness::Rho { child: a1 }) => {
                    let mut r1 = r;
                    for i in 1..=shape.lambda {
                        r1.set(i, *from, r1.get(i, *to));
                    }
                    stack.push((*child, a1.clone(), r1));
                }
                _ => unreachable!("witness kind matches node kind"),
            }
        }
        out
    }

    /// First root matrix in lexicographic order with column sums within the
    /// label class sizes, `at most max_seeds` seeds, accepted by `accept`,
    /// and `γ(α, 0) = 1`.
    pub fn first_root(
        &mut self,
        max_seeds: usize,
        mut accept: impl FnMut(&AlphaMatrix) -> bool,
    ) -> Option<AlphaMatrix> {
        let shape = &self.shape;
        let tables = &mut self.tables;
        let root = shape.expr.root();
        let zero_r = RMatrix::zeros(shape.lambda, shape.k);
        let mut rem = shape.caps[root.0].clone();
        let mut cur = vec![0u16; (shape.lambda + 1) * shape.k];
        let mut found = None;
        enumerate_roots(&mut rem, &mut cur, 0, shape.k, max_seeds, &mut |raw| {
            let alpha = AlphaMatrix::from_raw(shape.k, raw.to_vec());
            if accept(&alpha) && query(shape, tables, root, &alpha, &zero_r) {
                found = Some(alpha);
                true
            } else {
                false
            }
        });
        found
    }

    /// Is there a seed set of size at most `beta` activating at least
    /// `requirement` vertices within the latency bound?
    pub fn decide(&mut self, beta: usize, requirement: usize) -> bool {
        self.first_root(beta, |a| a.total() >= requirement).is_some()
    }

    /// A witness seed set for [`decide`](Self::decide).
    pub fn select(&mut self, beta: usize, requirement: usize) -> Option<Vec<usize>> {
        let alpha = self.first_root(beta, |a| a.total() >= requirement)?;
        Some(self.seeds_of(&alpha))
    }

    fn seeds_of(&self, alpha: &AlphaMatrix) -> Vec<usize> {
        let r = RMatrix::zeros(self.shape.lambda, self.shape.k);
        let rounds = self.materialize(self.shape.expr.root(), alpha, &r);
        (0..rounds.len()).filter(|&v| rounds[v] == Some(0)).collect()
    }

    /// Every satisfiable memoized entry of `node`.
    pub fn satisfiable_entries(&self, node: NodeId) -> Vec<(AlphaMatrix, RMatrix)> {
        let split = (self.shape.lambda + 1) * self.shape.k;
        let mut out: Vec<_> = self.tables[node.0]
            .entries
            .iter()
            .filter(|(_, e)| e.satisfiable())
            .map(|(raw, _)| {
                (
                    AlphaMatrix::from_raw(self.shape.k, raw[..split].to_vec()),
                    RMatrix::from_raw(self.shape.k, raw[split..].to_vec()),
                )
            })
            .collect();
        out.sort();
        out
    }

    /// Rebuilds the process of every satisfiable memoized entry and checks it
    /// against the definition on the subexpression's own graph. Returns the
    /// number of entries checked.
    pub fn audit_witnesses(&self) -> Result<std::result::Result<usize, WitnessFailure>> {
        let shape = &self.shape;
        let mut checked = 0;
        for node in shape.expr.ids() {
            let entries = self.satisfiable_entries(node);
            if entries.is_empty() {
                continue;
            }
            let h = evaluate(&shape.expr.subexpr(node));
            let global: Vec<usize> = h
                .names
                .iter()
                .map(|name| shape.vm.find(name).expect("subexpression vertex"))
                .collect();
            let mut local = vec![usize::MAX; shape.vm.len()];
            for (i, &g) in global.iter().enumerate() {
                local[g] = i;
            }
            let t = Thresholds::new(global.iter().map(|&g| shape.thresholds.get(g)).collect());
            for (alpha, r) in entries {
                let rounds = self.materialize(node, &alpha, &r);
                let mut process = vec![Vec::new(); shape.lambda + 1];
                for (g, round) in rounds.iter().enumerate() {
                    if let Some(round) = round {
                        if local[g] == usize::MAX {
                            return Ok(Err(WitnessFailure { node, alpha, r }));
                        }
                        for set in &mut process[*round..] {
                            set.push(local[g]);
                        }
                    }
                }
                if !verify_ar_process(&h, &t, &alpha, &r, &process)? {
                    return Ok(Err(WitnessFailure { node, alpha, r }));
                }
                checked += 1;
            }
        }
        Ok(Ok(checked))
    }
}

/// The target-set variants, run on the lifted expression in which exactly
/// the targets carry labels above `k`.
pub struct TargetSolver {
    inner: CwdSolver,
    base_k: usize,
    targets: Vec<usize>,
}

impl TargetSolver {
    /// `targets` are vertex ids of `expr`.
    pub fn new(expr: &KExpr, thresholds: &Thresholds, lambda: usize, targets: &[usize]) -> Result<Self> {
        let k = expr.max_label();
        let lifted = lift_for_targets(expr, targets, k)?;
        let inner = CwdSolver::new(&lifted, thresholds, lambda)?;
        let mut targets = targets.to_vec();
        targets.sort_unstable();
        targets.dedup();
        Ok(TargetSolver { inner, base_k: k as usize, targets })
    }

    pub fn solver(&mut self) -> &mut CwdSolver {
        &mut self.inner
    }

    fn root(&mut self, beta: usize) -> Option<AlphaMatrix> {
        let (k, want) = (self.base_k, self.targets.len());
        self.inner.first_root(beta, |a| {
            let lifted: usize = ((k + 1)..=a.k()).map(|l| a.column_sum(l as Label)).sum();
            lifted == want
        })
    }

    /// Can at most `beta` seeds activate every target within the bound?
    pub fn decide(&mut self, beta: usize) -> bool {
        self.root(beta).is_some()
    }

    pub fn select(&mut self, beta: usize) -> Option<Vec<usize>> {
        let alpha = self.root(beta)?;
        Some(self.inner.seeds_of(&alpha))
    }

    /// A minimum seed set activating every target.
    pub fn minimum(&mut self) -> Vec<usize> {
        (0..=self.targets.len())
            .find_map(|beta| self.select(beta))
            .expect("seeding every target is always feasible")
    }
}

pub fn decide(expr: &KExpr, thresholds: &Thresholds, lambda: usize, beta: usize, requirement: usize) -> Result<bool> {
    Ok(CwdSolver::new(expr, thresholds, lambda)?.decide(beta, requirement))
}

pub fn select(
    expr: &KExpr,
    thresholds: &Thresholds,
    lambda: usize,
    beta: usize,
    requirement: usize,
) -> Result<Option<Vec<usize>>> {
    Ok(CwdSolver::new(expr, thresholds, lambda)?.select(beta, requirement))
}

pub fn decide_targets(
    expr: &KExpr,
    thresholds: &Thresholds,
    lambda: usize,
    beta: usize,
    targets: &[usize],
) -> Result<bool> {
    Ok(TargetSolver::new(expr, thresholds, lambda, targets)?.decide(beta))
}

pub fn select_targets(
    expr: &KExpr,
    thresholds: &Thresholds,
    lambda: usize,
    beta: usize,
    targets: &[usize],
) -> Result<Option<Vec<usize>>> {
    Ok(TargetSolver::new(expr, thresholds, lambda, targets)?.select(beta))
}

/// Minimum seed set activating `targets` within `lambda` rounds.
pub fn min_target_set(expr: &KExpr, thresholds: &Thresholds, lambda: usize, targets: &[usize]) -> Result<Vec<usize>> {
    Ok(TargetSolver::new(expr, thresholds, lambda, targets)?.minimum())
}

fn key(alpha: &AlphaMatrix, r: &RMatrix) -> Box<[u16]> {
    let mut k = Vec::with_capacity(alpha.raw().len() + r.raw().len());
    k.extend_from_slice(alpha.raw());
    k.extend_from_slice(r.raw());
    k.into_boxed_slice()
}

fn query(shape: &Shape, tables: &mut [GammaTable], node: NodeId, alpha: &AlphaMatrix, r: &RMatrix) -> bool {
    let caps = &shape.caps[node.0];
    if (1..=shape.k).any(|l| alpha.column_sum(l as Label) > caps[l - 1] as usize) {
        return false;
    }
    let key = key(alpha, r);
    if let Some(e) = tables[node.0].entries.get(&key) {
        return e.satisfiable();
    }
    let witness = match shape.expr.node(node) {
        Node::Leaf { label, .. } => {
            let t = shape.thresholds.get(shape.vm.vertex_of(node).expect("leaf"));
            leaf_round(t, *label, alpha, r).map(|round| Witness::Leaf { round })
        }
        Node::Union(l, rr) => gamma_union(alpha, &shape.caps[l.0], &shape.caps[rr.0], |a1, a2| {
            query(shape, tables, *l, a1, r) && query(shape, tables, *rr, a2, r)
        })
        .map(|left| Witness::Union { left }),
        Node::Eta { a, b, child } => gamma_eta(alpha, r, *a, *b, shape.rcap, |r1| {
            query(shape, tables, *child, alpha, r1)
        })
        .then_some(Witness::Eta),
        Node::Rho { from, to, child } => {
            gamma_rho(alpha, r, *from, *to, &shape.caps[child.0], |a1, r1| {
                query(shape, tables, *child, a1, r1)
            })
            .map(|child| Witness::Rho { child })
        }
    };
    let sat = witness.is_some();
    tables[node.0].entries.insert(key, GammaEntry { witness });
    sat
}

/// Per node, the number of vertices with each label (index `ℓ - 1`).
fn label_counts(expr: &KExpr, k: usize) -> Vec<Vec<u16>> {
    let mut caps: Vec<Vec<u16>> = Vec::with_capacity(expr.len());
    for id in expr.ids() {
        let c = match expr.node(id) {
            Node::Leaf { label, .. } => {
                let mut c = vec![0; k];
                c[*label as usize - 1] = 1;
                c
            }
            Node::Union(l, r) => caps[l.0].iter().zip(&caps[r.0]).map(|(x, y)| x + y).collect(),
            Node::Eta { child, .. } => caps[child.0].clone(),
            Node::Rho { from, to, child } => {
                let mut c = caps[child.0].clone();
                c[*to as usize - 1] += std::mem::take(&mut c[*from as usize - 1]);
                c
            }
        };
        caps.push(c);
    }
    caps
}

fn enumerate_roots(
    rem: &mut [u16],
    cur: &mut [u16],
    pos: usize,
    k: usize,
    seeds_left: usize,
    visit: &mut dyn FnMut(&[u16]) -> bool,
) -> bool {
    if pos == cur.len() {
        return visit(cur);
    }
    let l = pos % k;
    let mut hi = rem[l] as usize;
    if pos < k {
        hi = hi.min(seeds_left);
    }
    for x in 0..=hi {
        cur[pos] = x as u16;
        rem[l] -= x as u16;
        let left = if pos < k { seeds_left - x } else { seeds_left };
        let done = enumerate_roots(rem, cur, pos + 1, k, left, visit);
        rem[l] += x as u16;
        if done {
            return true;
        }
    }
    cur[pos] = 0;
    false
}

fn rounds_to_sets(rounds: &[Option<usize>], lambda: usize) -> Vec<Vec<usize>> {
    (0..=lambda)
        .map(|i| (0..rounds.len()).filter(|&v| matches!(rounds[v], Some(j) if j <= i)).collect())
        .collect()
}

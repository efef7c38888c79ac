//! The threshold activation process and the problem instances built on it.
//!
//! Round 0 activates the seed set; in every later round each inactive vertex
//! joins once at least `t(v)` of its neighbors were active in the previous
//! round. A vertex with threshold 0 therefore joins at round 1.

use crate::error::{Error, Result};
use crate::graph::{Graph, Thresholds};

/// The sequence `Active[S,0] ⊆ … ⊆ Active[S,λ]`.
///
/// Stored as the activation round of each vertex; the cumulative sets are
/// produced on demand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActivationTrace {
    lambda: usize,
    activated_at: Vec<Option<usize>>,
}

impl ActivationTrace {
    pub fn lambda(&self) -> usize {
        self.lambda
    }

    /// Round at which `v` became active, if it did within the horizon.
    pub fn activation_round(&self, v: usize) -> Option<usize> {
        self.activated_at[v]
    }

    pub fn is_active(&self, v: usize, round: usize) -> bool {
        matches!(self.activated_at[v], Some(r) if r <= round)
    }

    /// `Active[S, i]` as a sorted vertex list. Rounds past the horizon
    /// return the final set.
    pub fn round(&self, i: usize) -> Vec<usize> {
        (0..self.activated_at.len()).filter(|&v| self.is_active(v, i)).collect()
    }

    pub fn rounds(&self) -> Vec<Vec<usize>> {
        (0..=self.lambda).map(|i| self.round(i)).collect()
    }

    pub fn seed(&self) -> Vec<usize> {
        self.round(0)
    }

    pub fn final_set(&self) -> Vec<usize> {
        self.round(self.lambda)
    }

    /// `|Active[S, i]|` for `i = 0..=λ`.
    pub fn sizes(&self) -> Vec<usize> {
        let mut per_round = vec![0usize; self.lambda + 1];
        for r in self.activated_at.iter().flatten() {
            per_round[*r] += 1;
        }
        let mut acc = 0;
        per_round
            .into_iter()
            .map(|c| {
                acc += c;
                acc
            })
            .collect()
    }

    pub fn final_size(&self) -> usize {
        self.activated_at.iter().filter(|r| r.is_some()).count()
    }

    pub fn covers(&self, targets: &[usize]) -> bool {
        targets.iter().all(|&v| self.activated_at[v].is_some())
    }
}

/// Runs the activation process from `seed` for `lambda` rounds.
///
/// Thresholds above `d(v) + 1` are accepted and behave as unreachable.
pub fn simulate(
    graph: &Graph,
    thresholds: &Thresholds,
    seed: &[usize],
    lambda: usize,
) -> Result<ActivationTrace> {
    let n = graph.n();
    if thresholds.len() != n {
        return Err(Error::ThresholdCount { expected: n, got: thresholds.len() });
    }
    let mut activated_at = vec![None; n];
    let mut frontier = Vec::with_capacity(seed.len());
    for &s in seed {
        graph.check_vertex(s)?;
        if activated_at[s].is_none() {
            activated_at[s] = Some(0);
            frontier.push(s);
        }
    }

    let mut hits = vec![0u32; n];
    let mut candidates = Vec::new();
    for round in 1..=lambda {
        candidates.clear();
        if round == 1 {
            candidates.extend((0..n).filter(|&v| thresholds.get(v) == 0));
        }
        for &u in &frontier {
            for &w in graph.neighbors(u) {
                hits[w] += 1;
                if activated_at[w].is_none() {
                    candidates.push(w);
                }
            }
        }
        frontier.clear();
        for &w in &candidates {
            if activated_at[w].is_none() && hits[w] >= thresholds.get(w) {
                activated_at[w] = Some(round);
                frontier.push(w);
            }
        }
        if frontier.is_empty() {
            break;
        }
    }
    Ok(ActivationTrace { lambda, activated_at })
}

/// Which of the three selection problems an instance poses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// `|S| <= β` and `|Active[S,λ]| >= α`.
    BudgetRequirement,
    /// `|S| <= β` and `A ⊆ Active[S,λ]`.
    BudgetTargets,
    /// minimum `|S|` with `A ⊆ Active[S,λ]`.
    Targets,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub graph: Graph,
    pub thresholds: Thresholds,
    pub lambda: usize,
    pub budget: Option<usize>,
    pub requirement: Option<usize>,
    pub targets: Option<Vec<usize>>,
}

impl Instance {
    pub fn new(graph: Graph, thresholds: Thresholds, lambda: usize) -> Result<Self> {
        if thresholds.len() != graph.n() {
            return Err(Error::ThresholdCount { expected: graph.n(), got: thresholds.len() });
        }
        Ok(Instance { graph, thresholds, lambda, budget: None, requirement: None, targets: None })
    }

    pub fn with_budget(mut self, budget: usize) -> Result<Self> {
        self.check_count("budget", budget)?;
        self.budget = Some(budget);
        Ok(self)
    }

    pub fn with_requirement(mut self, requirement: usize) -> Result<Self> {
        self.check_count("alpha", requirement)?;
        self.requirement = Some(requirement);
        Ok(self)
    }

    pub fn with_targets(mut self, mut targets: Vec<usize>) -> Result<Self> {
        for &v in &targets {
            self.graph.check_vertex(v)?;
        }
        targets.sort_unstable();
        targets.dedup();
        self.targets = Some(targets);
        Ok(self)
    }

    fn check_count(&self, field: &'static str, value: usize) -> Result<()> {
        if value > self.graph.n() {
            return Err(Error::ParameterRange { field, value, n: self.graph.n() });
        }
        Ok(())
    }

    /// The variant implied by which optional fields are present.
    pub fn infer_variant(&self) -> Result<Variant> {
        match (&self.targets, self.budget, self.requirement) {
            (Some(_), Some(_), _) => Ok(Variant::BudgetTargets),
            (Some(_), None, _) => Ok(Variant::Targets),
            (None, Some(_), Some(_)) => Ok(Variant::BudgetRequirement),
            (None, None, _) => Err(Error::MissingField("targets")),
            (None, Some(_), None) => Err(Error::MissingField("alpha")),
        }
    }

    pub fn budget(&self) -> Result<usize> {
        self.budget.ok_or(Error::MissingField("budget"))
    }

    pub fn requirement(&self) -> Result<usize> {
        self.requirement.ok_or(Error::MissingField("alpha"))
    }

    pub fn targets(&self) -> Result<&[usize]> {
        self.targets.as_deref().ok_or(Error::MissingField("targets"))
    }
}

/// Checks the conditions of `variant` for the seed set `seeds`.
pub fn verify_solution(instance: &Instance, variant: Variant, seeds: &[usize]) -> Result<bool> {
    let trace = simulate(&instance.graph, &instance.thresholds, seeds, instance.lambda)?;
    let size = distinct_count(seeds, instance.graph.n());
    Ok(match variant {
        Variant::BudgetRequirement => {
            size <= instance.budget()? && trace.final_size() >= instance.requirement()?
        }
        Variant::BudgetTargets => {
            size <= instance.budget()? && trace.covers(instance.targets()?)
        }
        Variant::Targets => trace.covers(instance.targets()?),
    })
}

fn distinct_count(vertices: &[usize], n: usize) -> usize {
    let mut seen = vec![false; n];
    vertices.iter().filter(|&&v| !std::mem::replace(&mut seen[v], true)).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3() -> (Graph, Thresholds) {
        (Graph::new(3, &[(0, 1), (1, 2)]).unwrap(), Thresholds::new(vec![1, 2, 1]))
    }

    #[test]
    fn full_seed_stays_full() {
        let (g, t) = p3();
        let trace = simulate(&g, &t, &[0, 1, 2], 3).unwrap();
        assert!(trace.rounds().iter().all(|r| r == &vec![0, 1, 2]));
    }

    #[test]
    fn empty_seed_stays_empty() {
        let (g, t) = p3();
        let trace = simulate(&g, &t, &[], 4).unwrap();
        assert!(trace.rounds().iter().all(Vec::is_empty));
        assert_eq!(trace.sizes(), vec![0; 5]);
    }

    #[test]
    fn p3_middle_needs_two_neighbors() {
        let (g, t) = p3();
        let trace = simulate(&g, &t, &[0], 2).unwrap();
        assert_eq!(trace.rounds(), vec![vec![0], vec![0], vec![0]]);
    }

    #[test]
    fn zero_threshold_joins_at_round_one() {
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        let t = Thresholds::new(vec![0, 1]);
        let trace = simulate(&g, &t, &[], 3).unwrap();
        assert_eq!(trace.activation_round(0), Some(1));
        assert_eq!(trace.activation_round(1), Some(2));
    }

    #[test]
    fn out_of_range_seed_is_an_error() {
        let (g, t) = p3();
        assert_eq!(
            simulate(&g, &t, &[3], 1),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        );
    }

    #[test]
    fn verify_variants() {
        let (g, t) = p3();
        let inst = Instance::new(g, t, 1).unwrap().with_targets(vec![0, 1, 2]).unwrap();
        assert!(verify_solution(&inst, Variant::Targets, &[1]).unwrap());
        assert!(!verify_solution(&inst, Variant::Targets, &[0]).unwrap());
        assert_eq!(
            verify_solution(&inst, Variant::BudgetTargets, &[1]),
            Err(Error::MissingField("budget"))
        );

        let (g, t) = p3();
        let empty = Instance::new(g, t, 0).unwrap().with_targets(vec![]).unwrap();
        assert!(verify_solution(&empty, Variant::Targets, &[]).unwrap());
    }

    #[test]
    fn seeding_alpha_vertices_meets_requirement() {
        let (g, t) = p3();
        let inst = Instance::new(g, t, 0)
            .unwrap()
            .with_budget(2)
            .unwrap()
            .with_requirement(2)
            .unwrap();
        assert!(verify_solution(&inst, Variant::BudgetRequirement, &[0, 2]).unwrap());
        assert!(!verify_solution(&inst, Variant::BudgetRequirement, &[0]).unwrap());
    }

    #[test]
    fn variant_inference() {
        let (g, t) = p3();
        let base = Instance::new(g, t, 1).unwrap();
        assert_eq!(base.infer_variant(), Err(Error::MissingField("targets")));
        let lba = base.clone().with_budget(1).unwrap().with_requirement(2).unwrap();
        assert_eq!(lba.infer_variant(), Ok(Variant::BudgetRequirement));
        let la = base.clone().with_targets(vec![1]).unwrap();
        assert_eq!(la.infer_variant(), Ok(Variant::Targets));
        assert!(base.with_budget(4).is_err());
    }
}

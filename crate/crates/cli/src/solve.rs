//! Solver dispatch for `tss solve`.

use std::time::Instant;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use tss_core::cwd::{CwdSolver, TargetSolver};
use tss_core::kexpr::{normalize_irredundant, KExpr};
use tss_core::oracle::BruteForce;
use tss_core::tree::{solve_detailed, TreeOptions};
use tss_core::{simulate, verify_solution, Instance, Variant};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Tree,
    Cwd,
    Brute,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    /// Budget β and activation requirement α.
    #[value(name = "lba")]
    Lba,
    /// Budget β and target set A.
    #[value(name = "lbA")]
    LbA,
    /// Smallest seed set activating A.
    #[value(name = "lA")]
    LA,
}

impl VariantArg {
    pub fn variant(self) -> Variant {
        match self {
            VariantArg::Lba => Variant::BudgetRequirement,
            VariantArg::LbA => Variant::BudgetTargets,
            VariantArg::LA => Variant::Targets,
        }
    }

    pub fn of(v: Variant) -> Self {
        match v {
            Variant::BudgetRequirement => VariantArg::Lba,
            Variant::BudgetTargets => VariantArg::LbA,
            Variant::Targets => VariantArg::LA,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            VariantArg::Lba => "lba",
            VariantArg::LbA => "lbA",
            VariantArg::LA => "lA",
        }
    }
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Tree => "tree",
            Method::Cwd => "cwd",
            Method::Brute => "brute",
        }
    }
}

/// Result document of `tss solve`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolveReport {
    pub solver: String,
    pub variant: String,
    pub lambda: usize,
    /// Decision variants: whether a seed set exists. `lA`: the optimum size.
    pub answer: serde_json::Value,
    pub feasible: bool,
    pub target_set: Option<Vec<usize>>,
    /// `|Active[S, i]|` for `i = 0..=λ` under the returned set.
    pub trace_sizes: Vec<usize>,
    pub wall_time_ms: f64,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SolveOptions {
    pub root: Option<usize>,
    pub strict: bool,
}

pub fn run(
    method: Method,
    variant: VariantArg,
    instance: &Instance,
    kexpr: Option<&KExpr>,
    opts: SolveOptions,
) -> Result<SolveReport, CliError> {
    if opts.root.is_some() && method != Method::Tree {
        return Err(CliError::Usage("--root only applies to --method tree".into()));
    }
    if let Some(r) = opts.root {
        instance.graph.check_vertex(r)?;
    }
    let start = Instant::now();
    let seeds = match method {
        Method::Tree => tree(variant, instance, opts)?,
        Method::Brute => brute(variant, instance)?,
        Method::Cwd => {
            let expr = kexpr.ok_or_else(|| CliError::Usage("--method cwd needs a kexpr in the instance".into()))?;
            cwd(variant, instance, expr)?
        }
    };
    let wall_time_ms = start.elapsed().as_secs_f64() * 1e3;

    let trace_sizes = match &seeds {
        Some(s) => simulate(&instance.graph, &instance.thresholds, s, instance.lambda)?.sizes(),
        None => Vec::new(),
    };
    if let Some(s) = &seeds {
        debug_assert!(verify_solution(instance, variant.variant(), s).unwrap_or(false));
    }
    let answer = match variant {
        VariantArg::LA => serde_json::json!(seeds.as_ref().map_or(0, Vec::len)),
        _ => serde_json::json!(seeds.is_some()),
    };
    Ok(SolveReport {
        solver: method.name().into(),
        variant: variant.name().into(),
        lambda: instance.lambda,
        answer,
        feasible: seeds.is_some(),
        target_set: seeds,
        trace_sizes,
        wall_time_ms,
    })
}

fn tree(variant: VariantArg, inst: &Instance, opts: SolveOptions) -> Result<Option<Vec<usize>>, CliError> {
    if variant == VariantArg::Lba {
        return Err(CliError::Usage("the tree solver handles lbA and lA only".into()));
    }
    if !inst.graph.is_forest() {
        return Err(tss_core::Error::NotATree("has a cycle").into());
    }
    let topts = TreeOptions { strict: opts.strict, root: opts.root };
    let s = solve_detailed(&inst.graph, &inst.thresholds, inst.lambda, inst.targets()?, topts)?.seeds;
    Ok(match variant {
        VariantArg::LbA => (s.len() <= inst.budget()?).then_some(s),
        _ => Some(s),
    })
}

fn brute(variant: VariantArg, inst: &Instance) -> Result<Option<Vec<usize>>, CliError> {
    let bf = BruteForce::new(&inst.graph, &inst.thresholds)?;
    Ok(match variant {
        VariantArg::Lba => bf.decision(inst.lambda, inst.budget()?, inst.requirement()?),
        VariantArg::LbA => bf.select_targets(inst.lambda, inst.budget()?, inst.targets()?)?,
        VariantArg::LA => Some(bf.min_target(inst.lambda, inst.targets()?)?),
    })
}

/// The memoized recursion follows the expression's depth, so it gets a
/// thread with a generous stack.
fn cwd(variant: VariantArg, inst: &Instance, expr: &KExpr) -> Result<Option<Vec<usize>>, CliError> {
    let expr = normalize_irredundant(expr)?;
    let inst = inst.clone();
    let handle = std::thread::Builder::new()
        .stack_size(1 << 30)
        .spawn(move || -> Result<Option<Vec<usize>>, CliError> {
            let t = &inst.thresholds;
            Ok(match variant {
                VariantArg::Lba => {
                    CwdSolver::new(&expr, t, inst.lambda)?.select(inst.budget()?, inst.requirement()?)
                }
                VariantArg::LbA => TargetSolver::new(&expr, t, inst.lambda, inst.targets()?)?.select(inst.budget()?),
                VariantArg::LA => Some(TargetSolver::new(&expr, t, inst.lambda, inst.targets()?)?.minimum()),
            })
        })
        .map_err(|e| CliError::Usage(format!("cannot start solver thread: {e}")))?;
    handle.join().unwrap_or_else(|_| Err(CliError::Usage("cwd solver panicked".into())))
}

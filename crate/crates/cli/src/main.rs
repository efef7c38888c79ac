//! `tss`: latency-bounded target set selection from the command line.
//!
//! Every command writes one JSON document to standard output (or
//! `--output`). Exit codes: 0 success, 1 infeasible decision or redundant
//! expression, 2 input error.

mod document;
mod generate;
mod solve;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;
use tss_core::kexpr::{check_irredundant, evaluate, format, lift_for_targets, parse, KExpr};
use tss_core::simulate;

use document::{load_instance, read_document};
use generate::GenCommand;
use solve::{Method, SolveOptions, VariantArg};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] tss_core::Error),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{}: invalid instance document: {source}", path.display())]
    Schema { path: PathBuf, source: serde_json::Error },
    #[error("{0}")]
    Usage(String),
}

#[derive(Parser, Debug)]
#[command(name = "tss", version, about = "Latency-bounded target set selection")]
struct Cli {
    /// Write the result document here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the activation process from a seed set.
    Simulate {
        #[arg(long)]
        instance: PathBuf,
        /// Comma-separated seed vertices.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        seed: Vec<usize>,
        /// Override the document's latency bound.
        #[arg(long)]
        lambda: Option<usize>,
    },
    /// Solve an instance with one of the exact methods.
    Solve {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, value_enum, default_value = "tree")]
        method: Method,
        /// Defaults to the variant implied by the document's fields.
        #[arg(long, value_enum)]
        variant: Option<VariantArg>,
        /// Root for the tree solver.
        #[arg(long)]
        root: Option<usize>,
        /// Tree solver: reject thresholds outside [1, d(v)] and λ = 0.
        #[arg(long)]
        strict: bool,
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long)]
        alpha: Option<usize>,
        #[arg(long)]
        lambda: Option<usize>,
    },
    /// Work with k-expressions.
    Kexpr {
        #[command(subcommand)]
        action: KexprCommand,
    },
    /// Generate instance documents.
    Gen {
        #[command(subcommand)]
        family: GenCommand,
    },
    /// Timing runs.
    Bench {
        #[command(subcommand)]
        kind: BenchCommand,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct ExprSource {
    /// Expression text.
    #[arg(long)]
    expr: Option<String>,
    /// File holding the expression text.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Instance document with a `kexpr` field.
    #[arg(long)]
    instance: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum KexprCommand {
    /// Parse and print in canonical form.
    Parse(ExprSource),
    /// Evaluate to a labeled graph.
    Eval(ExprSource),
    /// List etas that add no new edge.
    Check(ExprSource),
    /// Give target vertices their own labels.
    Lift {
        #[command(flatten)]
        source: ExprSource,
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        targets: Option<Vec<usize>>,
        /// Label offset; defaults to the largest label used.
        #[arg(long)]
        k: Option<u32>,
    },
}

#[derive(Subcommand, Debug)]
enum BenchCommand {
    /// Tree solver on paths of increasing length (t = 1, A = V, λ = n).
    Scaling {
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 5)]
        reps: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let out = cli.output.as_deref();
    match cli.command {
        Command::Simulate { instance, seed, lambda } => {
            let loaded = load_instance(&instance)?;
            let inst = &loaded.instance;
            let lambda = lambda.unwrap_or(inst.lambda);
            let trace = simulate(&inst.graph, &inst.thresholds, &seed, lambda)?;
            let covers = inst.targets.as_ref().map(|a| trace.covers(a));
            let mut doc = json!({
                "command": "simulate",
                "lambda": lambda,
                "seed": trace.seed(),
                "trace_sizes": trace.sizes(),
                "rounds": trace.rounds(),
                "activation_round": (0..inst.graph.n()).map(|v| trace.activation_round(v)).collect::<Vec<_>>(),
                "final_size": trace.final_size(),
            });
            if let Some(c) = covers {
                doc["covers_targets"] = json!(c);
            }
            emit(&doc, out)?;
            Ok(0)
        }
        Command::Solve { instance, method, variant, root, strict, budget, alpha, lambda } => {
            let mut doc = read_document(&instance)?;
            doc.budget = budget.or(doc.budget);
            doc.alpha = alpha.or(doc.alpha);
            doc.lambda = lambda.unwrap_or(doc.lambda);
            let loaded = doc.validate()?;
            let variant = match variant {
                Some(v) => v,
                None => VariantArg::of(loaded.instance.infer_variant()?),
            };
            let report =
                solve::run(method, variant, &loaded.instance, loaded.kexpr.as_ref(), SolveOptions { root, strict })?;
            emit(&report, out)?;
            Ok(if report.feasible { 0 } else { 1 })
        }
        Command::Kexpr { action } => kexpr(action, out),
        Command::Gen { family } => {
            let doc = generate::generate(&family)?;
            emit(&doc, out)?;
            Ok(0)
        }
        Command::Bench { kind: BenchCommand::Scaling { sizes, reps } } => {
            let doc = bench_scaling(&sizes, reps.max(1))?;
            emit(&doc, out)?;
            Ok(0)
        }
    }
}

fn read_expr(src: &ExprSource) -> Result<(KExpr, Option<Vec<usize>>), CliError> {
    let (text, targets) = if let Some(t) = &src.expr {
        (t.clone(), None)
    } else if let Some(p) = &src.file {
        let t = std::fs::read_to_string(p).map_err(|source| CliError::Io { path: p.clone(), source })?;
        (t, None)
    } else if let Some(p) = &src.instance {
        let loaded = load_instance(p)?;
        let doc = read_document(p)?;
        let text = doc.kexpr.ok_or_else(|| CliError::Usage(format!("{} has no kexpr", p.display())))?;
        (text, loaded.instance.targets)
    } else {
        return Err(CliError::Usage("no expression given".into()));
    };
    let e = parse(&text).map_err(tss_core::Error::from)?;
    Ok((e, targets))
}

fn kexpr(action: KexprCommand, out: Option<&Path>) -> Result<u8, CliError> {
    match action {
        KexprCommand::Parse(src) => {
            let (e, _) = read_expr(&src)?;
            emit(
                &json!({
                    "kexpr": format(&e),
                    "vertices": e.vertex_count(),
                    "nodes": e.len(),
                    "max_label": e.max_label(),
                    "width": e.width(),
                }),
                out,
            )?;
            Ok(0)
        }
        KexprCommand::Eval(src) => {
            let (e, _) = read_expr(&src)?;
            let h = evaluate(&e);
            emit(
                &json!({
                    "n": h.graph.n(),
                    "edges": h.graph.edges().into_iter().map(|(u, v)| [u, v]).collect::<Vec<_>>(),
                    "labels": h.labels,
                    "names": h.names,
                }),
                out,
            )?;
            Ok(0)
        }
        KexprCommand::Check(src) => {
            let (e, _) = read_expr(&src)?;
            let violations: Vec<_> = check_irredundant(&e)
                .into_iter()
                .map(|v| json!({ "node": v.node.0, "a": v.a, "b": v.b, "edge": [v.edge.0, v.edge.1] }))
                .collect();
            let clean = violations.is_empty();
            emit(&json!({ "irredundant": clean, "violations": violations }), out)?;
            Ok(if clean { 0 } else { 1 })
        }
        KexprCommand::Lift { source, targets, k } => {
            let (e, doc_targets) = read_expr(&source)?;
            let targets = targets
                .or(doc_targets)
                .ok_or_else(|| CliError::Usage("lift needs --targets or an instance with targets".into()))?;
            let k = k.unwrap_or_else(|| e.max_label());
            let lifted = lift_for_targets(&e, &targets, k)?;
            emit(&json!({ "kexpr": format(&lifted), "k": k, "targets": targets }), out)?;
            Ok(0)
        }
    }
}

fn bench_scaling(sizes: &[usize], reps: usize) -> Result<serde_json::Value, CliError> {
    let mut seconds = Vec::new();
    for &n in sizes {
        if n == 0 {
            return Err(CliError::Usage("sizes must be positive".into()));
        }
        let (g, t) = generate::path_instance(n);
        let all: Vec<usize> = (0..n).collect();
        let mut best = f64::INFINITY;
        for _ in 0..reps {
            let start = Instant::now();
            let s = tss_core::tree::solve(&g, &t, n, &all)?;
            best = best.min(start.elapsed().as_secs_f64());
            std::hint::black_box(s);
        }
        seconds.push(best);
    }
    let ratios: Vec<f64> = seconds.windows(2).map(|w| w[1] / w[0]).collect();
    Ok(json!({ "family": "path", "sizes": sizes, "reps": reps, "seconds": seconds, "ratios": ratios }))
}

fn emit<T: Serialize>(value: &T, out: Option<&Path>) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).expect("documents serialize");
    text.push('\n');
    match out {
        Some(p) => std::fs::write(p, text).map_err(|source| CliError::Io { path: p.to_path_buf(), source }),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io { path: PathBuf::from("<stdout>"), source }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn variant_names() {
        let c = Cli::try_parse_from(["tss", "solve", "--instance", "x", "--variant", "lbA"]).unwrap();
        assert!(matches!(c.command, Command::Solve { variant: Some(VariantArg::LbA), .. }));
        assert!(Cli::try_parse_from(["tss", "solve", "--instance", "x", "--bogus"]).is_err());
    }
}

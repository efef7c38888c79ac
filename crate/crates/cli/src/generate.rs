//! `tss gen`: instance documents for standard families.

use clap::{Args, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tss_core::kexpr::{cograph_expression, evaluate, path_expression, star_expression, tree_expression};
use tss_core::random::{random_subset, random_tree};
use tss_core::{Graph, Thresholds};

use crate::document::InstanceDocument;
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ThresholdMode {
    /// t(v) = 1.
    One,
    /// t(v) = ceil(d(v) / 2).
    Majority,
    /// t(v) = d(v).
    Degree,
    /// Uniform in [1, d(v)].
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TargetMode {
    All,
    None,
    /// Each vertex with probability 1/2.
    Random,
}

#[derive(Args, Debug, Clone)]
pub struct GenArgs {
    /// Vertex count; required except for cographs (default 6).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: Option<u64>,
    /// Latency bound; defaults to n.
    #[arg(long)]
    pub lambda: Option<usize>,
    #[arg(long, value_enum, default_value = "one")]
    pub thresholds: ThresholdMode,
    #[arg(long, value_enum, default_value = "all")]
    pub targets: TargetMode,
    #[arg(long)]
    pub budget: Option<usize>,
    #[arg(long)]
    pub alpha: Option<usize>,
    /// Random seed for the graph, thresholds and targets.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Subcommand, Debug)]
pub enum GenCommand {
    /// The path 0 - 1 - ... - (n-1).
    Path(GenArgs),
    /// Center 0, leaves 1..n.
    Star(GenArgs),
    /// Uniformly random labeled tree.
    RandomTree(GenArgs),
    /// Random cograph with its 2-expression.
    Cograph(GenArgs),
}

/// Unit thresholds on a path, used by the scaling benchmark.
pub fn path_instance(n: usize) -> (Graph, Thresholds) {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    (Graph::new(n, &edges).expect("path"), Thresholds::uniform(n, 1))
}

pub fn generate(cmd: &GenCommand) -> Result<InstanceDocument, CliError> {
    let (args, family) = match cmd {
        GenCommand::Path(a) => (a, "path"),
        GenCommand::Star(a) => (a, "star"),
        GenCommand::RandomTree(a) => (a, "tree"),
        GenCommand::Cograph(a) => (a, "cograph"),
    };
    let n = match (args.n, family) {
        (Some(n), _) => usize::try_from(n).map_err(|_| CliError::Usage("n is too large".into()))?,
        (None, "cograph") => 6,
        (None, _) => return Err(CliError::Usage(format!("gen {family} needs --n"))),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let expr = match family {
        "path" => path_expression(n),
        "star" => star_expression(n),
        "tree" => tree_expression(&random_tree(&mut rng, n), 0)?,
        _ => cograph_expression(&mut rng, n),
    };
    let graph = evaluate(&expr).graph;
    let thresholds = Thresholds::new(
        (0..n)
            .map(|v| {
                let d = graph.degree(v).max(1);
                (match args.thresholds {
                    ThresholdMode::One => 1,
                    ThresholdMode::Majority => d.div_ceil(2),
                    ThresholdMode::Degree => d,
                    ThresholdMode::Random => rng.gen_range(1..=d),
                }) as u32
            })
            .collect(),
    );
    let mut doc = InstanceDocument::from_graph(&graph, &thresholds, args.lambda.unwrap_or(n)).with_kexpr(&expr);
    doc.targets = match args.targets {
        TargetMode::All => Some((0..n).collect()),
        TargetMode::None => None,
        TargetMode::Random => Some(random_subset(&mut rng, n, 0.5)),
    };
    doc.budget = args.budget;
    doc.alpha = args.alpha;
    // Catch out-of-range budgets and the like before anything is written.
    doc.validate()?;
    Ok(doc)
}

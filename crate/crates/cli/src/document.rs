//! The JSON instance document and its conversion into a validated instance.

use std::path::Path;

use serde::{Deserialize, Serialize};
use tss_core::kexpr::{evaluate, format, parse, KExpr};
use tss_core::{Graph, Instance, Thresholds};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDocument {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    pub thresholds: Vec<u32>,
    pub lambda: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub targets: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kexpr: Option<String>,
}

/// A checked document: the instance plus the parsed expression, if any.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub instance: Instance,
    pub kexpr: Option<KExpr>,
}

impl InstanceDocument {
    pub fn from_graph(graph: &Graph, thresholds: &Thresholds, lambda: usize) -> Self {
        InstanceDocument {
            n: graph.n(),
            edges: graph.edges().into_iter().map(|(u, v)| [u, v]).collect(),
            thresholds: thresholds.as_slice().to_vec(),
            lambda,
            budget: None,
            alpha: None,
            targets: None,
            kexpr: None,
        }
    }

    pub fn with_kexpr(mut self, expr: &KExpr) -> Self {
        self.kexpr = Some(format(expr));
        self
    }

    pub fn validate(&self) -> Result<Loaded, CliError> {
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|&[u, v]| (u, v)).collect();
        let graph = Graph::new(self.n, &edges)?;
        let thresholds = Thresholds::for_graph(self.thresholds.clone(), &graph)?;
        let mut instance = Instance::new(graph, thresholds, self.lambda)?;
        if let Some(b) = self.budget {
            instance = instance.with_budget(b)?;
        }
        if let Some(a) = self.alpha {
            instance = instance.with_requirement(a)?;
        }
        if let Some(t) = &self.targets {
            instance = instance.with_targets(t.clone())?;
        }
        let kexpr = match &self.kexpr {
            None => None,
            Some(text) => {
                let e = parse(text).map_err(tss_core::Error::from)?;
                check_expression(&e, &instance.graph)?;
                Some(e)
            }
        };
        Ok(Loaded { instance, kexpr })
    }
}

/// The expression must build exactly the document's graph, vertex for vertex.
pub fn check_expression(expr: &KExpr, graph: &Graph) -> Result<(), CliError> {
    let built = evaluate(expr).graph;
    if built.n() != graph.n() {
        return Err(tss_core::Error::VertexCountMismatch { expr: built.n(), graph: graph.n() }.into());
    }
    if built != *graph {
        let mut extra: Vec<_> = built.edges().into_iter().filter(|&(u, v)| !graph.has_edge(u, v)).collect();
        let mut missing: Vec<_> = graph.edges().into_iter().filter(|&(u, v)| !built.has_edge(u, v)).collect();
        extra.truncate(3);
        missing.truncate(3);
        return Err(CliError::Usage(format!(
            "kexpr does not match the edge list (extra edges {extra:?}, missing edges {missing:?})"
        )));
    }
    Ok(())
}

pub fn read_document(path: &Path) -> Result<InstanceDocument, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    serde_json::from_str(&text).map_err(|source| CliError::Schema { path: path.to_path_buf(), source })
}

pub fn load_instance(path: &Path) -> Result<Loaded, CliError> {
    read_document(path)?.validate()
}

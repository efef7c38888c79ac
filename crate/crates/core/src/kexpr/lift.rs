use super::{Builder, KExpr, Label, Node, NodeId};
use crate::error::{Error, Result};

/// Rewrites a k-expression over `2k` labels so that exactly the vertices in
/// `targets` carry labels above `k`.
///
/// Target leaves `a(v)` become `(a+k)(v)`. Each `eta(i,j)` becomes
/// `eta(i,j) ∘ eta(i,j+k) ∘ eta(i+k,j) ∘ eta(i+k,j+k)` and each `rho(i->j)`
/// becomes `rho(i->j) ∘ rho(i+k->j+k)`. The lifted expression defines the
/// same graph and stays irredundant when the input is.
pub fn lift_for_targets(expr: &KExpr, targets: &[usize], k: Label) -> Result<KExpr> {
    let vm = expr.vertex_map();
    let mut is_target = vec![false; vm.len()];
    for &v in targets {
        if v >= vm.len() {
            return Err(Error::UnknownVertex(v.to_string()));
        }
        is_target[v] = true;
    }
    if expr.max_label() > k {
        return Err(Error::Malformed(format!(
            "expression uses label {} above k = {k}",
            expr.max_label()
        )));
    }

    let mut out = Builder::default();
    let mut remap = vec![NodeId(0); expr.len()];
    for id in expr.ids() {
        remap[id.0] = match expr.node(id) {
            Node::Leaf { label, name } => {
                let v = vm.vertex_of(id).expect("leaf has a vertex");
                let label = if is_target[v] { label + k } else { *label };
                out.leaf(label, name.clone())
            }
            Node::Union(l, r) => out.union(remap[l.0], remap[r.0]),
            Node::Eta { a, b, child } => {
                let (i, j) = (*a, *b);
                let c = out.eta(i + k, j + k, remap[child.0]);
                let c = out.eta(i + k, j, c);
                let c = out.eta(i, j + k, c);
                out.eta(i, j, c)
            }
            Node::Rho { from, to, child } => {
                let c = out.rho(from + k, to + k, remap[child.0]);
                out.rho(*from, *to, c)
            }
        };
    }
    Ok(out.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kexpr::{check_irredundant, evaluate, parse};

    #[test]
    fn lifting_p2_relabels_target() {
        let e = parse("eta(2,1, U(2(v), 1(u)))").unwrap();
        let v = e.vertex_map().find("v").unwrap();
        let lifted = lift_for_targets(&e, &[v], 2).unwrap();
        let h = evaluate(&lifted);
        let hv = h.index_of("v").unwrap();
        assert_eq!(h.labels[hv], 4);
        assert_eq!(h.graph.edge_count(), 1);
        assert!(check_irredundant(&lifted).is_empty());
    }

    #[test]
    fn empty_target_set_keeps_labels() {
        let e = parse("rho(2->1, eta(2,1, U(2(v), 1(u))))").unwrap();
        let lifted = lift_for_targets(&e, &[], 2).unwrap();
        assert!(lifted.len() > e.len());
        let h = evaluate(&lifted);
        assert!(h.labels.iter().all(|&l| l <= 2));
        assert_eq!(h.graph, evaluate(&e).graph);
    }

    #[test]
    fn unknown_target_is_rejected() {
        let e = parse("1(u)").unwrap();
        assert_eq!(lift_for_targets(&e, &[3], 1), Err(Error::UnknownVertex("3".into())));
    }
}

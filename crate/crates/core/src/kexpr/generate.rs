//! Expressions for graph families: paths, stars, trees, cographs, and random
//! expressions for tests. Vertex names are the decimal vertex ids.

use rand::seq::SliceRandom;
use rand::Rng;

use super::{normalize_irredundant, Builder, KExpr, Label, NodeId};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// The path `0 - 1 - … - (n-1)` as an irredundant 3-expression
/// (2-expression for `n <= 2`).
pub fn path_expression(n: usize) -> KExpr {
    assert!(n > 0, "path needs at least one vertex");
    let mut b = Builder::default();
    if n == 1 {
        b.leaf(1, "0");
        return b.finish();
    }
    let l = b.leaf(1, "0");
    let r = b.leaf(2, "1");
    let u = b.union(l, r);
    let mut cur = b.eta(2, 1, u);
    for i in 2..n {
        if i > 2 {
            cur = b.rho(2, 1, cur);
            cur = b.rho(3, 2, cur);
        }
        let leaf = b.leaf(3, i.to_string());
        let u = b.union(cur, leaf);
        cur = b.eta(3, 2, u);
    }
    b.finish()
}

/// The star with center 0 and leaves `1..n` as a 2-expression.
pub fn star_expression(n: usize) -> KExpr {
    assert!(n > 0, "star needs at least one vertex");
    let mut b = Builder::default();
    let center = b.leaf(1, "0");
    if n == 1 {
        return b.finish();
    }
    let mut leaves = b.leaf(2, "1");
    for i in 2..n {
        let l = b.leaf(2, i.to_string());
        leaves = b.union(leaves, l);
    }
    let u = b.union(center, leaves);
    b.eta(1, 2, u);
    b.finish()
}

/// An irredundant expression of width at most 3 for a tree.
///
/// Each subtree is built with its root labeled 2 and every other vertex
/// labeled 1: the parent starts as label 3, is joined to each child
/// subtree's root, the child's root is folded into label 1, and finally the
/// parent moves to label 2.
pub fn tree_expression(tree: &Graph, root: usize) -> Result<KExpr> {
    tree.check_vertex(root)?;
    if !tree.is_tree() {
        return Err(Error::NotATree(if tree.is_forest() { "disconnected" } else { "has a cycle" }));
    }
    let mut b = Builder::default();
    if tree.n() == 1 {
        b.leaf(1, root.to_string());
        return Ok(b.finish());
    }

    struct Frame {
        v: usize,
        parent: usize,
        next: usize,
        cur: Option<NodeId>,
    }
    let mut stack = vec![Frame { v: root, parent: usize::MAX, next: 0, cur: None }];
    let mut returned: Option<NodeId> = None;
    while let Some(top) = stack.last_mut() {
        if let Some(child) = returned.take() {
            let cur = top.cur.expect("internal frame has a node");
            let u = b.union(cur, child);
            let e = b.eta(3, 2, u);
            top.cur = Some(b.rho(2, 1, e));
        }
        let neighbors = tree.neighbors(top.v);
        while top.next < neighbors.len() && neighbors[top.next] == top.parent {
            top.next += 1;
        }
        if top.next < neighbors.len() {
            if top.cur.is_none() {
                top.cur = Some(b.leaf(3, top.v.to_string()));
            }
            let child = neighbors[top.next];
            top.next += 1;
            let parent = top.v;
            stack.push(Frame { v: child, parent, next: 0, cur: None });
            continue;
        }
        let done = match top.cur {
            None => b.leaf(2, top.v.to_string()),
            Some(cur) => b.rho(3, 2, cur),
        };
        stack.pop();
        returned = Some(done);
    }
    Ok(b.finish())
}

/// A random cograph on `n` vertices as an irredundant 2-expression.
pub fn cograph_expression<R: Rng + ?Sized>(rng: &mut R, n: usize) -> KExpr {
    assert!(n > 0, "cograph needs at least one vertex");
    let mut ids: Vec<usize> = (0..n).collect();
    ids.shuffle(rng);
    let mut b = Builder::default();
    cotree(rng, &mut b, &ids);
    b.finish()
}

fn cotree<R: Rng + ?Sized>(rng: &mut R, b: &mut Builder, ids: &[usize]) -> NodeId {
    if ids.len() == 1 {
        return b.leaf(1, ids[0].to_string());
    }
    let split = rng.gen_range(1..ids.len());
    let l = cotree(rng, b, &ids[..split]);
    let r = cotree(rng, b, &ids[split..]);
    if rng.gen_bool(0.5) {
        b.union(l, r)
    } else {
        let r = b.rho(1, 2, r);
        let u = b.union(l, r);
        let e = b.eta(1, 2, u);
        b.rho(2, 1, e)
    }
}

/// A random well-formed expression on `n` vertices with labels in
/// `1..=max_label` (at least 2). Not necessarily irredundant.
pub fn random_expression<R: Rng + ?Sized>(rng: &mut R, n: usize, max_label: Label) -> KExpr {
    assert!(n > 0 && max_label >= 2);
    let mut parts: Vec<KExpr> =
        (0..n).map(|v| KExpr::leaf(rng.gen_range(1..=max_label), format!("v{v}"))).collect();
    parts.shuffle(rng);
    let mut extra = rng.gen_range(0..=n);
    while parts.len() > 1 || extra > 0 {
        let roll = rng.gen_range(0..10);
        let i = rng.gen_range(0..parts.len());
        if parts.len() > 1 && roll < 4 {
            let right = parts.swap_remove(i);
            let j = rng.gen_range(0..parts.len());
            let left = parts.swap_remove(j);
            parts.push(KExpr::union(left, right));
            continue;
        }
        let a = rng.gen_range(1..=max_label);
        let mut b = rng.gen_range(1..max_label);
        if b >= a {
            b += 1;
        }
        let part = parts.swap_remove(i);
        parts.push(if roll < 7 { KExpr::eta(a, b, part) } else { KExpr::rho(a, b, part) });
        if parts.len() == 1 {
            extra = extra.saturating_sub(1);
        }
    }
    parts.pop().expect("at least one part")
}

/// A random irredundant expression on `n` vertices using labels `1..=k`.
pub fn random_irredundant_expression<R: Rng + ?Sized>(rng: &mut R, n: usize, k: Label) -> KExpr {
    loop {
        let e = random_expression(rng, n, k);
        if let Ok(e) = normalize_irredundant(&e) {
            return e;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kexpr::{check_irredundant, evaluate, format};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn edges_of(e: &KExpr) -> Vec<(usize, usize)> {
        evaluate(e).graph.edges()
    }

    #[test]
    fn path_expression_is_a_path() {
        for n in 1..8 {
            let e = path_expression(n);
            let want: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
            assert_eq!(edges_of(&e), want, "n = {n}");
            assert!(check_irredundant(&e).is_empty());
            assert!(e.width() <= 3);
        }
    }

    #[test]
    fn star_expression_is_a_star() {
        let e = star_expression(4);
        assert_eq!(edges_of(&e), vec![(0, 1), (0, 2), (0, 3)]);
        assert_eq!(e.width(), 2);
    }

    #[test]
    fn single_vertex_tree() {
        let g = Graph::empty(1);
        assert_eq!(format(&tree_expression(&g, 0).unwrap()), "1(0)");
    }

    #[test]
    fn p5_tree_expression() {
        let g = Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        for root in 0..5 {
            let e = tree_expression(&g, root).unwrap();
            assert_eq!(edges_of(&e), g.edges());
            assert!(e.width() <= 3);
            assert!(check_irredundant(&e).is_empty());
        }
    }

    #[test]
    fn tree_expression_rejects_non_trees() {
        let cycle = Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(matches!(tree_expression(&cycle, 0), Err(Error::NotATree(_))));
        let forest = Graph::new(3, &[(0, 1)]).unwrap();
        assert!(matches!(tree_expression(&forest, 0), Err(Error::NotATree(_))));
    }

    #[test]
    fn cographs_are_irredundant() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..10 {
            let e = cograph_expression(&mut rng, n);
            assert!(e.validate().is_ok());
            assert!(check_irredundant(&e).is_empty());
            assert!(e.width() <= 2);
        }
    }

    #[test]
    fn random_irredundant_expressions_check_clean() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let e = random_irredundant_expression(&mut rng, 6, 3);
            assert!(check_irredundant(&e).is_empty());
            assert!(e.max_label() <= 3);
        }
    }
}

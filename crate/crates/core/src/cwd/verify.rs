use super::matrix::{AlphaMatrix, RMatrix};
use crate::error::{Error, Result};
use crate::graph::Thresholds;
use crate::kexpr::{Label, LabeledGraph};

/// Checks that `process = (S[0], …, S[λ])` is an `(α,r)`-activation process
/// for the labeled graph `h`.
///
/// Vertex ids in `process` and `thresholds` refer to `h`. A sequence that is
/// not nested is rejected with `false`.
pub fn verify_ar_process(
    h: &LabeledGraph,
    thresholds: &Thresholds,
    alpha: &AlphaMatrix,
    r: &RMatrix,
    process: &[Vec<usize>],
) -> Result<bool> {
    let n = h.graph.n();
    let (lambda, k) = (alpha.lambda(), alpha.k());
    if r.k() != k || r.lambda() != lambda {
        return Err(Error::Dimension(format!(
            "alpha is {}x{k} but r is {}x{}",
            lambda + 1,
            r.lambda(),
            r.k()
        )));
    }
    if process.len() != lambda + 1 {
        return Err(Error::Dimension(format!(
            "process has {} sets for latency {lambda}",
            process.len()
        )));
    }
    if let Some(&l) = h.labels.iter().find(|&&l| l == 0 || l as usize > k) {
        return Err(Error::Dimension(format!("graph uses label {l} outside 1..={k}")));
    }
    if thresholds.len() != n {
        return Err(Error::ThresholdCount { expected: n, got: thresholds.len() });
    }

    // Round in which each vertex first appears.
    let mut round_of = vec![None; n];
    for (i, set) in process.iter().enumerate() {
        for &v in set {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            round_of[v].get_or_insert(i);
        }
    }
    let in_set = |v: usize, i: usize| matches!(round_of[v], Some(j) if j <= i);
    for (i, set) in process.iter().enumerate() {
        if (0..n).filter(|&v| in_set(v, i)).count() != dedup_len(set) {
            return Ok(false);
        }
    }

    // Conditions (2) and (3).
    let mut counts = AlphaMatrix::zeros(lambda, k);
    for v in 0..n {
        if let Some(i) = round_of[v] {
            let l = h.labels[v];
            counts.set(i, l, counts.get(i, l) + 1);
        }
    }
    if &counts != alpha {
        return Ok(false);
    }

    // Condition (1): the new vertices of round i with label ℓ are exactly
    // the inactive ones whose reduced threshold is met.
    for i in 1..=lambda {
        for v in 0..n {
            if in_set(v, i - 1) {
                continue;
            }
            let l: Label = h.labels[v];
            let active = h.graph.neighbors(v).iter().filter(|&&w| in_set(w, i - 1)).count() as i64;
            let need = i64::from(thresholds.get(v)) - i64::from(r.get(i, l));
            if (active >= need) != (round_of[v] == Some(i)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn dedup_len(set: &[usize]) -> usize {
    let mut s = set.to_vec();
    s.sort_unstable();
    s.dedup();
    s.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kexpr::{evaluate, parse};

    fn single() -> LabeledGraph {
        evaluate(&parse("1(u)").unwrap())
    }

    #[test]
    fn single_vertex_examples() {
        let h = single();
        let t = Thresholds::uniform(1, 1);
        let seeded = AlphaMatrix::from_rows(&[vec![1], vec![0]]);
        for rv in 0..3 {
            let r = RMatrix::from_rows(1, &[vec![rv]]);
            assert!(verify_ar_process(&h, &t, &seeded, &r, &[vec![0], vec![0]]).unwrap());
        }
        let zero = AlphaMatrix::zeros(1, 1);
        let r0 = RMatrix::zeros(1, 1);
        assert!(verify_ar_process(&h, &t, &zero, &r0, &[vec![], vec![]]).unwrap());
        let late = AlphaMatrix::from_rows(&[vec![0], vec![1]]);
        assert!(!verify_ar_process(&h, &t, &late, &r0, &[vec![], vec![0]]).unwrap());
        let r1 = RMatrix::from_rows(1, &[vec![1]]);
        assert!(verify_ar_process(&h, &t, &late, &r1, &[vec![], vec![0]]).unwrap());
    }

    #[test]
    fn p2_process() {
        let h = evaluate(&parse("eta(2,1, U(2(v), 1(u)))").unwrap());
        let (u, v) = (h.index_of("u").unwrap(), h.index_of("v").unwrap());
        let t = Thresholds::uniform(2, 1);
        let a = AlphaMatrix::from_rows(&[vec![1, 0], vec![0, 1]]);
        let r = RMatrix::zeros(1, 2);
        assert!(verify_ar_process(&h, &t, &a, &r, &[vec![u], vec![u, v]]).unwrap());
        // Missing the forced activation of v.
        let a0 = AlphaMatrix::from_rows(&[vec![1, 0], vec![0, 0]]);
        assert!(!verify_ar_process(&h, &t, &a0, &r, &[vec![u], vec![u]]).unwrap());
        // Not nested.
        assert!(!verify_ar_process(&h, &t, &a, &r, &[vec![u], vec![v]]).unwrap());
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let h = single();
        let t = Thresholds::uniform(1, 1);
        let a = AlphaMatrix::zeros(1, 1);
        assert!(matches!(
            verify_ar_process(&h, &t, &a, &RMatrix::zeros(2, 1), &[vec![], vec![]]),
            Err(Error::Dimension(_))
        ));
        assert!(matches!(
            verify_ar_process(&h, &t, &a, &RMatrix::zeros(1, 1), &[vec![]]),
            Err(Error::Dimension(_))
        ));
        let h2 = evaluate(&parse("2(u)").unwrap());
        assert!(matches!(
            verify_ar_process(&h2, &t, &a, &RMatrix::zeros(1, 1), &[vec![], vec![]]),
            Err(Error::Dimension(_))
        ));
    }
}

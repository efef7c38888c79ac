//! The four recurrences of the dynamic program, as pure functions of the
//! query and of child lookups.
//!
//! Every function here is agnostic of how child values are stored: child
//! queries go through a closure, so the same code serves memoized top-down
//! evaluation and ad-hoc checks in tests.

use super::matrix::{AlphaMatrix, RMatrix};
use crate::kexpr::Label;

/// Leaf `a(u)`: the round at which `u` activates in the unique process, or
/// `None` if the query is unsatisfiable.
///
/// `Some(None)` means `u` stays inactive through round λ.
pub fn leaf_round(threshold: u32, label: Label, alpha: &AlphaMatrix, r: &RMatrix) -> Option<Option<usize>> {
    let lambda = alpha.lambda();
    let mut hit = None;
    for i in 0..=lambda {
        for l in 1..=alpha.k() as Label {
            let x = alpha.get(i, l);
            if l != label && x != 0 {
                return None;
            }
            if l == label && x != 0 {
                if x > 1 || hit.is_some() {
                    return None;
                }
                hit = Some(i);
            }
        }
    }
    let first_reachable = (1..=lambda).find(|&i| u32::from(r.get(i, label)) >= threshold);
    match hit {
        None => first_reachable.is_none().then_some(None),
        Some(0) => Some(Some(0)),
        Some(i) => (first_reachable == Some(i)).then_some(Some(i)),
    }
}

pub fn gamma_leaf(threshold: u32, label: Label, alpha: &AlphaMatrix, r: &RMatrix) -> bool {
    leaf_round(threshold, label, alpha, r).is_some()
}

/// Disjoint union: searches splits `α = α1 + α2` in lexicographic order of
/// `α1` and returns the first one accepted by `children(α1, α2)`.
///
/// `left_cap[ℓ-1]` and `right_cap[ℓ-1]` bound the column sums of `α1` and
/// `α2` (the label class sizes of each side).
pub fn gamma_union(
    alpha: &AlphaMatrix,
    left_cap: &[u16],
    right_cap: &[u16],
    mut children: impl FnMut(&AlphaMatrix, &AlphaMatrix) -> bool,
) -> Option<AlphaMatrix> {
    let k = alpha.k();
    let total = alpha.raw();
    let mut left_rem = left_cap.to_vec();
    let mut right_rem = right_cap.to_vec();
    let mut cur = vec![0u16; total.len()];
    let mut found = None;
    split(total, k, 0, &mut left_rem, &mut right_rem, &mut cur, &mut |a1| {
        let a1 = AlphaMatrix::from_raw(k, a1.to_vec());
        let a2 = alpha.checked_sub(&a1).expect("split stays below alpha");
        if children(&a1, &a2) {
            found = Some(a1);
            true
        } else {
            false
        }
    });
    found
}

fn split(
    total: &[u16],
    k: usize,
    pos: usize,
    left_rem: &mut [u16],
    right_rem: &mut [u16],
    cur: &mut [u16],
    visit: &mut dyn FnMut(&[u16]) -> bool,
) -> bool {
    if pos == total.len() {
        return visit(cur);
    }
    let l = pos % k;
    let want = total[pos];
    let lo = want.saturating_sub(right_rem[l]);
    let hi = want.min(left_rem[l]);
    for x in lo..=hi {
        cur[pos] = x;
        left_rem[l] -= x;
        right_rem[l] -= want - x;
        let done = split(total, k, pos + 1, left_rem, right_rem, cur, visit);
        left_rem[l] += x;
        right_rem[l] += want - x;
        if done {
            return true;
        }
    }
    cur[pos] = 0;
    false
}

/// The reduced thresholds passed below `eta(a,b)`: each side gains the number
/// of vertices of the other label that were active before the round,
/// clamped at `rcap`.
pub fn eta_reduction(alpha: &AlphaMatrix, r: &RMatrix, a: Label, b: Label, rcap: u16) -> RMatrix {
    let mut r1 = r.clone();
    let mut before_a = 0usize;
    let mut before_b = 0usize;
    for i in 1..=r.lambda() {
        before_a += alpha.get(i - 1, a) as usize;
        before_b += alpha.get(i - 1, b) as usize;
        let ra = (r.get(i, a) as usize + before_b).min(rcap as usize);
        let rb = (r.get(i, b) as usize + before_a).min(rcap as usize);
        r1.set(i, a, ra as u16);
        r1.set(i, b, rb as u16);
    }
    r1
}

/// `eta(a,b)`: the child query with the reduced thresholds.
pub fn gamma_eta(
    alpha: &AlphaMatrix,
    r: &RMatrix,
    a: Label,
    b: Label,
    rcap: u16,
    child: impl FnOnce(&RMatrix) -> bool,
) -> bool {
    child(&eta_reduction(alpha, r, a, b, rcap))
}

/// `rho(from->to)`: splits each `α[i,to]` between the two child labels and
/// returns the first accepted child matrix. `child_cap` bounds the child's
/// column sums.
pub fn gamma_rho(
    alpha: &AlphaMatrix,
    r: &RMatrix,
    from: Label,
    to: Label,
    child_cap: &[u16],
    mut child: impl FnMut(&AlphaMatrix, &RMatrix) -> bool,
) -> Option<AlphaMatrix> {
    let lambda = alpha.lambda();
    if (0..=lambda).any(|i| alpha.get(i, from) != 0) {
        return None;
    }
    let mut r1 = r.clone();
    for i in 1..=lambda {
        r1.set(i, from, r.get(i, to));
    }
    let mut a1 = alpha.clone();
    let mut found = None;
    rho_split(
        alpha,
        from,
        to,
        0,
        child_cap[from as usize - 1],
        child_cap[to as usize - 1],
        &mut a1,
        &mut |a1| {
            if child(a1, &r1) {
                found = Some(a1.clone());
                true
            } else {
                false
            }
        },
    );
    found
}

#[allow(clippy::too_many_arguments)]
fn rho_split(
    alpha: &AlphaMatrix,
    from: Label,
    to: Label,
    round: usize,
    from_rem: u16,
    to_rem: u16,
    cur: &mut AlphaMatrix,
    visit: &mut dyn FnMut(&AlphaMatrix) -> bool,
) -> bool {
    if round > alpha.lambda() {
        return visit(cur);
    }
    let want = alpha.get(round, to);
    let lo = want.saturating_sub(to_rem);
    let hi = want.min(from_rem);
    for x in lo..=hi {
        cur.set(round, from, x);
        cur.set(round, to, want - x);
        if rho_split(alpha, from, to, round + 1, from_rem - x, to_rem - (want - x), cur, visit) {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alpha(rows: &[&[u16]]) -> AlphaMatrix {
        AlphaMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    fn rmat(k: usize, rows: &[&[u16]]) -> RMatrix {
        RMatrix::from_rows(k, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn leaf_examples() {
        // Seeded.
        assert!(gamma_leaf(1, 1, &alpha(&[&[1], &[0]]), &rmat(1, &[&[0]])));
        // Never active.
        assert!(gamma_leaf(1, 1, &alpha(&[&[0], &[0]]), &rmat(1, &[&[0]])));
        // Round 1 needs r[1,a] >= t.
        assert!(!gamma_leaf(1, 1, &alpha(&[&[0], &[1]]), &rmat(1, &[&[0]])));
        assert!(gamma_leaf(1, 1, &alpha(&[&[0], &[1]]), &rmat(1, &[&[1]])));
        // Inactive although the threshold is reached.
        assert!(!gamma_leaf(1, 1, &alpha(&[&[0], &[0]]), &rmat(1, &[&[1]])));
    }

    #[test]
    fn leaf_round_is_first_reachable() {
        let r = rmat(2, &[&[0, 0], &[0, 1], &[0, 5]]);
        assert_eq!(leaf_round(1, 2, &alpha(&[&[0, 0], &[0, 0], &[0, 1], &[0, 0]]), &r), Some(Some(2)));
        assert_eq!(leaf_round(1, 2, &alpha(&[&[0, 0], &[0, 0], &[0, 0], &[0, 1]]), &r), None);
        assert_eq!(leaf_round(1, 2, &alpha(&[&[0, 1], &[0, 0], &[0, 0], &[0, 0]]), &r), Some(Some(0)));
        // Off-label mass or a count of two is never a single vertex.
        assert_eq!(leaf_round(1, 2, &alpha(&[&[1, 0], &[0, 0], &[0, 0], &[0, 0]]), &r), None);
        assert_eq!(leaf_round(1, 2, &alpha(&[&[0, 1], &[0, 0], &[0, 1], &[0, 0]]), &r), None);
    }

    #[test]
    fn zero_threshold_leaf_activates_in_round_one() {
        let r = rmat(1, &[&[0], &[0]]);
        assert_eq!(leaf_round(0, 1, &alpha(&[&[0], &[1], &[0]]), &r), Some(Some(1)));
        assert_eq!(leaf_round(0, 1, &alpha(&[&[0], &[0], &[0]]), &r), None);
        // With no rounds an unseeded vertex simply stays inactive.
        assert_eq!(leaf_round(0, 1, &alpha(&[&[0]]), &RMatrix::zeros(0, 1)), Some(None));
    }

    // Two isolated threshold-1 leaves with label 1.
    fn two_leaves(a1: &AlphaMatrix, a2: &AlphaMatrix, r: &RMatrix) -> bool {
        gamma_leaf(1, 1, a1, r) && gamma_leaf(1, 1, a2, r)
    }

    #[test]
    fn union_examples() {
        let r = RMatrix::zeros(1, 1);
        let q = alpha(&[&[2], &[0]]);
        let s = gamma_union(&q, &[1], &[1], |a1, a2| two_leaves(a1, a2, &r));
        assert_eq!(s, Some(alpha(&[&[1], &[0]])));
        let q = alpha(&[&[1], &[1]]);
        assert_eq!(gamma_union(&q, &[1], &[1], |a1, a2| two_leaves(a1, a2, &r)), None);
        let q = alpha(&[&[0], &[0]]);
        assert!(gamma_union(&q, &[1], &[1], |a1, a2| two_leaves(a1, a2, &r)).is_some());
    }

    #[test]
    fn union_respects_caps() {
        let mut seen = Vec::new();
        let q = alpha(&[&[2, 1]]);
        gamma_union(&q, &[1, 1], &[2, 0], |a1, _| {
            seen.push(a1.clone());
            false
        });
        assert_eq!(seen, vec![alpha(&[&[0, 1]]), alpha(&[&[1, 1]])]);
    }

    #[test]
    fn eta_reduction_counts_earlier_rounds() {
        // P2: u label 1 seeded, v label 2 activates at round 1.
        let q = alpha(&[&[1, 0], &[0, 1]]);
        let r1 = eta_reduction(&q, &RMatrix::zeros(1, 2), 2, 1, 10);
        assert_eq!(r1, rmat(2, &[&[0, 1]]));
        // Clamping.
        let q = alpha(&[&[3, 0], &[0, 0], &[0, 0]]);
        let r1 = eta_reduction(&q, &rmat(2, &[&[0, 1], &[0, 0]]), 1, 2, 2);
        assert_eq!(r1, rmat(2, &[&[0, 2], &[0, 2]]));
        // Zero alpha leaves r unchanged.
        let r = rmat(2, &[&[1, 0]]);
        assert_eq!(eta_reduction(&alpha(&[&[0, 0], &[0, 0]]), &r, 1, 2, 5), r);
    }

    #[test]
    fn rho_examples() {
        // rho(2->1, U(1(u), 2(v))), lambda 0, both seeded.
        let q = alpha(&[&[2, 0]]);
        let r = RMatrix::zeros(0, 2);
        let got = gamma_rho(&q, &r, 2, 1, &[1, 1], |a1, r1| {
            gamma_union(a1, &[1, 0], &[0, 1], |x, y| gamma_leaf(1, 1, x, r1) && gamma_leaf(1, 2, y, r1))
                .is_some()
        });
        assert_eq!(got, Some(alpha(&[&[1, 1]])));
        // Mass on the renamed label is impossible.
        assert_eq!(gamma_rho(&alpha(&[&[0, 1]]), &r, 2, 1, &[1, 1], |_, _| true), None);
    }

    #[test]
    fn rho_copies_reduction_to_source_label() {
        let q = alpha(&[&[0, 0], &[1, 0]]);
        let r = rmat(2, &[&[3, 0]]);
        let mut seen = None;
        gamma_rho(&q, &r, 2, 1, &[0, 1], |a1, r1| {
            seen = Some((a1.clone(), r1.clone()));
            true
        });
        assert_eq!(seen, Some((alpha(&[&[0, 0], &[0, 1]]), rmat(2, &[&[3, 3]]))));
    }
}

use std::fmt;

use crate::kexpr::Label;

/// Per-round, per-label activation counts: `α[i,ℓ]` for `i ∈ [0,λ]`,
/// `ℓ ∈ [1,k]`. Row 0 counts seeds.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlphaMatrix {
    k: usize,
    data: Vec<u16>,
}

impl AlphaMatrix {
    pub fn zeros(lambda: usize, k: usize) -> Self {
        AlphaMatrix { k, data: vec![0; (lambda + 1) * k] }
    }

    /// Builds from rows `0..=λ`, each with `k` entries for labels `1..=k`.
    pub fn from_rows(rows: &[Vec<u16>]) -> Self {
        let k = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == k), "ragged alpha matrix");
        AlphaMatrix { k, data: rows.concat() }
    }

    pub(crate) fn from_raw(k: usize, data: Vec<u16>) -> Self {
        debug_assert!(k > 0 && data.len() % k == 0);
        AlphaMatrix { k, data }
    }

    pub fn lambda(&self) -> usize {
        self.data.len() / self.k - 1
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn get(&self, round: usize, label: Label) -> u16 {
        self.data[self.index(round, label)]
    }

    pub fn set(&mut self, round: usize, label: Label, value: u16) {
        let i = self.index(round, label);
        self.data[i] = value;
    }

    fn index(&self, round: usize, label: Label) -> usize {
        debug_assert!(label >= 1 && label as usize <= self.k);
        round * self.k + label as usize - 1
    }

    pub fn column_sum(&self, label: Label) -> usize {
        (0..=self.lambda()).map(|i| self.get(i, label) as usize).sum()
    }

    /// Number of seeds, `Σ_ℓ α[0,ℓ]`.
    pub fn seeds(&self) -> usize {
        self.data[..self.k].iter().map(|&x| x as usize).sum()
    }

    /// Number of vertices active by round λ, `Σ_i Σ_ℓ α[i,ℓ]`.
    pub fn total(&self) -> usize {
        self.data.iter().map(|&x| x as usize).sum()
    }

    /// `Σ_{j<i} α[j,ℓ]`: vertices of label ℓ active before round `i`.
    pub fn active_before(&self, round: usize, label: Label) -> usize {
        (0..round).map(|j| self.get(j, label) as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub(crate) fn raw(&self) -> &[u16] {
        &self.data
    }

    /// Entrywise `self - other`, or `None` if any entry would go negative.
    pub fn checked_sub(&self, other: &AlphaMatrix) -> Option<AlphaMatrix> {
        debug_assert_eq!(self.data.len(), other.data.len());
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()?;
        Some(AlphaMatrix { k: self.k, data })
    }
}

impl fmt::Debug for AlphaMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.data.chunks(self.k)).finish()
    }
}

/// Threshold reductions `r[i,ℓ]` for rounds `i ∈ [1,λ]`, labels `ℓ ∈ [1,k]`.
/// There is no round-0 row.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RMatrix {
    k: usize,
    data: Vec<u16>,
}

impl RMatrix {
    pub fn zeros(lambda: usize, k: usize) -> Self {
        RMatrix { k, data: vec![0; lambda * k] }
    }

    /// Builds from rows `1..=λ`.
    pub fn from_rows(k: usize, rows: &[Vec<u16>]) -> Self {
        assert!(rows.iter().all(|r| r.len() == k), "ragged r matrix");
        RMatrix { k, data: rows.concat() }
    }

    pub(crate) fn from_raw(k: usize, data: Vec<u16>) -> Self {
        debug_assert!(k > 0 && data.len() % k == 0);
        RMatrix { k, data }
    }

    pub fn lambda(&self) -> usize {
        self.data.len() / self.k
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn get(&self, round: usize, label: Label) -> u16 {
        self.data[self.index(round, label)]
    }

    pub fn set(&mut self, round: usize, label: Label, value: u16) {
        let i = self.index(round, label);
        self.data[i] = value;
    }

    fn index(&self, round: usize, label: Label) -> usize {
        debug_assert!(round >= 1 && label >= 1 && label as usize <= self.k);
        (round - 1) * self.k + label as usize - 1
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub(crate) fn raw(&self) -> &[u16] {
        &self.data
    }
}

impl fmt::Debug for RMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.data.chunks(self.k)).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_indexing_and_sums() {
        let a = AlphaMatrix::from_rows(&[vec![1, 0], vec![0, 2], vec![1, 1]]);
        assert_eq!(a.lambda(), 2);
        assert_eq!(a.k(), 2);
        assert_eq!(a.get(1, 2), 2);
        assert_eq!(a.column_sum(2), 3);
        assert_eq!(a.seeds(), 1);
        assert_eq!(a.total(), 5);
        assert_eq!(a.active_before(2, 2), 2);
        let b = AlphaMatrix::from_rows(&[vec![1, 0], vec![0, 1], vec![0, 1]]);
        assert_eq!(
            a.checked_sub(&b),
            Some(AlphaMatrix::from_rows(&[vec![0, 0], vec![0, 1], vec![1, 0]]))
        );
        assert_eq!(b.checked_sub(&a), None);
    }

    #[test]
    fn r_has_no_round_zero() {
        let mut r = RMatrix::zeros(2, 3);
        assert_eq!(r.lambda(), 2);
        r.set(2, 3, 4);
        assert_eq!(r.get(2, 3), 4);
        assert!(!r.is_zero());
        assert_eq!(RMatrix::zeros(0, 3).lambda(), 0);
    }
}

//! Periodic patterns encoded by `n`-tuples of partitions.

use std::fmt;

use laumon_algebra::{Monomial, Var};
use serde::{Deserialize, Serialize};

use crate::error::PatternError;
use crate::Step;

/// `(j mod n)` as an element of `{1, …, n}`.
pub fn residue(j: i64, n: usize) -> usize {
    let r = j.rem_euclid(n as i64) as usize;
    if r == 0 {
        n
    } else {
        r
    }
}

/// `⌈j / n⌉`.
pub fn ceil_div(j: i64, n: usize) -> i64 {
    -((-j).div_euclid(n as i64))
}

/// An `n`-tuple of partitions `λ^1, …, λ^n`, each a weakly decreasing list
/// of positive parts indexed from 0. It encodes the periodic collection
/// `d_{ij} = λ^{(j mod n)}_{i-j}` for `i ≥ j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawAffine", into = "RawAffine")]
pub struct AffinePattern {
    n: usize,
    lambdas: Vec<Vec<u32>>,
}

#[derive(Serialize, Deserialize)]
struct RawAffine {
    n: usize,
    lambdas: Vec<Vec<u32>>,
}

impl TryFrom<RawAffine> for AffinePattern {
    type Error = PatternError;
    fn try_from(raw: RawAffine) -> Result<Self, Self::Error> {
        AffinePattern::new(raw.n, raw.lambdas)
    }
}

impl From<AffinePattern> for RawAffine {
    fn from(p: AffinePattern) -> Self {
        RawAffine {
            n: p.n,
            lambdas: p.lambdas,
        }
    }
}

pub(crate) fn is_partition(parts: &[u32]) -> bool {
    parts.windows(2).all(|w| w[0] >= w[1]) && parts.last().is_none_or(|&x| x > 0)
}

impl AffinePattern {
    pub fn new(n: usize, lambdas: Vec<Vec<u32>>) -> Result<Self, PatternError> {
        if !(2..=laumon_algebra::MAX_T).contains(&n) {
            return Err(PatternError::BadRank(n));
        }
        if lambdas.len() != n {
            return Err(PatternError::RowCount {
                expected: n,
                found: lambdas.len(),
            });
        }
        if let Some(idx) = lambdas.iter().position(|l| !is_partition(l)) {
            return Err(PatternError::NotAPartition { index: idx + 1 });
        }
        Ok(AffinePattern { n, lambdas })
    }

    pub fn empty(n: usize) -> Self {
        AffinePattern::new(n, vec![Vec::new(); n]).expect("rank out of range")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lambdas(&self) -> &[Vec<u32>] {
        &self.lambdas
    }

    /// `λ^l`, `1 ≤ l ≤ n`.
    pub fn lambda(&self, l: usize) -> &[u32] {
        &self.lambdas[l - 1]
    }

    /// Longest partition length; `d_{ij} = 0` once `i - j` reaches it.
    pub fn depth(&self) -> i64 {
        self.lambdas.iter().map(Vec::len).max().unwrap_or(0) as i64
    }

    /// `d_{ij}`, taken to be zero when `i < j`.
    pub fn d(&self, i: i64, j: i64) -> u32 {
        if i < j {
            return 0;
        }
        let parts = self.lambda(residue(j, self.n));
        parts.get((i - j) as usize).copied().unwrap_or(0)
    }

    /// `d_k = Σ_{j≤k} d_{kj}`; periodic in `k`.
    pub fn degree(&self, k: i64) -> u32 {
        (k - self.depth() + 1..=k).map(|j| self.d(k, j)).sum()
    }

    /// `(d_0, …, d_{n-1})`.
    pub fn degrees(&self) -> Vec<u32> {
        (0..self.n as i64).map(|k| self.degree(k)).collect()
    }

    /// Number of boxes, equal to `Σ_k d_k`.
    pub fn size(&self) -> u32 {
        self.lambdas.iter().flatten().sum()
    }

    /// `t_{(j mod n)}`.
    pub fn t_of(&self, j: i64) -> Var {
        Var::t(residue(j, self.n))
    }

    /// `p_{ij} = t_{(j mod n)}^2 v^{-2 d_{ij}} u^{2⌈j/n⌉}`.
    pub fn p_weight(&self, i: i64, j: i64) -> Result<Monomial, PatternError> {
        if j > i {
            return Err(PatternError::OutOfRange { i, j });
        }
        Ok(self.p_unchecked(i, j))
    }

    pub(crate) fn p_unchecked(&self, i: i64, j: i64) -> Monomial {
        Monomial::pow(self.t_of(j), 2)
            * Monomial::pow(Var::V, -2 * self.d(i, j) as i32)
            * Monomial::pow(Var::U, 2 * ceil_div(j, self.n) as i32)
    }

    /// Change `d_{ij}` (and its whole periodic class) by one.
    pub fn moved(&self, i: i64, j: i64, step: Step) -> Option<AffinePattern> {
        if j > i {
            return None;
        }
        let l = residue(j, self.n);
        let m = (i - j) as usize;
        let mut parts = self.lambdas[l - 1].clone();
        match step {
            Step::Add => {
                if m > parts.len() || (m > 0 && parts[m - 1] == parts.get(m).copied().unwrap_or(0)) {
                    return None;
                }
                if m == parts.len() {
                    parts.push(1);
                } else {
                    parts[m] += 1;
                }
            }
            Step::Remove => {
                let cur = *parts.get(m)?;
                if parts.get(m + 1).copied().unwrap_or(0) == cur {
                    return None;
                }
                parts[m] -= 1;
                if parts[m] == 0 {
                    parts.pop();
                }
            }
        }
        let mut lambdas = self.lambdas.clone();
        lambdas[l - 1] = parts;
        Some(AffinePattern { n: self.n, lambdas })
    }

    /// All single-box moves at node `i`, as `(j, pattern)` with `j ≤ i`
    /// ascending.
    pub fn neighbors(&self, i: i64, step: Step) -> Vec<(i64, AffinePattern)> {
        let lowest = i - self.depth();
        (lowest..=i)
            .filter_map(|j| self.moved(i, j, step).map(|p| (j, p)))
            .collect()
    }
}

impl fmt::Display for AffinePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (idx, parts) in self.lambdas.iter().enumerate() {
            if idx > 0 {
                f.write_str("|")?;
            }
            let cells: Vec<String> = parts.iter().map(u32::to_string).collect();
            f.write_str(&cells.join(","))?;
        }
        f.write_str(")")
    }
}

fn partitions(total: u32, max_part: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if total == 0 {
        out.push(prefix.clone());
        return;
    }
    for part in (1..=total.min(max_part)).rev() {
        prefix.push(part);
        partitions(total - part, part, prefix, out);
        prefix.pop();
    }
}

/// All partitions of `total`.
pub fn partitions_of(total: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    partitions(total, total, &mut Vec::new(), &mut out);
    out
}

/// Every `n`-tuple of partitions with `size` boxes in total, sorted.
pub fn affine_patterns_of_size(n: usize, size: u32) -> Result<Vec<AffinePattern>, PatternError> {
    if !(2..=laumon_algebra::MAX_T).contains(&n) {
        return Err(PatternError::BadRank(n));
    }
    let mut out = Vec::new();
    for sizes in crate::finite::degree_vectors(n, size) {
        let mut tuples: Vec<Vec<Vec<u32>>> = vec![Vec::new()];
        for s in sizes {
            let parts = partitions_of(s);
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    parts.iter().map(move |p| {
                        let mut t = t.clone();
                        t.push(p.clone());
                        t
                    })
                })
                .collect();
        }
        out.extend(tuples.into_iter().map(|lambdas| AffinePattern { n, lambdas }));
    }
    out.sort();
    Ok(out)
}

/// Every pattern with degree vector `(d_0, …, d_{n-1}) = deg`, sorted by the
/// list of partitions.
pub fn enumerate_affine(n: usize, deg: &[u32]) -> Result<Vec<AffinePattern>, PatternError> {
    if deg.len() != n {
        return Err(PatternError::DegreeLength {
            expected: n,
            found: deg.len(),
        });
    }
    let size: u32 = deg.iter().sum();
    Ok(affine_patterns_of_size(n, size)?
        .into_iter()
        .filter(|p| p.degrees() == deg)
        .collect())
}

/// Every pattern with at most `max_total` boxes, by size and then sorted.
pub fn affine_patterns_up_to(n: usize, max_total: u32) -> Result<Vec<AffinePattern>, PatternError> {
    let mut out = Vec::new();
    for size in 0..=max_total {
        out.extend(affine_patterns_of_size(n, size)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residues_and_ceilings() {
        assert_eq!(residue(0, 3), 3);
        assert_eq!(residue(-1, 3), 2);
        assert_eq!(residue(4, 3), 1);
        assert_eq!(ceil_div(0, 2), 0);
        assert_eq!(ceil_div(1, 2), 1);
        assert_eq!(ceil_div(-1, 2), 0);
        assert_eq!(ceil_div(-2, 2), -1);
    }

    #[test]
    fn d_is_periodic() {
        let p = AffinePattern::new(3, vec![vec![2, 1], vec![1], vec![]]).unwrap();
        for i in -6..6 {
            for j in i - 4..=i {
                assert_eq!(p.d(i + 3, j + 3), p.d(i, j));
                if j < i {
                    assert!(p.d(i - 1, j) >= p.d(i, j));
                }
            }
        }
        assert_eq!(p.d(1, 1), 2);
        assert_eq!(p.d(2, 1), 1);
        assert_eq!(p.d(2, 2), 1);
    }

    #[test]
    fn empty_weights() {
        let e = AffinePattern::empty(2);
        assert_eq!(e.p_weight(5, 0).unwrap(), Monomial::pow(Var::t(2), 2));
        assert_eq!(
            e.p_weight(5, 1).unwrap(),
            Monomial::pow(Var::t(1), 2) * Monomial::pow(Var::U, 2)
        );
    }

    #[test]
    fn degree_sum_is_size() {
        for p in affine_patterns_up_to(3, 4).unwrap() {
            assert_eq!(p.degrees().iter().sum::<u32>(), p.size());
        }
    }

    #[test]
    fn two_patterns_of_size_one() {
        let all: usize = [[1, 0], [0, 1]]
            .iter()
            .map(|d| enumerate_affine(2, d).unwrap().len())
            .sum();
        assert_eq!(all, 2);
        assert_eq!(enumerate_affine(2, &[0, 0]).unwrap(), vec![AffinePattern::empty(2)]);
    }

    #[test]
    fn first_box_lands_in_its_residue() {
        let e = AffinePattern::empty(3);
        let moves = e.neighbors(1, Step::Add);
        assert_eq!(moves.len(), 1);
        assert_eq!(moves[0].0, 1);
        assert_eq!(moves[0].1.lambda(1), &[1]);
        assert_eq!(moves[0].1.degrees(), vec![0, 1, 0]);
        assert!(e.neighbors(2, Step::Remove).is_empty());
    }
}

//! Gelfand-Tsetlin type patterns `d_{ij}`, `1 ≤ j ≤ i ≤ n-1`.

use std::fmt;

use laumon_algebra::{Monomial, Var};
use serde::{Deserialize, Serialize};

use crate::error::PatternError;
use crate::Step;

/// A triangular array of nonnegative integers whose columns weakly
/// decrease downwards: `d_{kj} ≥ d_{ij}` whenever `i ≥ k ≥ j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawFinite", into = "RawFinite")]
pub struct FinitePattern {
    n: usize,
    rows: Vec<Vec<u32>>,
}

#[derive(Serialize, Deserialize)]
struct RawFinite {
    n: usize,
    d: Vec<Vec<u32>>,
}

impl TryFrom<RawFinite> for FinitePattern {
    type Error = PatternError;
    fn try_from(raw: RawFinite) -> Result<Self, Self::Error> {
        FinitePattern::new(raw.n, raw.d)
    }
}

impl From<FinitePattern> for RawFinite {
    fn from(p: FinitePattern) -> Self {
        RawFinite { n: p.n, d: p.rows }
    }
}

impl FinitePattern {
    pub fn new(n: usize, rows: Vec<Vec<u32>>) -> Result<Self, PatternError> {
        if !(2..=laumon_algebra::MAX_T).contains(&n) {
            return Err(PatternError::BadRank(n));
        }
        if rows.len() != n - 1 {
            return Err(PatternError::RowCount {
                expected: n - 1,
                found: rows.len(),
            });
        }
        for (idx, row) in rows.iter().enumerate() {
            if row.len() != idx + 1 {
                return Err(PatternError::RowLength {
                    row: idx + 1,
                    found: row.len(),
                });
            }
        }
        let p = FinitePattern { n, rows };
        p.check()?;
        Ok(p)
    }

    pub fn zero(n: usize) -> Self {
        assert!((2..=laumon_algebra::MAX_T).contains(&n), "rank out of range");
        FinitePattern {
            n,
            rows: (1..n).map(|i| vec![0; i]).collect(),
        }
    }

    fn check(&self) -> Result<(), PatternError> {
        for i in 2..self.n {
            for j in 1..i {
                if self.d(i, j) > self.d(i - 1, j) {
                    return Err(PatternError::Monotonicity { i, k: i - 1, j });
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// `d_{ij}` with the boundary rows `d_{0,•} = d_{n,•} = 0`.
    pub fn d(&self, i: usize, j: usize) -> u32 {
        assert!(j >= 1 && j <= i && i <= self.n, "index ({i}, {j}) out of range");
        if i == self.n {
            0
        } else {
            self.rows[i - 1][j - 1]
        }
    }

    /// `d_i = Σ_{j≤i} d_{ij}`, with `d_0 = d_n = 0`.
    pub fn degree(&self, i: usize) -> u32 {
        if i == 0 || i >= self.n {
            0
        } else {
            self.rows[i - 1].iter().sum()
        }
    }

    pub fn degrees(&self) -> Vec<u32> {
        (1..self.n).map(|i| self.degree(i)).collect()
    }

    pub fn total(&self) -> u32 {
        self.rows.iter().flatten().sum()
    }

    /// `s_{ij} = t_j^2 v^{-2 d_{ij}}` for `1 ≤ j ≤ i ≤ n`.
    pub fn s_weight(&self, i: usize, j: usize) -> Result<Monomial, PatternError> {
        if j < 1 || j > i || i > self.n {
            return Err(PatternError::OutOfRange {
                i: i as i64,
                j: j as i64,
            });
        }
        Ok(Monomial::pow(Var::t(j), 2) * Monomial::pow(Var::V, -2 * self.d(i, j) as i32))
    }

    /// Adjust one entry, returning `None` when the result is not a pattern.
    pub fn moved(&self, i: usize, j: usize, step: Step) -> Option<FinitePattern> {
        if i == 0 || i >= self.n || j == 0 || j > i {
            return None;
        }
        let cur = self.rows[i - 1][j - 1];
        let new = match step {
            Step::Add => cur + 1,
            Step::Remove => cur.checked_sub(1)?,
        };
        if j < i && new > self.d(i - 1, j) {
            return None;
        }
        if i + 1 < self.n && self.d(i + 1, j) > new {
            return None;
        }
        let mut rows = self.rows.clone();
        rows[i - 1][j - 1] = new;
        Some(FinitePattern { n: self.n, rows })
    }

    /// All single-entry moves in row `i`, as `(j, pattern)` pairs.
    pub fn neighbors(&self, i: usize, step: Step) -> Vec<(usize, FinitePattern)> {
        (1..=i).filter_map(|j| self.moved(i, j, step).map(|p| (j, p))).collect()
    }
}

impl fmt::Display for FinitePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (idx, row) in self.rows.iter().enumerate() {
            if idx > 0 {
                f.write_str("|")?;
            }
            let cells: Vec<String> = row.iter().map(u32::to_string).collect();
            f.write_str(&cells.join(","))?;
        }
        f.write_str("]")
    }
}

/// Every pattern of rank `n` with `d_i = deg[i-1]`, in lexicographic order
/// of the flattened rows.
pub fn enumerate_finite(n: usize, deg: &[u32]) -> Result<Vec<FinitePattern>, PatternError> {
    if !(2..=laumon_algebra::MAX_T).contains(&n) {
        return Err(PatternError::BadRank(n));
    }
    if deg.len() != n - 1 {
        return Err(PatternError::DegreeLength {
            expected: n - 1,
            found: deg.len(),
        });
    }
    let mut out = Vec::new();
    let mut rows: Vec<Vec<u32>> = Vec::new();
    fill_rows(n, deg, &mut rows, &mut out);
    Ok(out)
}

fn fill_rows(n: usize, deg: &[u32], rows: &mut Vec<Vec<u32>>, out: &mut Vec<FinitePattern>) {
    let i = rows.len() + 1;
    if i == n {
        out.push(FinitePattern { n, rows: rows.clone() });
        return;
    }
    // row i: entries bounded by the row above, summing to deg[i-1]
    let caps: Vec<u32> = (1..=i)
        .map(|j| if j < i { rows[i - 2][j - 1] } else { u32::MAX })
        .collect();
    let mut row = Vec::with_capacity(i);
    compositions(deg[i - 1], &caps, &mut row, &mut |row| {
        rows.push(row.to_vec());
        fill_rows(n, deg, rows, out);
        rows.pop();
    });
}

fn compositions(total: u32, caps: &[u32], prefix: &mut Vec<u32>, emit: &mut dyn FnMut(&[u32])) {
    let k = prefix.len();
    if k + 1 == caps.len() {
        if total <= caps[k] {
            prefix.push(total);
            emit(prefix);
            prefix.pop();
        }
        return;
    }
    for x in 0..=total.min(caps[k]) {
        prefix.push(x);
        compositions(total - x, caps, prefix, emit);
        prefix.pop();
    }
}

/// All degree vectors of length `len` with the given sum, lexicographically.
pub fn degree_vectors(len: usize, total: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let caps = vec![u32::MAX; len];
    if len == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    compositions(total, &caps, &mut Vec::new(), &mut |c| out.push(c.to_vec()));
    out
}

/// Every pattern of rank `n` with `Σ d_i ≤ max_total`.
pub fn finite_patterns_up_to(n: usize, max_total: u32) -> Result<Vec<FinitePattern>, PatternError> {
    let mut out = Vec::new();
    for total in 0..=max_total {
        for deg in degree_vectors(n - 1, total) {
            out.extend(enumerate_finite(n, &deg)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_degree_gives_zero_pattern() {
        assert_eq!(enumerate_finite(3, &[0, 0]).unwrap(), vec![FinitePattern::zero(3)]);
    }

    #[test]
    fn two_patterns_of_degree_one_one() {
        let ps = enumerate_finite(3, &[1, 1]).unwrap();
        assert_eq!(
            ps,
            vec![
                FinitePattern::new(3, vec![vec![1], vec![0, 1]]).unwrap(),
                FinitePattern::new(3, vec![vec![1], vec![1, 0]]).unwrap(),
            ]
        );
    }

    #[test]
    fn rank_two_has_one_pattern_per_degree() {
        for d in 0..6 {
            assert_eq!(enumerate_finite(2, &[d]).unwrap().len(), 1);
        }
    }

    #[test]
    fn monotonicity_is_enforced() {
        assert!(FinitePattern::new(3, vec![vec![0], vec![1, 0]]).is_err());
    }

    #[test]
    fn neighbors_of_zero() {
        let z = FinitePattern::zero(3);
        let up = z.neighbors(1, Step::Add);
        assert_eq!(up.len(), 1);
        assert_eq!(up[0].1.d(1, 1), 1);
        assert!(z.neighbors(1, Step::Remove).is_empty());
        assert!(z.neighbors(2, Step::Remove).is_empty());
    }

    #[test]
    fn neighbors_respect_the_row_above() {
        let p = FinitePattern::new(3, vec![vec![1], vec![1, 0]]).unwrap();
        let cols: Vec<usize> = p.neighbors(2, Step::Add).into_iter().map(|(j, _)| j).collect();
        assert_eq!(cols, vec![2]);
        let q = FinitePattern::new(3, vec![vec![1], vec![0, 1]]).unwrap();
        let cols: Vec<usize> = q.neighbors(2, Step::Add).into_iter().map(|(j, _)| j).collect();
        assert_eq!(cols, vec![1, 2]);
    }

    #[test]
    fn s_weights_use_boundary_row() {
        let z = FinitePattern::zero(2);
        assert_eq!(z.s_weight(1, 1).unwrap(), Monomial::pow(Var::t(1), 2));
        assert_eq!(z.s_weight(2, 2).unwrap(), Monomial::pow(Var::t(2), 2));
        assert!(z.s_weight(3, 1).is_err());
    }
}

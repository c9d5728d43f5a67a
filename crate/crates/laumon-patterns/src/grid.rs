//! The `n × n` array of diagrams `λ^{kl}` attached to a fixed point.

use serde::{Deserialize, Serialize};

use crate::affine::{is_partition, AffinePattern};
use crate::error::PatternError;

/// Diagrams `λ^{kl}`, `1 ≤ k, l ≤ n`, with `λ^{kl}_i = λ^l_{ni + ((k-l) mod n)}`.
///
/// For each `l` the diagrams shrink along `λ^{ll}, λ^{l+1,l}, …, λ^{l-1,l}`
/// (first index cyclic) and the last one dominates `λ^{ll}` shifted by one
/// row: `λ^{l-1,l}_i ≥ λ^{ll}_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaGrid {
    n: usize,
    cells: Vec<Vec<Vec<u32>>>,
}

fn part(p: &[u32], i: usize) -> u32 {
    p.get(i).copied().unwrap_or(0)
}

impl LambdaGrid {
    pub fn new(n: usize, cells: Vec<Vec<Vec<u32>>>) -> Result<Self, PatternError> {
        if cells.len() != n || cells.iter().any(|row| row.len() != n) {
            return Err(PatternError::BadRank(n));
        }
        let grid = LambdaGrid { n, cells };
        grid.check()?;
        Ok(grid)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `λ^{kl}`.
    pub fn cell(&self, k: usize, l: usize) -> &[u32] {
        &self.cells[k - 1][l - 1]
    }

    fn check(&self) -> Result<(), PatternError> {
        let n = self.n;
        for k in 1..=n {
            for l in 1..=n {
                if !is_partition(self.cell(k, l)) {
                    return Err(PatternError::NotAPartition { index: (k - 1) * n + l });
                }
            }
        }
        for l in 1..=n {
            let chain: Vec<usize> = (0..n).map(|s| (l - 1 + s) % n + 1).collect();
            for w in chain.windows(2) {
                let (a, b) = (self.cell(w[0], l), self.cell(w[1], l));
                let len = a.len().max(b.len());
                if (0..len).any(|i| part(a, i) < part(b, i)) {
                    return Err(PatternError::Chain { k: w[0], l });
                }
            }
            let last = self.cell(chain[n - 1], l);
            let first = self.cell(l, l);
            if (0..first.len()).any(|i| part(last, i) < part(first, i + 1)) {
                return Err(PatternError::Chain { k: chain[n - 1], l });
            }
        }
        Ok(())
    }

    /// `d_k = Σ_l |λ^{kl}|` for `k = 1..n`.
    pub fn degrees(&self) -> Vec<u32> {
        (1..=self.n)
            .map(|k| (1..=self.n).map(|l| self.cell(k, l).iter().sum::<u32>()).sum())
            .collect()
    }
}

fn offset(k: usize, l: usize, n: usize) -> usize {
    (k + n - l) % n
}

pub fn to_lambda_grid(p: &AffinePattern) -> LambdaGrid {
    let n = p.n();
    let cells = (1..=n)
        .map(|k| {
            (1..=n)
                .map(|l| {
                    let lam = p.lambda(l);
                    let off = offset(k, l, n);
                    lam.iter().skip(off).step_by(n).copied().collect()
                })
                .collect()
        })
        .collect();
    LambdaGrid { n, cells }
}

pub fn from_lambda_grid(g: &LambdaGrid) -> Result<AffinePattern, PatternError> {
    g.check()?;
    let n = g.n;
    let lambdas = (1..=n)
        .map(|l| {
            let len = (1..=n)
                .map(|k| g.cell(k, l).len() * n + offset(k, l, n))
                .max()
                .unwrap_or(0);
            let mut parts: Vec<u32> = (0..len)
                .map(|m| part(g.cell((l - 1 + m % n) % n + 1, l), m / n))
                .collect();
            while parts.last() == Some(&0) {
                parts.pop();
            }
            parts
        })
        .collect();
    AffinePattern::new(n, lambdas)
}

use laumon_algebra::AlgebraError;
use laumon_patterns::PatternError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error("node {node} is out of range for n = {n}")]
    NodeOutOfRange { node: i64, n: usize },
    #[error("no single-box move at ({i}, {j})")]
    InvalidMove { i: i64, j: i64 },
    #[error("the toroidal action needs n >= 3, got {0}")]
    RankTooSmall(usize),
    #[error("vector mixes rank {found} into rank {expected}")]
    MixedRank { expected: usize, found: usize },
    #[error("cutoff {cutoff} is above the telescoping bound {bound}")]
    Cutoff { cutoff: i64, bound: i64 },
    #[error("row {0} is out of range")]
    RowOutOfRange(usize),
    #[error("weight {0} has nonpositive multiplicity after cancellation")]
    NonPositiveMultiplicity(String),
    #[error("unit weight in a tangent character")]
    UnitWeight,
    #[error("the level must be positive")]
    BadLevel,
    #[error("weight is not dominant: {0}")]
    NotDominant(String),
    #[error("denominator factor (1 - {0}) vanishes after specialization")]
    VanishingDenominator(String),
    #[error(transparent)]
    Pattern(#[from] PatternError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

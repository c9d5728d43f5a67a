use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("rank n = {0} is out of range")]
    BadRank(usize),
    #[error("expected {expected} rows, found {found}")]
    RowCount { expected: usize, found: usize },
    #[error("row {row} has {found} entries, expected {row}")]
    RowLength { row: usize, found: usize },
    #[error("column {j} increases from row {k} to row {i}")]
    Monotonicity { i: usize, k: usize, j: usize },
    #[error("lambda^{index} is not a partition")]
    NotAPartition { index: usize },
    #[error("chain for column {l} fails between lambda^({k},{l}) and its successor")]
    Chain { k: usize, l: usize },
    #[error("index ({i}, {j}) out of range")]
    OutOfRange { i: i64, j: i64 },
    #[error("degree vector has {found} entries, expected {expected}")]
    DegreeLength { expected: usize, found: usize },
}

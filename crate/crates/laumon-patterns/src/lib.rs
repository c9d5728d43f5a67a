//! Index sets of the fixed-point bases: finite patterns `d_{ij}`, affine
//! patterns as tuples of partitions, their enumeration, single-box moves and
//! torus weights.

mod affine;
mod error;
mod finite;
mod grid;

pub use affine::{
    affine_patterns_of_size, affine_patterns_up_to, ceil_div, enumerate_affine, partitions_of, residue, AffinePattern,
};
pub use error::PatternError;
pub use finite::{degree_vectors, enumerate_finite, finite_patterns_up_to, FinitePattern};
pub use grid::{from_lambda_grid, to_lambda_grid, LambdaGrid};

/// Direction of a single-box move.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Step {
    Add,
    Remove,
}

impl Step {
    pub fn opposite(self) -> Step {
        match self {
            Step::Add => Step::Remove,
            Step::Remove => Step::Add,
        }
    }
}

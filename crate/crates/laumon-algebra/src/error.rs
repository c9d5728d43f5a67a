use thiserror::Error;

use crate::var::Var;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("division by the zero expression")]
    DivisionByZero,
    #[error("denominator vanishes at the evaluation point")]
    DenominatorVanishes,
    #[error("no value assigned to {0}")]
    Unassigned(Var),
    #[error("denominator factor {0} vanishes under the substitution")]
    VanishingFactor(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unexpected character {found:?} at offset {offset}")]
    Unexpected { found: char, offset: usize },
    #[error("invalid number {0:?}")]
    BadNumber(String),
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("zero denominator")]
    ZeroDenominator,
}

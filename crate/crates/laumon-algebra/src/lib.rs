//! Exact arithmetic for the fixed-point formulas: Laurent monomials in
//! `t_1..t_9, u, v, z`, rational functions in factored lowest-terms form,
//! truncated Laurent series in the spectral variable, and exact evaluation.

mod cyclo;
mod error;
mod eval;
mod expr;
mod gcd;
mod parse;
mod poly;
mod series;
mod var;

pub use cyclo::cyclotomic;
pub use error::{AlgebraError, ParseError};
pub use eval::Point;
pub use expr::{Factor, LaurentExpr};
pub use gcd::gcd;
pub use poly::Poly;
pub use series::{expand_series, Direction, LaurentSeries};
pub use var::{Monomial, Var, MAX_T, NVARS};

//! Exact evaluation points.

use num_rational::BigRational;
use num_traits::{Pow, Zero};

use crate::error::AlgebraError;
use crate::poly::Poly;
use crate::var::{Monomial, Var, NVARS};

/// An assignment of rationals to some of the variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Point {
    values: [Option<BigRational>; NVARS],
}

impl Point {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, v: Var, x: BigRational) {
        self.values[v.slot()] = Some(x);
    }

    pub fn with(mut self, v: Var, x: BigRational) -> Self {
        self.set(v, x);
        self
    }

    pub fn get(&self, v: Var) -> Option<&BigRational> {
        self.values[v.slot()].as_ref()
    }

    pub fn monomial(&self, m: &Monomial) -> Result<BigRational, AlgebraError> {
        let mut acc = BigRational::from_integer(1.into());
        for (v, e) in m.iter() {
            let x = self.get(v).ok_or(AlgebraError::Unassigned(v))?;
            if x.is_zero() {
                if e < 0 {
                    return Err(AlgebraError::DenominatorVanishes);
                }
                return Ok(BigRational::zero());
            }
            acc *= Pow::pow(x, e);
        }
        Ok(acc)
    }

    pub fn poly(&self, p: &Poly) -> Result<BigRational, AlgebraError> {
        let mut acc = BigRational::zero();
        for (m, c) in p.terms() {
            acc += self.monomial(m)? * BigRational::from_integer(c.clone());
        }
        Ok(acc)
    }
}

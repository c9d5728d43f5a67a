//! Truncated Laurent expansions in the spectral variable `z`.

use std::fmt;

use crate::expr::LaurentExpr;
use crate::poly::Poly;
use crate::var::{Monomial, Var};

/// Which point of the `z`-line to expand around.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    /// Powers of `z^-1`.
    AtInfinity,
    /// Powers of `z`.
    AtZero,
}

impl Direction {
    /// The monomial `w` in which the expansion is a power series.
    pub fn local(self) -> Monomial {
        match self {
            Direction::AtInfinity => Monomial::pow(Var::Z, -1),
            Direction::AtZero => Monomial::var(Var::Z),
        }
    }

    fn w_power(self, z_exp: i32) -> i32 {
        match self {
            Direction::AtInfinity => -z_exp,
            Direction::AtZero => z_exp,
        }
    }
}

/// `Σ_{k=low}^{order} c_k w^k` with `w = z^-1` or `w = z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentSeries {
    direction: Direction,
    order: i32,
    low: i32,
    coeffs: Vec<LaurentExpr>,
}

impl LaurentSeries {
    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn order(&self) -> i32 {
        self.order
    }

    pub fn low(&self) -> i32 {
        self.low
    }

    pub fn coeffs(&self) -> &[LaurentExpr] {
        &self.coeffs
    }

    /// Coefficient of `w^k`; zero outside the stored range below `order`.
    pub fn coeff(&self, k: i32) -> LaurentExpr {
        assert!(k <= self.order, "coefficient beyond truncation order");
        if k < self.low {
            return LaurentExpr::zero();
        }
        self.coeffs[(k - self.low) as usize].clone()
    }

    /// The truncated series as an expression in `z`.
    pub fn to_expr(&self) -> LaurentExpr {
        let w = self.direction.local();
        self.coeffs
            .iter()
            .zip(self.low..)
            .map(|(c, k)| c * &LaurentExpr::monomial(w.powi(k)))
            .sum()
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = match self.direction {
            Direction::AtInfinity => "z^-",
            Direction::AtZero => "z^",
        };
        let mut first = true;
        for (c, k) in self.coeffs.iter().zip(self.low..) {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if k == 0 {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c})*{w}{k}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O({w}{})", self.order + 1)
    }
}

/// A power series in `w` with unit constant term, truncated at `len` terms.
type Unit = Vec<LaurentExpr>;

fn mul_trunc(a: &Unit, b: &Unit, len: usize) -> Unit {
    (0..len)
        .map(|k| {
            let terms: Vec<LaurentExpr> = (0..=k)
                .filter(|&i| i < a.len() && k - i < b.len())
                .filter(|&i| !a[i].is_zero() && !b[k - i].is_zero())
                .map(|i| &a[i] * &b[k - i])
                .collect();
            LaurentExpr::sum_of(terms.iter())
        })
        .collect()
}

fn inv_trunc(a: &Unit, len: usize) -> Unit {
    let b0 = a[0].inv().expect("unit constant term");
    let mut b = vec![b0.clone()];
    for k in 1..len {
        let terms: Vec<LaurentExpr> = (1..=k)
            .filter(|&j| j < a.len() && !a[j].is_zero())
            .map(|j| &a[j] * &b[k - j])
            .collect();
        b.push(-(&b0 * &LaurentExpr::sum_of(terms.iter())));
    }
    b
}

fn pow_trunc(a: &Unit, e: i32, len: usize) -> Unit {
    if a.iter().skip(1).filter(|c| !c.is_zero()).count() <= 1 && a.len() <= 2 {
        // (c0 + c1 w)^e by the binomial series
        let c0 = &a[0];
        let ratio = a.get(1).map(|c1| c1 / c0).unwrap_or_else(LaurentExpr::zero);
        let lead = c0.pow(e);
        let mut binom = LaurentExpr::one();
        let mut power = LaurentExpr::one();
        let mut out = Vec::with_capacity(len);
        for k in 0..len {
            if k > 0 {
                binom = &binom * &LaurentExpr::ratio(e as i64 - k as i64 + 1, k as i64);
                power = &power * &ratio;
            }
            out.push(&(&lead * &binom) * &power);
        }
        return out;
    }
    let base = if e < 0 { inv_trunc(a, len) } else { a.clone() };
    let mut out = vec![LaurentExpr::one()];
    for _ in 0..e.unsigned_abs() {
        out = mul_trunc(&out, &base, len);
    }
    out
}

/// Split `p` as `w^val * (unit series)` with coefficients free of `z`.
fn local_form(p: &Poly, dir: Direction) -> (i32, Unit) {
    let mut parts: Vec<(i32, LaurentExpr)> = p
        .collect_in(Var::Z)
        .into_iter()
        .map(|(e, c)| (dir.w_power(e), LaurentExpr::from_poly(&c)))
        .collect();
    parts.sort_by_key(|(k, _)| *k);
    let val = parts[0].0;
    let top = parts.last().unwrap().0;
    let mut unit = vec![LaurentExpr::zero(); (top - val + 1) as usize];
    for (k, c) in parts {
        unit[(k - val) as usize] = c;
    }
    (val, unit)
}

/// Expand `f` around `z = ∞` or `z = 0` through `w^order`.
///
/// Coefficients live in the field of rational functions of the other
/// variables, so every nonzero leading coefficient is invertible.
pub fn expand_series(f: &LaurentExpr, direction: Direction, order: i32) -> LaurentSeries {
    if f.is_zero() {
        return LaurentSeries {
            direction,
            order,
            low: 0,
            coeffs: vec![LaurentExpr::zero(); (order.max(-1) + 1) as usize],
        };
    }
    let (c, m) = f.leading_unit();
    let mut val = direction.w_power(m.exp(Var::Z));
    let scalar = LaurentExpr::term(c.clone(), m.with(Var::Z, 0));
    let mut pieces: Vec<(Unit, i32)> = Vec::new();
    let mut scalar_part = scalar;
    for (fac, e) in f
        .numerator_factors()
        .chain(f.denominator_factors().map(|(g, e)| (g, -e)))
    {
        if !fac.involves(Var::Z) {
            scalar_part = &scalar_part * &LaurentExpr::from_poly(&fac.to_poly()).pow(e);
            continue;
        }
        let (v, unit) = local_form(&fac.to_poly(), direction);
        val += v * e;
        pieces.push((unit, e));
    }
    let rest = f.rest_poly();
    if !rest.is_one() {
        if rest.involves(Var::Z) {
            let (v, unit) = local_form(rest, direction);
            val += v;
            pieces.push((unit, 1));
        } else {
            scalar_part = &scalar_part * &LaurentExpr::from_poly(rest);
        }
    }
    let low = val.min(0);
    let len = (order - val + 1).max(0) as usize;
    let mut acc: Unit = vec![scalar_part];
    acc.truncate(len);
    for (unit, e) in &pieces {
        if len == 0 {
            break;
        }
        acc = mul_trunc(&acc, &pow_trunc(unit, *e, len), len);
    }
    let mut coeffs = vec![LaurentExpr::zero(); (order - low + 1).max(0) as usize];
    for (k, c) in acc.into_iter().enumerate() {
        let power = val + k as i32;
        if power <= order {
            coeffs[(power - low) as usize] = c;
        }
    }
    LaurentSeries {
        direction,
        order,
        low,
        coeffs,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> LaurentExpr {
        LaurentExpr::var(Var::Z)
    }

    #[test]
    fn geometric_at_infinity() {
        let a = LaurentExpr::var(Var::t(1));
        let f = (LaurentExpr::one() - &a * &z().pow(-1)).inv().unwrap();
        let s = expand_series(&f, Direction::AtInfinity, 2);
        assert_eq!(s.coeff(0), LaurentExpr::one());
        assert_eq!(s.coeff(1), a);
        assert_eq!(s.coeff(2), a.pow(2));
    }

    #[test]
    fn geometric_at_zero() {
        let f = &z() / &(z() - LaurentExpr::one());
        let s = expand_series(&f, Direction::AtZero, 2);
        assert!(s.coeff(0).is_zero());
        assert_eq!(s.coeff(1), LaurentExpr::int(-1));
        assert_eq!(s.coeff(2), LaurentExpr::int(-1));
        assert_eq!(s.to_expr(), -z() - z().pow(2));
    }

    #[test]
    fn pole_at_zero_keeps_principal_part() {
        let f = (z() - LaurentExpr::int(2)).inv().unwrap() * z().pow(-1);
        let s = expand_series(&f, Direction::AtZero, 1);
        assert_eq!(s.low(), -1);
        assert_eq!(s.coeff(-1), LaurentExpr::ratio(-1, 2));
        assert_eq!(s.coeff(0), LaurentExpr::ratio(-1, 4));
        assert_eq!(s.coeff(1), LaurentExpr::ratio(-1, 8));
    }

    #[test]
    fn constant_term_of_psi_vacuum() {
        let t1 = LaurentExpr::var(Var::t(1));
        let t2 = LaurentExpr::var(Var::t(2));
        let v = LaurentExpr::var(Var::V);
        let zi = z().pow(-1);
        let num = LaurentExpr::one() - &(t2.pow(2) * v.pow(3)) * &zi;
        let den = LaurentExpr::one() - &(t1.pow(2) * v.clone()) * &zi;
        let f = t2.pow(-1) * t1.clone() * v.pow(-1) * num / den;
        let s = expand_series(&f, Direction::AtInfinity, 0);
        assert_eq!(s.coeff(0), t2.pow(-1) * t1 * v.pow(-1));
    }
}

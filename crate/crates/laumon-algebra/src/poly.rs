//! Sparse Laurent polynomials with integer coefficients.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::var::{Monomial, Var};

/// Terms are kept sorted by descending monomial with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Poly {
    terms: Vec<(Monomial, BigInt)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::term(Monomial::ONE, c)
    }

    pub fn term(m: Monomial, c: BigInt) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, BigInt::one())
    }

    /// `1 - c*m` for `c` an integer.
    pub fn one_minus(m: Monomial, c: BigInt) -> Self {
        Self::from_terms([(Monomial::ONE, BigInt::one()), (m, -c)])
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigInt)>>(terms: I) -> Self {
        let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
        for (m, c) in terms {
            *acc.entry(m).or_default() += c;
        }
        Self::from_map(acc)
    }

    fn from_map(acc: HashMap<Monomial, BigInt>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by_key(|t| std::cmp::Reverse(t.0));
        Poly { terms }
    }

    pub fn terms(&self) -> &[(Monomial, BigInt)] {
        &self.terms
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn lead(&self) -> Option<&(Monomial, BigInt)> {
        self.terms.first()
    }

    pub fn involves(&self, v: Var) -> bool {
        self.terms.iter().any(|(m, _)| m.involves(v))
    }

    pub fn neg(&self) -> Self {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_terms(self.terms.iter().chain(other.terms.iter()).cloned())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let mut acc: HashMap<Monomial, BigInt> = HashMap::with_capacity(self.len() * other.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *acc.entry(*ma * *mb).or_default() += ca * cb;
            }
        }
        Self::from_map(acc)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: Monomial) -> Self {
        Poly {
            terms: self.terms.iter().map(|(x, c)| (*x * m, c.clone())).collect(),
        }
    }

    /// Exact division of every coefficient by `c`.
    pub fn div_int(&self, c: &BigInt) -> Self {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, x)| {
                    debug_assert!((x % c).is_zero());
                    (*m, x / c)
                })
                .collect(),
        }
    }

    /// Gcd of the coefficients (nonnegative).
    pub fn content(&self) -> BigInt {
        self.terms.iter().fold(BigInt::zero(), |g, (_, c)| g.gcd(c))
    }

    /// Componentwise minimum of the exponents.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        match it.next() {
            None => Monomial::ONE,
            Some((m, _)) => it.fold(*m, |acc, (x, _)| acc.meet(x)),
        }
    }

    /// Write `self = c * m * p` with `p` primitive, free of monomial factors
    /// and with positive leading coefficient. Panics on zero.
    pub fn split_units(&self) -> (BigInt, Monomial, Poly) {
        assert!(!self.is_zero(), "split_units of zero polynomial");
        let mut c = self.content();
        if self.terms[0].1.is_negative() {
            c = -c;
        }
        let m = self.monomial_content();
        let inv = m.inv();
        let p = Poly {
            terms: self.terms.iter().map(|(x, k)| (*x * inv, k / &c)).collect(),
        };
        (c, m, p)
    }

    pub fn map_monomials(&self, f: &dyn Fn(Monomial) -> Monomial) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (f(*m), c.clone())))
    }

    /// Exact quotient `self / divisor` in the Laurent ring, if it exists.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        let sa = self.monomial_content();
        let sb = divisor.monomial_content();
        let a = self.mul_monomial(sa.inv());
        let b = divisor.mul_monomial(sb.inv());
        let (lb_m, lb_c) = b.terms[0].clone();
        let mut rem: BTreeMap<Monomial, BigInt> = a.terms.into_iter().collect();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.iter().next_back().map(|(m, c)| (*m, c.clone())) {
            if !m.divisible_by(&lb_m) {
                return None;
            }
            let (q, r) = c.div_rem(&lb_c);
            if !r.is_zero() {
                return None;
            }
            let qm = m / lb_m;
            for (bm, bc) in &b.terms {
                let key = *bm * qm;
                let entry = rem.entry(key).or_default();
                *entry -= bc * &q;
                if entry.is_zero() {
                    rem.remove(&key);
                }
            }
            quot.push((qm, q));
        }
        Some(Self::from_terms(quot).mul_monomial(sa / sb))
    }

    /// Largest and smallest exponent of `v` among the terms.
    pub fn degree_range(&self, v: Var) -> Option<(i32, i32)> {
        let mut it = self.terms.iter().map(|(m, _)| m.exp(v));
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), e| (lo.min(e), hi.max(e))))
    }

    /// Total degree after clearing the monomial content.
    pub fn total_degree_span(&self) -> u64 {
        let lo = self.monomial_content();
        self.terms
            .iter()
            .map(|(m, _)| (*m / lo).exponents().iter().map(|&e| e as u64).sum())
            .max()
            .unwrap_or(0)
    }

    /// Group the terms by the exponent of `v`: returns `(e, coefficient)`
    /// with coefficients free of `v`, ascending in `e`.
    pub fn collect_in(&self, v: Var) -> Vec<(i32, Poly)> {
        let mut groups: BTreeMap<i32, Vec<(Monomial, BigInt)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            groups.entry(m.exp(v)).or_default().push((m.with(v, 0), c.clone()));
        }
        groups.into_iter().map(|(e, ts)| (e, Self::from_terms(ts))).collect()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(e: i32) -> Monomial {
        Monomial::pow(Var::V, e)
    }

    #[test]
    fn exact_division_of_binomials() {
        let a = Poly::one_minus(v(2), BigInt::one());
        let b = Poly::one_minus(v(1), BigInt::one());
        let q = a.div_exact(&b).unwrap();
        assert_eq!(q, Poly::from_terms([(Monomial::ONE, 1.into()), (v(1), 1.into())]));
        assert!(b.div_exact(&a).is_none());
    }

    #[test]
    fn laurent_division_tracks_monomial_shift() {
        let a = Poly::one_minus(v(2), BigInt::one()).mul_monomial(v(-3));
        let b = Poly::one_minus(v(1), BigInt::one()).mul_monomial(v(1));
        let q = a.div_exact(&b).unwrap();
        assert_eq!(q.mul(&b), a);
    }

    #[test]
    fn split_units_normalizes() {
        let p = Poly::from_terms([(v(3), (-4).into()), (v(1), 6.into())]);
        let (c, m, q) = p.split_units();
        assert_eq!(c, BigInt::from(-2));
        assert_eq!(m, v(1));
        assert_eq!(q.to_string(), "2*v^2 - 3");
    }
}

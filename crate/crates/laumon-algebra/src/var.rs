//! Variables and Laurent monomials.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Div, Mul};

/// Largest supported index for the torus variables `t_i`.
pub const MAX_T: usize = 9;

/// Number of exponent slots: `t_1..t_9`, `u`, `v`, `z`.
pub const NVARS: usize = MAX_T + 3;

const U_SLOT: usize = MAX_T;
const V_SLOT: usize = MAX_T + 1;
const Z_SLOT: usize = MAX_T + 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    /// `t_i` with `1 <= i <= MAX_T`.
    T(u8),
    U,
    V,
    /// The spectral variable.
    Z,
}

impl Var {
    /// `t_i`; panics when `i` is outside `1..=MAX_T`.
    pub fn t(i: usize) -> Var {
        assert!((1..=MAX_T).contains(&i), "t-index {i} out of range 1..={MAX_T}");
        Var::T(i as u8)
    }

    pub fn slot(self) -> usize {
        match self {
            Var::T(i) => i as usize - 1,
            Var::U => U_SLOT,
            Var::V => V_SLOT,
            Var::Z => Z_SLOT,
        }
    }

    pub fn from_slot(slot: usize) -> Var {
        match slot {
            U_SLOT => Var::U,
            V_SLOT => Var::V,
            Z_SLOT => Var::Z,
            s if s < MAX_T => Var::T(s as u8 + 1),
            s => panic!("slot {s} out of range"),
        }
    }

    pub fn all() -> impl Iterator<Item = Var> {
        (0..NVARS).map(Var::from_slot)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::T(i) => write!(f, "t{i}"),
            Var::U => f.write_str("u"),
            Var::V => f.write_str("v"),
            Var::Z => f.write_str("z"),
        }
    }
}

/// A Laurent monomial `t^a u^b v^c z^d` (no coefficient).
///
/// Ordered graded-lexicographically on `(t_1, .., t_9, u, v)` with the
/// exponent of `z` as the final tie-breaker.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial([i32; NVARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; NVARS]);

    pub fn var(v: Var) -> Self {
        Self::pow(v, 1)
    }

    pub fn pow(v: Var, e: i32) -> Self {
        let mut m = Self::ONE;
        m.0[v.slot()] = e;
        m
    }

    pub fn from_exponents(exps: [i32; NVARS]) -> Self {
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[i32; NVARS] {
        &self.0
    }

    pub fn exp(&self, v: Var) -> i32 {
        self.0[v.slot()]
    }

    pub fn with(mut self, v: Var, e: i32) -> Self {
        self.0[v.slot()] = e;
        self
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn involves(&self, v: Var) -> bool {
        self.0[v.slot()] != 0
    }

    /// Total degree over everything except `z`.
    pub fn degree(&self) -> i64 {
        self.0[..Z_SLOT].iter().map(|&e| e as i64).sum()
    }

    pub fn inv(&self) -> Self {
        let mut out = *self;
        for e in out.0.iter_mut() {
            *e = e.checked_neg().expect("exponent overflow");
        }
        out
    }

    pub fn powi(&self, k: i32) -> Self {
        let mut out = *self;
        for e in out.0.iter_mut() {
            *e = e.checked_mul(k).expect("exponent overflow");
        }
        out
    }

    pub fn meet(&self, other: &Self) -> Self {
        let mut out = *self;
        for (a, b) in out.0.iter_mut().zip(other.0.iter()) {
            *a = (*a).min(*b);
        }
        out
    }

    /// True when every exponent is nonnegative.
    pub fn is_polynomial(&self) -> bool {
        self.0.iter().all(|&e| e >= 0)
    }

    /// True when `other` divides `self` inside the polynomial ring.
    pub fn divisible_by(&self, other: &Self) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a >= b)
    }

    /// Gcd of the absolute exponents (0 for the unit monomial).
    pub fn content(&self) -> u32 {
        self.0.iter().fold(0u32, |g, &e| num_integer::gcd(g, e.unsigned_abs()))
    }

    /// Exact `k`-th root; panics when some exponent is not divisible by `k`.
    pub fn root(&self, k: u32) -> Self {
        let mut out = *self;
        for e in out.0.iter_mut() {
            assert!(*e % k as i32 == 0, "monomial is not a {k}-th power");
            *e /= k as i32;
        }
        out
    }

    /// Whether the first nonzero exponent (in slot order) is positive.
    pub fn is_oriented(&self) -> bool {
        self.0.iter().find(|&&e| e != 0).is_none_or(|&e| e > 0)
    }

    /// Apply a substitution that sends every variable to a monomial.
    pub fn substitute(&self, f: &dyn Fn(Var) -> Monomial) -> Monomial {
        let mut out = Monomial::ONE;
        for (slot, &e) in self.0.iter().enumerate() {
            if e != 0 {
                out = out * f(Var::from_slot(slot)).powi(e);
            }
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, i32)> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(s, &e)| (Var::from_slot(s), e))
    }
}

impl Mul for Monomial {
    type Output = Monomial;
    fn mul(mut self, rhs: Monomial) -> Monomial {
        for (a, b) in self.0.iter_mut().zip(rhs.0.iter()) {
            *a = a.checked_add(*b).expect("exponent overflow");
        }
        self
    }
}

impl Div for Monomial {
    type Output = Monomial;
    fn div(mut self, rhs: Monomial) -> Monomial {
        for (a, b) in self.0.iter_mut().zip(rhs.0.iter()) {
            *a = a.checked_sub(*b).expect("exponent overflow");
        }
        self
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0[..Z_SLOT].cmp(&other.0[..Z_SLOT]))
            .then_with(|| self.0[Z_SLOT].cmp(&other.0[Z_SLOT]))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (v, e) in self.iter() {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_order_puts_higher_degree_first() {
        let a = Monomial::pow(Var::t(1), 2);
        let b = Monomial::var(Var::t(1)) * Monomial::var(Var::V);
        let c = Monomial::var(Var::V);
        assert!(a > c);
        assert!(a > b);
        assert!(b > c);
        assert!(Monomial::var(Var::t(1)) > Monomial::var(Var::t(2)));
    }

    #[test]
    fn z_breaks_ties_only() {
        let a = Monomial::var(Var::V) * Monomial::var(Var::Z);
        let b = Monomial::var(Var::V);
        assert!(a > b);
        assert!(Monomial::var(Var::U) > Monomial::var(Var::Z));
    }

    #[test]
    fn display_lists_exponents() {
        let m = Monomial::pow(Var::t(1), 2) * Monomial::pow(Var::V, -1);
        assert_eq!(m.to_string(), "t1^2*v^-1");
        assert_eq!(Monomial::ONE.to_string(), "1");
    }

    #[test]
    fn orientation_and_content() {
        let m = Monomial::pow(Var::t(2), -2) * Monomial::pow(Var::V, 4);
        assert!(!m.is_oriented());
        assert!(m.inv().is_oriented());
        assert_eq!(m.content(), 2);
        assert_eq!(m.root(2).exp(Var::V), 2);
    }
}

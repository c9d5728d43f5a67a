//! Exact rational functions in `t_1..t_9, u, v, z` kept in factored form.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cyclo::{cyclotomic_poly, eval_cyclotomic, split_binomial, substitute_cyclotomic, CycloSplit};
use crate::error::AlgebraError;
use crate::eval::Point;
use crate::gcd::gcd;
use crate::poly::Poly;
use crate::var::{Monomial, Var};

/// Expanded terms, leading term first.
pub type Terms = Vec<(Monomial, BigRational)>;

/// An irreducible-ish building block of numerators and denominators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Factor {
    /// `Φ_order(base)` with `base` primitive and positively oriented, so the
    /// factor is irreducible.
    Cyclo { base: Monomial, order: u32 },
    /// A primitive polynomial with no monomial factor and positive leading
    /// coefficient. Only ever appears in denominators.
    Poly(Poly),
}

impl Factor {
    pub fn to_poly(&self) -> Poly {
        match self {
            Factor::Cyclo { base, order } => cyclotomic_poly(*order, *base),
            Factor::Poly(p) => p.clone(),
        }
    }

    pub fn involves(&self, v: Var) -> bool {
        match self {
            Factor::Cyclo { base, .. } => base.involves(v),
            Factor::Poly(p) => p.involves(v),
        }
    }

    fn evaluate(&self, pt: &Point) -> Result<BigRational, AlgebraError> {
        match self {
            Factor::Cyclo { base, order } => Ok(eval_cyclotomic(*order, &pt.monomial(base)?)),
            Factor::Poly(p) => pt.poly(p),
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_poly())
    }
}

/// A rational function `coeff * mono * ∏ factor^e * rest`.
///
/// Positive and negative factors never share a key, `rest` is a primitive
/// polynomial coprime to every denominator factor, so the representation is
/// always in lowest terms. Equality is decided by subtraction.
#[derive(Clone)]
pub struct LaurentExpr {
    coeff: BigRational,
    mono: Monomial,
    factors: BTreeMap<Factor, i32>,
    rest: Poly,
}

impl LaurentExpr {
    pub fn zero() -> Self {
        LaurentExpr {
            coeff: BigRational::zero(),
            mono: Monomial::ONE,
            factors: BTreeMap::new(),
            rest: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::term(c, Monomial::ONE)
    }

    pub fn int(c: i64) -> Self {
        Self::constant(BigRational::from_integer(c.into()))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Self::constant(BigRational::new(n.into(), d.into()))
    }

    pub fn term(c: BigRational, m: Monomial) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentExpr {
            coeff: c,
            mono: m,
            factors: BTreeMap::new(),
            rest: Poly::one(),
        }
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(BigRational::one(), m)
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Monomial::var(v))
    }

    /// `1 - m`.
    pub fn one_minus(m: Monomial) -> Self {
        if m.is_one() {
            return Self::zero();
        }
        Self::from_split(split_one_plus_minus(m))
    }

    pub fn from_poly(p: &Poly) -> Self {
        if p.is_zero() {
            return Self::zero();
        }
        let mut out = Self::one();
        out.absorb(p, 1);
        out.normalize();
        out
    }

    /// Build from a polynomial with rational coefficients.
    pub fn from_rational_terms(terms: &[(Monomial, BigRational)]) -> Self {
        let den = terms.iter().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let p = Poly::from_terms(terms.iter().map(|(m, c)| (*m, c.numer() * (&den / c.denom()))));
        let mut out = Self::from_poly(&p);
        out.coeff /= BigRational::from_integer(den);
        out
    }

    fn from_split(s: CycloSplit) -> Self {
        let mut factors = BTreeMap::new();
        for (base, order) in s.factors {
            *factors.entry(Factor::Cyclo { base, order }).or_insert(0) += 1;
        }
        LaurentExpr {
            coeff: BigRational::from_integer(s.coeff),
            mono: s.unit,
            factors,
            rest: Poly::one(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.coeff.is_one() && self.mono.is_one() && self.factors.is_empty() && self.rest.is_one()
    }

    /// `Some((c, m))` when the expression is a single term `c*m`.
    pub fn as_term(&self) -> Option<(&BigRational, Monomial)> {
        (self.factors.is_empty() && self.rest.is_one()).then_some((&self.coeff, self.mono))
    }

    pub fn as_constant(&self) -> Option<&BigRational> {
        if self.is_zero() {
            return Some(&self.coeff);
        }
        self.as_term().filter(|(_, m)| m.is_one()).map(|(c, _)| c)
    }

    pub fn involves(&self, v: Var) -> bool {
        !self.is_zero()
            && (self.mono.involves(v) || self.rest.involves(v) || self.factors.keys().any(|f| f.involves(v)))
    }

    /// Denominator factors with their multiplicities.
    pub fn denominator_factors(&self) -> impl Iterator<Item = (&Factor, i32)> {
        self.factors.iter().filter(|(_, &e)| e < 0).map(|(f, &e)| (f, -e))
    }

    /// Numerator factors with their multiplicities; the unfactored remainder
    /// of the numerator is `rest_poly`.
    pub fn numerator_factors(&self) -> impl Iterator<Item = (&Factor, i32)> {
        self.factors.iter().filter(|(_, &e)| e > 0).map(|(f, &e)| (f, e))
    }

    pub fn rest_poly(&self) -> &Poly {
        &self.rest
    }

    pub fn leading_unit(&self) -> (&BigRational, Monomial) {
        (&self.coeff, self.mono)
    }

    /// Multiply by `p^sign` for `sign = ±1` without normalizing.
    fn absorb(&mut self, p: &Poly, sign: i32) {
        debug_assert!(!p.is_zero());
        let (c, m, q) = p.split_units();
        let c = BigRational::from_integer(c);
        if sign > 0 {
            self.coeff *= c;
            self.mono = self.mono * m;
        } else {
            self.coeff /= c;
            self.mono = self.mono / m;
        }
        if q.is_one() {
            return;
        }
        if let Some(s) = split_binomial(&q) {
            let c = BigRational::from_integer(s.coeff);
            if sign > 0 {
                self.coeff *= c;
                self.mono = self.mono * s.unit;
            } else {
                self.coeff /= c;
                self.mono = self.mono / s.unit;
            }
            for (base, order) in s.factors {
                *self.factors.entry(Factor::Cyclo { base, order }).or_insert(0) += sign;
            }
        } else if sign > 0 {
            self.rest = self.rest.mul(&q);
        } else {
            *self.factors.entry(Factor::Poly(q)).or_insert(0) -= 1;
        }
    }

    fn prune(&mut self) {
        self.factors.retain(|_, e| *e != 0);
    }

    fn normalize(&mut self) {
        if self.coeff.is_zero() {
            *self = Self::zero();
            return;
        }
        self.prune();
        // positive opaque factors belong to the remainder
        let pos_polys: Vec<(Factor, i32)> = self
            .factors
            .iter()
            .filter(|(f, &e)| e > 0 && matches!(f, Factor::Poly(_)))
            .map(|(f, &e)| (f.clone(), e))
            .collect();
        for (f, e) in pos_polys {
            self.factors.remove(&f);
            if let Factor::Poly(p) = f {
                self.rest = self.rest.mul(&p.pow(e as u32));
            }
        }
        if !self.rest.is_one() {
            let rest = std::mem::replace(&mut self.rest, Poly::one());
            self.absorb(&rest, 1);
        }
        if self.rest.is_one() && !self.factors.keys().any(|f| matches!(f, Factor::Poly(_))) {
            self.prune();
            return;
        }
        // cancel cyclotomic denominators against the remainder
        let neg_cyclo: Vec<Factor> = self
            .factors
            .iter()
            .filter(|(f, &e)| e < 0 && matches!(f, Factor::Cyclo { .. }))
            .map(|(f, _)| f.clone())
            .collect();
        for f in neg_cyclo {
            if self.rest.is_one() {
                break;
            }
            let fp = f.to_poly();
            while self.factors[&f] < 0 {
                match self.rest.div_exact(&fp) {
                    Some(q) => {
                        self.rest = q;
                        *self.factors.get_mut(&f).unwrap() += 1;
                    }
                    None => break,
                }
            }
        }
        // opaque denominators against positive cyclotomic factors and the remainder
        let neg_polys: Vec<(Poly, i32)> = self
            .factors
            .iter()
            .filter_map(|(f, &e)| match f {
                Factor::Poly(p) if e < 0 => Some((p.clone(), -e)),
                _ => None,
            })
            .collect();
        for (p, _) in &neg_polys {
            self.factors.remove(&Factor::Poly(p.clone()));
        }
        for (p, mult) in neg_polys {
            for _ in 0..mult {
                let mut q = p.clone();
                let pos: Vec<Factor> = self
                    .factors
                    .iter()
                    .filter(|(f, &e)| e > 0 && matches!(f, Factor::Cyclo { .. }))
                    .map(|(f, _)| f.clone())
                    .collect();
                for g in pos {
                    let gp = g.to_poly();
                    while self.factors[&g] > 0 {
                        match q.div_exact(&gp) {
                            Some(r) => {
                                q = r;
                                *self.factors.get_mut(&g).unwrap() -= 1;
                            }
                            None => break,
                        }
                    }
                }
                if !self.rest.is_one() && !q.is_constant() {
                    let g = gcd(&self.rest, &q);
                    if !g.is_one() {
                        self.rest = self.rest.div_exact(&g).expect("gcd divides remainder");
                        q = q.div_exact(&g).expect("gcd divides factor");
                    }
                }
                self.absorb(&q, -1);
            }
        }
        if !self.rest.is_one() {
            let rest = std::mem::replace(&mut self.rest, Poly::one());
            let (c, m, q) = rest.split_units();
            self.coeff *= BigRational::from_integer(c);
            self.mono = self.mono * m;
            self.rest = q;
        }
        self.prune();
    }

    pub fn inv(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let mut out = LaurentExpr {
            coeff: self.coeff.recip(),
            mono: self.mono.inv(),
            factors: BTreeMap::new(),
            rest: Poly::one(),
        };
        for (f, &e) in &self.factors {
            match f {
                Factor::Poly(p) => out.rest = out.rest.mul(&p.pow((-e) as u32)),
                _ => {
                    out.factors.insert(f.clone(), -e);
                }
            }
        }
        if !self.rest.is_one() {
            out.absorb(&self.rest, -1);
        }
        out.normalize();
        Ok(out)
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, AlgebraError> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, k: i32) -> Self {
        if k < 0 {
            return self.inv().expect("negative power of zero").pow(-k);
        }
        if k == 0 {
            return Self::one();
        }
        if self.is_zero() {
            return Self::zero();
        }
        let mut out = LaurentExpr {
            coeff: num_traits::Pow::pow(&self.coeff, k as u32),
            mono: self.mono.powi(k),
            factors: self.factors.iter().map(|(f, &e)| (f.clone(), e * k)).collect(),
            rest: self.rest.pow(k as u32),
        };
        out.normalize();
        out
    }

    fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut factors = self.factors.clone();
        for (f, &e) in &other.factors {
            *factors.entry(f.clone()).or_insert(0) += e;
        }
        let mut out = LaurentExpr {
            coeff: &self.coeff * &other.coeff,
            mono: self.mono * other.mono,
            factors,
            rest: self.rest.mul(&other.rest),
        };
        out.normalize();
        out
    }

    fn exp_of(&self, f: &Factor) -> i32 {
        self.factors.get(f).copied().unwrap_or(0)
    }

    /// Sum of many expressions over a least common denominator.
    pub fn sum_of<'a, I: IntoIterator<Item = &'a LaurentExpr>>(terms: I) -> Self {
        let terms: Vec<&LaurentExpr> = terms.into_iter().filter(|t| !t.is_zero()).collect();
        match terms.len() {
            0 => return Self::zero(),
            1 => return terms[0].clone(),
            _ => {}
        }
        let mut lcm: BTreeMap<Factor, i32> = BTreeMap::new();
        for t in &terms {
            for (f, &e) in &t.factors {
                if e < 0 {
                    let slot = lcm.entry(f.clone()).or_insert(0);
                    *slot = (*slot).max(-e);
                }
            }
        }
        let mut common: BTreeMap<Factor, i32> = terms[0]
            .factors
            .iter()
            .filter(|(f, &e)| e > 0 && !lcm.contains_key(*f))
            .map(|(f, &e)| (f.clone(), e))
            .collect();
        for t in &terms[1..] {
            common.retain(|f, e| {
                *e = (*e).min(t.exp_of(f));
                *e > 0
            });
        }
        let low = terms[1..].iter().fold(terms[0].mono, |acc, t| acc.meet(&t.mono));
        let den = terms.iter().fold(BigInt::one(), |acc, t| acc.lcm(t.coeff.denom()));

        // group terms sharing a factor pattern to expand each pattern once
        let mut groups: HashMap<BTreeMap<Factor, i32>, Vec<(Monomial, BigInt)>> = HashMap::new();
        let mut order: Vec<BTreeMap<Factor, i32>> = Vec::new();
        for t in &terms {
            let scale = t.coeff.numer() * (&den / t.coeff.denom());
            let shifted = t.mono / low;
            let key = t.factors.clone();
            let entry = groups.entry(key.clone()).or_insert_with(|| {
                order.push(key);
                Vec::new()
            });
            for (m, c) in t.rest.terms() {
                entry.push((*m * shifted, c * &scale));
            }
        }
        let mut cache: HashMap<Factor, Poly> = HashMap::new();
        let mut total: Vec<(Monomial, BigInt)> = Vec::new();
        for key in order {
            let mut acc = Poly::from_terms(groups.remove(&key).unwrap());
            if acc.is_zero() {
                continue;
            }
            let mut needed: Vec<(Factor, i32)> = Vec::new();
            for (f, &l) in &lcm {
                let e = key.get(f).copied().unwrap_or(0) + l;
                if e > 0 {
                    needed.push((f.clone(), e));
                }
            }
            for (f, &e) in &key {
                if e > 0 && !lcm.contains_key(f) {
                    let e = e - common.get(f).copied().unwrap_or(0);
                    if e > 0 {
                        needed.push((f.clone(), e));
                    }
                }
            }
            for (f, e) in needed {
                let fp = cache.entry(f.clone()).or_insert_with(|| f.to_poly());
                for _ in 0..e {
                    acc = acc.mul(fp);
                }
            }
            total.extend(acc.terms().iter().cloned());
        }
        let s = Poly::from_terms(total);
        if s.is_zero() {
            return Self::zero();
        }
        let mut factors = common;
        for (f, l) in lcm {
            factors.insert(f, -l);
        }
        let mut out = LaurentExpr {
            coeff: BigRational::new(BigInt::one(), den),
            mono: low,
            factors,
            rest: Poly::one(),
        };
        out.absorb(&s, 1);
        out.normalize();
        out
    }

    /// Integer polynomials `P_i` and one common nonzero `Q` with
    /// `terms[i] = P_i * Q`. Linear relations among the terms with Laurent
    /// polynomial weights can then be decided on the `P_i` alone.
    pub fn common_numerators(terms: &[LaurentExpr]) -> (Vec<Poly>, LaurentExpr) {
        let live: Vec<&LaurentExpr> = terms.iter().filter(|t| !t.is_zero()).collect();
        if live.is_empty() {
            return (vec![Poly::zero(); terms.len()], Self::one());
        }
        let mut lcm: BTreeMap<Factor, i32> = BTreeMap::new();
        for t in &live {
            for (f, &e) in &t.factors {
                if e < 0 {
                    let slot = lcm.entry(f.clone()).or_insert(0);
                    *slot = (*slot).max(-e);
                }
            }
        }
        let mut common: BTreeMap<Factor, i32> = live[0]
            .factors
            .iter()
            .filter(|(f, &e)| e > 0 && !lcm.contains_key(*f))
            .map(|(f, &e)| (f.clone(), e))
            .collect();
        for t in &live[1..] {
            common.retain(|f, e| {
                *e = (*e).min(t.exp_of(f));
                *e > 0
            });
        }
        let low = live[1..].iter().fold(live[0].mono, |acc, t| acc.meet(&t.mono));
        let den = live.iter().fold(BigInt::one(), |acc, t| acc.lcm(t.coeff.denom()));

        let mut cache: HashMap<(Factor, i32), Poly> = HashMap::new();
        let mut power = |f: &Factor, e: i32| -> Poly {
            cache
                .entry((f.clone(), e))
                .or_insert_with(|| f.to_poly().pow(e as u32))
                .clone()
        };
        let polys = terms
            .iter()
            .map(|t| {
                if t.is_zero() {
                    return Poly::zero();
                }
                let scale = t.coeff.numer() * (&den / t.coeff.denom());
                let mut acc = t.rest.scale(&scale).mul_monomial(t.mono / low);
                for (f, &l) in &lcm {
                    let e = t.exp_of(f) + l;
                    if e > 0 {
                        acc = acc.mul(&power(f, e));
                    }
                }
                for (f, &e) in &t.factors {
                    if e > 0 && !lcm.contains_key(f) {
                        let e = e - common.get(f).copied().unwrap_or(0);
                        if e > 0 {
                            acc = acc.mul(&power(f, e));
                        }
                    }
                }
                acc
            })
            .collect();
        let mut factors = common;
        for (f, l) in lcm {
            factors.insert(f, -l);
        }
        let q = LaurentExpr {
            coeff: BigRational::new(BigInt::one(), den),
            mono: low,
            factors,
            rest: Poly::one(),
        };
        (polys, q)
    }

    /// Canonical numerator and monic denominator, both expanded.
    pub fn canonical(&self) -> (Terms, Terms) {
        if self.is_zero() {
            return (Vec::new(), vec![(Monomial::ONE, BigRational::one())]);
        }
        let mut num = Poly::monomial(self.mono).mul(&self.rest);
        let mut den = Poly::one();
        for (f, &e) in &self.factors {
            let fp = f.to_poly();
            let target = if e > 0 { &mut num } else { &mut den };
            for _ in 0..e.abs() {
                *target = target.mul(&fp);
            }
        }
        let shift = den.monomial_content();
        den = den.mul_monomial(shift.inv());
        num = num.mul_monomial(shift.inv());
        let lc = BigRational::from_integer(den.lead().expect("nonzero").1.clone());
        let scale = &self.coeff / &lc;
        let num = num
            .terms()
            .iter()
            .map(|(m, c)| (*m, BigRational::from_integer(c.clone()) * &scale))
            .collect();
        let den = den
            .terms()
            .iter()
            .map(|(m, c)| (*m, BigRational::from_integer(c.clone()) / &lc))
            .collect();
        (num, den)
    }

    pub fn evaluate(&self, pt: &Point) -> Result<BigRational, AlgebraError> {
        if self.is_zero() {
            return Ok(BigRational::zero());
        }
        let mut val = &self.coeff * pt.monomial(&self.mono)?;
        for (f, &e) in &self.factors {
            let fv = f.evaluate(pt)?;
            if fv.is_zero() {
                if e < 0 {
                    return Err(AlgebraError::DenominatorVanishes);
                }
                return Ok(BigRational::zero());
            }
            val *= num_traits::Pow::pow(&fv, e);
        }
        if !self.rest.is_one() {
            val *= pt.poly(&self.rest)?;
        }
        Ok(val)
    }

    /// Apply the ring map sending each variable to a monomial.
    pub fn substitute(&self, f: &dyn Fn(Var) -> Monomial) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let mut parts = vec![Self::term(self.coeff.clone(), self.mono.substitute(f))];
        for (fac, &e) in &self.factors {
            let image = match fac {
                Factor::Cyclo { base, order } => {
                    substitute_cyclotomic(*order, base.substitute(f)).map(Self::from_split)
                }
                Factor::Poly(p) => {
                    let q = p.map_monomials(&|m| m.substitute(f));
                    (!q.is_zero()).then(|| Self::from_poly(&q))
                }
            };
            match image {
                Some(x) => parts.push(x.pow(e)),
                None if e < 0 => return Err(AlgebraError::VanishingFactor(fac.to_string())),
                None => return Ok(Self::zero()),
            }
        }
        if !self.rest.is_one() {
            let q = self.rest.map_monomials(&|m| m.substitute(f));
            if q.is_zero() {
                return Ok(Self::zero());
            }
            parts.push(Self::from_poly(&q));
        }
        Ok(parts.iter().product())
    }

    /// `f(z) -> f(z*m)`.
    pub fn scale_z(&self, m: Monomial) -> Self {
        let zm = Monomial::var(Var::Z) * m;
        self.substitute(&|v| if v == Var::Z { zm } else { Monomial::var(v) })
            .expect("monomial automorphisms never annihilate factors")
    }

    /// An upper bound for the total degree of numerator plus denominator
    /// after clearing monomials; used for identity-testing confidence.
    pub fn degree_bound(&self) -> u64 {
        let mut d = self.rest.total_degree_span();
        for (f, &e) in &self.factors {
            d += f.to_poly().total_degree_span() * e.unsigned_abs() as u64;
        }
        d + self
            .mono
            .exponents()
            .iter()
            .map(|e| e.unsigned_abs() as u64)
            .sum::<u64>()
    }
}

fn split_one_plus_minus(m: Monomial) -> CycloSplit {
    crate::cyclo::split_one_plus(true, m)
}

impl PartialEq for LaurentExpr {
    fn eq(&self, other: &Self) -> bool {
        if self.coeff != other.coeff {
            // cheap structural shortcut for single terms
            if let (Some(a), Some(b)) = (self.as_term(), other.as_term()) {
                return a == b;
            }
        }
        (self - other).is_zero()
    }
}

impl Eq for LaurentExpr {}

impl Default for LaurentExpr {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for LaurentExpr {
    fn from(c: i64) -> Self {
        Self::int(c)
    }
}

impl From<BigRational> for LaurentExpr {
    fn from(c: BigRational) -> Self {
        Self::constant(c)
    }
}

impl From<Monomial> for LaurentExpr {
    fn from(m: Monomial) -> Self {
        Self::monomial(m)
    }
}

impl From<Var> for LaurentExpr {
    fn from(v: Var) -> Self {
        Self::var(v)
    }
}

impl Neg for &LaurentExpr {
    type Output = LaurentExpr;
    fn neg(self) -> LaurentExpr {
        let mut out = self.clone();
        out.coeff = -out.coeff;
        out
    }
}

impl Neg for LaurentExpr {
    type Output = LaurentExpr;
    fn neg(mut self) -> LaurentExpr {
        self.coeff = -self.coeff;
        self
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&LaurentExpr> for &LaurentExpr {
            type Output = LaurentExpr;
            fn $method(self, rhs: &LaurentExpr) -> LaurentExpr {
                let f: fn(&LaurentExpr, &LaurentExpr) -> LaurentExpr = $body;
                f(self, rhs)
            }
        }
        impl $trait<LaurentExpr> for LaurentExpr {
            type Output = LaurentExpr;
            fn $method(self, rhs: LaurentExpr) -> LaurentExpr {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&LaurentExpr> for LaurentExpr {
            type Output = LaurentExpr;
            fn $method(self, rhs: &LaurentExpr) -> LaurentExpr {
                (&self).$method(rhs)
            }
        }
        impl $trait<LaurentExpr> for &LaurentExpr {
            type Output = LaurentExpr;
            fn $method(self, rhs: LaurentExpr) -> LaurentExpr {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| LaurentExpr::sum_of([a, b]));
binop!(Sub, sub, |a, b| LaurentExpr::sum_of([a, &-b]));
binop!(Mul, mul, |a, b| a.mul_ref(b));
binop!(Div, div, |a, b| a
    .checked_div(b)
    .expect("division by the zero expression"));

impl<'a> Sum<&'a LaurentExpr> for LaurentExpr {
    fn sum<I: Iterator<Item = &'a LaurentExpr>>(iter: I) -> Self {
        LaurentExpr::sum_of(iter)
    }
}

impl Sum<LaurentExpr> for LaurentExpr {
    fn sum<I: Iterator<Item = LaurentExpr>>(iter: I) -> Self {
        let v: Vec<LaurentExpr> = iter.collect();
        LaurentExpr::sum_of(v.iter())
    }
}

impl<'a> Product<&'a LaurentExpr> for LaurentExpr {
    fn product<I: Iterator<Item = &'a LaurentExpr>>(iter: I) -> Self {
        iter.fold(LaurentExpr::one(), |acc, x| acc.mul_ref(x))
    }
}

impl Product<LaurentExpr> for LaurentExpr {
    fn product<I: Iterator<Item = LaurentExpr>>(iter: I) -> Self {
        iter.fold(LaurentExpr::one(), |acc, x| acc.mul_ref(&x))
    }
}

fn write_rational_poly(f: &mut fmt::Formatter<'_>, terms: &[(Monomial, BigRational)]) -> fmt::Result {
    if terms.is_empty() {
        return f.write_str("0");
    }
    for (i, (m, c)) in terms.iter().enumerate() {
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

/// Canonical text: `num` or `(num)/(den)` with terms in descending order.
impl fmt::Display for LaurentExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (num, den) = self.canonical();
        let trivial_den = den.len() == 1 && den[0].0.is_one();
        if trivial_den {
            write_rational_poly(f, &num)
        } else {
            f.write_str("(")?;
            write_rational_poly(f, &num)?;
            f.write_str(")/(")?;
            write_rational_poly(f, &den)?;
            f.write_str(")")
        }
    }
}

impl fmt::Debug for LaurentExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v() -> LaurentExpr {
        LaurentExpr::var(Var::V)
    }

    fn t(i: usize) -> LaurentExpr {
        LaurentExpr::var(Var::t(i))
    }

    #[test]
    fn common_numerators_share_one_denominator() {
        let one = LaurentExpr::one();
        let a = &one / &(&one - &v().pow(2));
        let b = &t(1) / &(&one - &v());
        let c = LaurentExpr::zero();
        let terms = vec![a.clone(), b.clone(), c];
        let (polys, q) = LaurentExpr::common_numerators(&terms);
        assert!(polys[2].is_zero());
        for (p, x) in polys.iter().zip(&terms) {
            assert_eq!(&(LaurentExpr::from_poly(p) * &q), x);
        }
    }

    #[test]
    fn self_division_is_one() {
        let x = t(1) * v();
        assert!((&x / &x).is_one());
    }

    #[test]
    fn cyclotomic_cancellation() {
        let one = LaurentExpr::one();
        let a = &one - &v().pow(2);
        let b = &one - &v();
        assert_eq!(&a / &b, &one + &v());
        assert_eq!((&a / &b).to_string(), "v + 1");
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let a = LaurentExpr::one() - t(1).pow(2) * t(2).pow(-2);
        assert_eq!(a.checked_div(&LaurentExpr::zero()), Err(AlgebraError::DivisionByZero));
    }

    #[test]
    fn sums_cancel_to_zero() {
        let a = LaurentExpr::one_minus(Monomial::pow(Var::V, 2)).inv().unwrap();
        let b = LaurentExpr::one_minus(Monomial::pow(Var::V, -2)).inv().unwrap();
        // 1/(1-v^2) + 1/(1-v^-2) = 1
        assert!((&a + &b).is_one());
    }

    #[test]
    fn opaque_denominator_reduces() {
        let p = t(1) + v() + LaurentExpr::one();
        let q = t(1) * v() * LaurentExpr::int(2) - LaurentExpr::int(3);
        let prod = &p * &q;
        let x = &prod / &p;
        assert_eq!(x, q);
        assert_eq!(x.to_string(), "2*t1*v - 3");
        let y = &(&q / &p) * &p;
        assert_eq!(y, q);
    }

    #[test]
    fn canonical_text_of_fraction() {
        let x = v().pow(-1) * t(2).pow(-1) / (LaurentExpr::one() - v().pow(2));
        assert_eq!(x.to_string(), "(-t2^-1*v^-1)/(v^2 - 1)");
    }

    #[test]
    fn evaluation() {
        let mut pt = Point::new();
        pt.set(Var::V, BigRational::from_integer(3.into()));
        pt.set(Var::t(1), BigRational::from_integer(2.into()));
        assert_eq!(v().pow(2).evaluate(&pt).unwrap(), BigRational::from_integer(9.into()));
        let x = (LaurentExpr::one() - v().pow(2)) / (LaurentExpr::one() - v());
        pt.set(Var::V, BigRational::from_integer(2.into()));
        assert_eq!(x.evaluate(&pt).unwrap(), BigRational::from_integer(3.into()));
        pt.set(Var::V, BigRational::from_integer(3.into()));
        let y = t(1).pow(2) * v().pow(-2);
        assert_eq!(y.evaluate(&pt).unwrap(), BigRational::new(4.into(), 9.into()));
    }

    #[test]
    fn vanishing_denominator_reported() {
        let x = LaurentExpr::one_minus(Monomial::var(Var::V)).inv().unwrap();
        let mut pt = Point::new();
        pt.set(Var::V, BigRational::one());
        assert_eq!(x.evaluate(&pt), Err(AlgebraError::DenominatorVanishes));
    }

    #[test]
    fn substitution_detects_vanishing_factor() {
        let m = Monomial::var(Var::U) * Monomial::pow(Var::V, 4);
        let x = LaurentExpr::one_minus(m).inv().unwrap();
        let spec = |w: Var| match w {
            Var::U => Monomial::pow(Var::V, -4),
            other => Monomial::var(other),
        };
        assert!(matches!(x.substitute(&spec), Err(AlgebraError::VanishingFactor(_))));
        let y = LaurentExpr::one_minus(m);
        assert!(y.substitute(&spec).unwrap().is_zero());
    }

    #[test]
    fn scale_z_keeps_factors_irreducible() {
        let z = Monomial::var(Var::Z);
        let x = LaurentExpr::one_minus(z.inv() * Monomial::pow(Var::V, 3));
        let y = x.scale_z(Monomial::pow(Var::V, 3));
        assert_eq!(y, LaurentExpr::one_minus(z.inv()));
    }
}

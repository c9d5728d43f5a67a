//! Shared vocabulary: patterns as basis labels, single-box transitions and
//! the module interface the relation checker drives.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use dashmap::DashMap;
use laumon_algebra::{expand_series, Direction, LaurentExpr, LaurentSeries, Monomial};
use laumon_patterns::{AffinePattern, FinitePattern};
use serde::Serialize;

use crate::error::ActionError;

/// A basis label of a fixed-point basis.
pub trait Pattern: Clone + Ord + Hash + Send + Sync + fmt::Display + fmt::Debug + Serialize + 'static {
    fn rank(&self) -> usize;
    fn total(&self) -> u32;
}

impl Pattern for FinitePattern {
    fn rank(&self) -> usize {
        self.n()
    }
    fn total(&self) -> u32 {
        FinitePattern::total(self)
    }
}

impl Pattern for AffinePattern {
    fn rank(&self) -> usize {
        self.n()
    }
    fn total(&self) -> u32 {
        self.size()
    }
}

/// `e` lowers the degree, `f` raises it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum XKind {
    E,
    F,
}

impl XKind {
    /// `+1` for `e`, `-1` for `f`: the sign in `v^{±a}`.
    pub fn sign(self) -> i32 {
        match self {
            XKind::E => 1,
            XKind::F => -1,
        }
    }
}

impl fmt::Display for XKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            XKind::E => "e",
            XKind::F => "f",
        })
    }
}

/// Which expansion of a `ψ` eigenvalue.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PsiSign {
    Plus,
    Minus,
}

impl PsiSign {
    pub fn direction(self) -> Direction {
        match self {
            PsiSign::Plus => Direction::AtInfinity,
            PsiSign::Minus => Direction::AtZero,
        }
    }

    /// Whether mode `m` can be nonzero for this sign.
    pub fn admits(self, m: i32) -> bool {
        match self {
            PsiSign::Plus => m >= 0,
            PsiSign::Minus => m <= 0,
        }
    }
}

/// One nonzero matrix entry of `x_{k,r}`, for every `r` at once: the value
/// at mode `r` is `coeff0 * beta^r`.
#[derive(Clone, Debug)]
pub struct Transition<P> {
    pub target: P,
    pub column: i64,
    pub coeff0: LaurentExpr,
    pub beta: Monomial,
}

impl<P> Transition<P> {
    pub fn at_mode(&self, r: i32) -> LaurentExpr {
        &self.coeff0 * &LaurentExpr::monomial(self.beta.powi(r))
    }
}

/// `coeff * ∏(1 - num) / ∏(1 - den)`, kept as lists so that vanishing
/// factors can be inspected before anything cancels.
#[derive(Clone, Debug)]
pub struct FactorList {
    pub coeff: LaurentExpr,
    pub num: Vec<Monomial>,
    pub den: Vec<Monomial>,
}

impl FactorList {
    pub fn new(coeff: LaurentExpr) -> Self {
        FactorList {
            coeff,
            num: Vec::new(),
            den: Vec::new(),
        }
    }

    /// Drop factors that appear identically upstairs and downstairs.
    pub fn cancel_pairs(&mut self) {
        let mut count: BTreeMap<Monomial, i64> = BTreeMap::new();
        for m in &self.num {
            *count.entry(*m).or_insert(0) += 1;
        }
        for m in &self.den {
            *count.entry(*m).or_insert(0) -= 1;
        }
        self.num.clear();
        self.den.clear();
        for (m, c) in count {
            if c > 0 {
                self.num.extend(std::iter::repeat_n(m, c as usize));
            } else {
                self.den.extend(std::iter::repeat_n(m, (-c) as usize));
            }
        }
    }

    pub fn to_expr(&self) -> Result<LaurentExpr, ActionError> {
        let mut out = self.coeff.clone();
        let mut list = self.clone();
        list.cancel_pairs();
        for m in &list.num {
            if m.is_one() {
                return Ok(LaurentExpr::zero());
            }
            out = &out * &LaurentExpr::one_minus(*m);
        }
        for m in &list.den {
            out = out.checked_div(&LaurentExpr::one_minus(*m))?;
        }
        Ok(out)
    }
}

/// A finite linear combination of basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedVector<P: Pattern> {
    n: usize,
    entries: BTreeMap<P, LaurentExpr>,
}

impl<P: Pattern> GradedVector<P> {
    pub fn new(n: usize) -> Self {
        GradedVector {
            n,
            entries: BTreeMap::new(),
        }
    }

    pub fn basis(p: P) -> Self {
        let mut out = Self::new(p.rank());
        out.entries.insert(p, LaurentExpr::one());
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_term(&mut self, p: P, c: LaurentExpr) -> Result<(), ActionError> {
        if p.rank() != self.n {
            return Err(ActionError::MixedRank {
                expected: self.n,
                found: p.rank(),
            });
        }
        let sum = match self.entries.remove(&p) {
            Some(old) => &old + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.entries.insert(p, sum);
        }
        Ok(())
    }

    pub fn get(&self, p: &P) -> LaurentExpr {
        self.entries.get(p).cloned().unwrap_or_else(LaurentExpr::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&P, &LaurentExpr)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub(crate) fn check_rank(&self, n: usize) -> Result<(), ActionError> {
        if self.n != n {
            return Err(ActionError::MixedRank {
                expected: n,
                found: self.n,
            });
        }
        Ok(())
    }
}

/// A module over a loop algebra with a fixed-point basis on which every
/// `x^±_{k,r}` acts by single-box moves and every `ψ_k(z)` diagonally.
pub trait LoopModule: Sync {
    type P: Pattern;

    fn rank(&self) -> usize;

    /// Node labels carrying generators.
    fn nodes(&self) -> Vec<i64>;

    /// Cartan matrix entry `a_{kl}`.
    fn cartan(&self, k: i64, l: i64) -> i32;

    /// Every basis vector with at most `max_total` boxes.
    fn basis(&self, max_total: u32) -> Vec<Self::P>;

    fn transitions(&self, p: &Self::P, kind: XKind, node: i64) -> Arc<Vec<Transition<Self::P>>>;

    /// Eigenvalue of `ψ_k(z)` as a rational function of `z`.
    fn psi(&self, p: &Self::P, node: i64) -> Arc<LaurentExpr>;

    /// Coefficient of `z^{-m}` in the expansion of `ψ^±_k(z)`; zero when the
    /// sign and the mode disagree.
    fn psi_mode(&self, p: &Self::P, node: i64, sign: PsiSign, m: i32) -> LaurentExpr;

    /// The shift `c` of the hatted series `x̂(z) = x(zc)`, if the module has
    /// one.
    fn hat_unit(&self) -> Option<Monomial> {
        None
    }
}

/// Concurrent memo table.
pub(crate) struct Memo<K: Hash + Eq, V> {
    map: DashMap<K, Arc<V>>,
}

impl<K: Hash + Eq, V> Default for Memo<K, V> {
    fn default() -> Self {
        Memo { map: DashMap::new() }
    }
}

impl<K: Hash + Eq + Clone, V> Memo<K, V> {
    pub(crate) fn get_or(&self, key: K, make: impl FnOnce() -> V) -> Arc<V> {
        if let Some(v) = self.map.get(&key) {
            return Arc::clone(&v);
        }
        let v = Arc::new(make());
        Arc::clone(self.map.entry(key).or_insert(v).value())
    }
}

/// Series cache for `ψ` modes, growing the stored order on demand.
pub(crate) struct SeriesMemo<K: Hash + Eq> {
    map: DashMap<(K, PsiSign), Arc<LaurentSeries>>,
}

impl<K: Hash + Eq> Default for SeriesMemo<K> {
    fn default() -> Self {
        SeriesMemo { map: DashMap::new() }
    }
}

impl<K: Hash + Eq + Clone> SeriesMemo<K> {
    pub(crate) fn mode(&self, key: K, f: &LaurentExpr, sign: PsiSign, m: i32) -> LaurentExpr {
        if !sign.admits(m) {
            return LaurentExpr::zero();
        }
        let order = m.abs().max(4);
        let k = (key, sign);
        if let Some(s) = self.map.get(&k) {
            if s.order() >= m.abs() {
                return s.coeff(m.abs());
            }
        }
        let s = Arc::new(expand_series(f, sign.direction(), order));
        let out = s.coeff(m.abs());
        self.map.insert(k, s);
        out
    }
}

/// `ψ` mode extraction shared by the finite and toroidal modules.
pub fn psi_mode_of(f: &LaurentExpr, sign: PsiSign, m: i32) -> LaurentExpr {
    if !sign.admits(m) {
        return LaurentExpr::zero();
    }
    expand_series(f, sign.direction(), m.abs()).coeff(m.abs())
}

//! Integrable modules `V(μ)` of level `K`: the extended weight, the pattern
//! subset `D(μ)`, the specialization `u = v^{-K-n}`, `t_j = v^{μ̃_j - j + 1}`
//! and the closure checks on the renormalized matrix entries.

use std::collections::BTreeSet;
use std::fmt;

use laumon_algebra::{AlgebraError, LaurentExpr, Monomial, Var};
use laumon_patterns::{enumerate_affine, residue, AffinePattern, Step};
use serde::{Deserialize, Serialize};

use crate::error::ActionError;
use crate::module::{FactorList, XKind};
use crate::toroidal::{gauge, resolve_cutoff, tt, CoeffOptions};

/// A dominant weight of level `K`, given by `(μ_{1-n}, …, μ_0)` with
/// `μ_0 + K ≥ μ_{1-n} ≥ … ≥ μ_0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelWeight {
    n: usize,
    level: i64,
    mu: Vec<i64>,
}

impl LevelWeight {
    pub fn new(n: usize, level: i64, mu: Vec<i64>) -> Result<Self, ActionError> {
        if level <= 0 {
            return Err(ActionError::BadLevel);
        }
        if mu.len() != n {
            return Err(ActionError::NotDominant(format!(
                "expected {n} entries, got {}",
                mu.len()
            )));
        }
        let ordered = mu.windows(2).all(|w| w[0] >= w[1]);
        if !ordered || mu[n - 1] + level < mu[0] {
            return Err(ActionError::NotDominant(format!("{mu:?} at level {level}")));
        }
        Ok(LevelWeight { n, level, mu })
    }

    /// `μ = 0`.
    pub fn zero(n: usize, level: i64) -> Result<Self, ActionError> {
        Self::new(n, level, vec![0; n])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn level(&self) -> i64 {
        self.level
    }

    /// `(μ_{1-n}, …, μ_0)`.
    pub fn mu(&self) -> &[i64] {
        &self.mu
    }

    pub fn extend(&self) -> ExtendedWeight {
        ExtendedWeight { w: self.clone() }
    }
}

/// `μ̃_i = μ_{(i mod n)} + ⌊-i/n⌋ K` with the residue taken in
/// `{1-n, …, 0}`; nonincreasing with `μ̃_{i+n} = μ̃_i - K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendedWeight {
    w: LevelWeight,
}

impl ExtendedWeight {
    pub fn at(&self, i: i64) -> i64 {
        let n = self.w.n as i64;
        let rep = residue(i, self.w.n) as i64 - n;
        self.w.mu[(rep + n - 1) as usize] + (-i).div_euclid(n) * self.w.level
    }

    pub fn weight(&self) -> &LevelWeight {
        &self.w
    }
}

pub fn extend_weight(w: &LevelWeight) -> ExtendedWeight {
    w.extend()
}

fn ryb_holds(p: &AffinePattern, mt: &ExtendedWeight, i: i64, j: i64, l: i64) -> bool {
    p.d(i, j) as i64 - mt.at(j) <= p.d(i + l, j + l) as i64 - mt.at(j + l)
}

/// Whether `p ∈ D(μ)`: `d_{ij} - μ̃_j ≤ d_{i+l,j+l} - μ̃_{j+l}` for all
/// `j ≤ i` and `l ≥ 0`. Only cells with `d_{ij} > 0`, one period of
/// columns and `0 < l < n` need checking; the rest follow from `μ̃`
/// being nonincreasing and from `μ̃_{j+n} = μ̃_j - K`.
pub fn in_d_mu(p: &AffinePattern, w: &LevelWeight) -> bool {
    let mt = w.extend();
    let n = p.n() as i64;
    (1..=n).all(|j| {
        (j..j + p.depth())
            .filter(|&i| p.d(i, j) > 0)
            .all(|i| (1..n).all(|l| ryb_holds(p, &mt, i, j, l)))
    })
}

/// The defining inequalities checked directly for columns in
/// `[1-n, 2n]`, every row up to the support and every `l ≤ bound`.
pub fn in_d_mu_brute(p: &AffinePattern, w: &LevelWeight, bound: i64) -> bool {
    let mt = w.extend();
    let n = p.n() as i64;
    (1 - n..=2 * n).all(|j| (j..=j + p.depth() + n).all(|i| (0..=bound).all(|l| ryb_holds(p, &mt, i, j, l))))
}

/// A rational function of `v` (and possibly `z`) obtained by specialization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecializedExpr(LaurentExpr);

impl SpecializedExpr {
    pub fn as_expr(&self) -> &LaurentExpr {
        &self.0
    }

    pub fn into_inner(self) -> LaurentExpr {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl fmt::Display for SpecializedExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// The substitution `u = v^{-K-n}`, `t_j = v^{μ̃_j - j + 1}`.
#[derive(Clone, Debug)]
pub struct Specializer {
    mt: ExtendedWeight,
    u_exp: i64,
}

impl Specializer {
    pub fn new(w: &LevelWeight) -> Self {
        Specializer {
            mt: w.extend(),
            u_exp: -w.level - w.n as i64,
        }
    }

    /// The same `t` substitution with `u = v^{e}` instead.
    pub fn with_u_exponent(w: &LevelWeight, e: i64) -> Self {
        Specializer {
            mt: w.extend(),
            u_exp: e,
        }
    }

    pub fn weight(&self) -> &LevelWeight {
        self.mt.weight()
    }

    fn image(&self, x: Var) -> Monomial {
        match x {
            Var::U => Monomial::pow(Var::V, self.u_exp as i32),
            Var::T(j) => {
                let j = j as i64;
                Monomial::pow(Var::V, (self.mt.at(j) - j + 1) as i32)
            }
            other => Monomial::var(other),
        }
    }

    pub fn monomial(&self, m: Monomial) -> Monomial {
        m.substitute(&|x| self.image(x))
    }

    pub fn specialize(&self, x: &LaurentExpr) -> Result<SpecializedExpr, ActionError> {
        x.substitute(&|v| self.image(v))
            .map(SpecializedExpr)
            .map_err(|e| match e {
                AlgebraError::VanishingFactor(f) => ActionError::VanishingDenominator(f),
                other => other.into(),
            })
    }

    /// Specialize a factor list factor by factor: a numerator factor that
    /// becomes `1 - 1` gives zero, a denominator one is an error.
    pub fn factors(&self, list: &FactorList) -> Result<SpecializedExpr, ActionError> {
        let list = oriented(list);
        let mut out = self.specialize(&list.coeff)?.into_inner();
        for &m in &list.num {
            let s = self.monomial(m);
            if s.is_one() {
                return Ok(SpecializedExpr(LaurentExpr::zero()));
            }
            out = out * LaurentExpr::one_minus(s);
        }
        for &m in &list.den {
            let s = self.monomial(m);
            if s.is_one() {
                return Err(ActionError::VanishingDenominator(m.to_string()));
            }
            out = out.checked_div(&LaurentExpr::one_minus(s))?;
        }
        Ok(SpecializedExpr(out))
    }
}

/// Rewrite every factor as `1 - m` with `m` oriented, then cancel equal
/// pairs; `1 - m = -m (1 - m^{-1})`.
fn oriented(list: &FactorList) -> FactorList {
    let mut out = FactorList::new(list.coeff.clone());
    let mut unit = Monomial::ONE;
    let mut negate = false;
    for &m in &list.num {
        if m.is_oriented() {
            out.num.push(m);
        } else {
            unit = unit * m;
            negate = !negate;
            out.num.push(m.inv());
        }
    }
    for &m in &list.den {
        if m.is_oriented() {
            out.den.push(m);
        } else {
            unit = unit / m;
            negate = !negate;
            out.den.push(m.inv());
        }
    }
    out.coeff = &out.coeff * &LaurentExpr::monomial(unit);
    if negate {
        out.coeff = -out.coeff;
    }
    out.cancel_pairs();
    out
}

fn v(e: i64) -> Monomial {
    Monomial::pow(Var::V, e as i32)
}

/// Factors of the entry in the renormalized basis for the move `(i, j)`
/// from `src`, written with the target's weights, its spectral parameter
/// and the target. The `e` entries carry the `v u^{-2}` normalization.
pub fn renorm_factors(
    kind: XKind,
    src: &AffinePattern,
    i: i64,
    j: i64,
) -> Result<(FactorList, Monomial, AffinePattern), ActionError> {
    let n = src.n();
    if n < 3 {
        return Err(ActionError::RankTooSmall(n));
    }
    let step = match kind {
        XKind::E => Step::Remove,
        XKind::F => Step::Add,
    };
    let tgt = src.moved(i, j, step).ok_or(ActionError::InvalidMove { i, j })?;
    let c = resolve_cutoff(&tgt, i, Some(j), None)?;
    let p = |a: i64, b: i64| tgt.p_weight(a, b).expect("column at most the row");
    let deg = |k: i64| tgt.degree(k) as i64;
    let big = p(i, j);
    let g = gauge(n, i, CoeffOptions::default().gauge);
    let mut list = FactorList::new(LaurentExpr::one());
    list.den.push(v(2));
    match kind {
        XKind::E => {
            list.den.extend((c..=i).filter(|&k| k != j).map(|k| big / p(i, k)));
            list.num.extend((c..i).map(|k| big / p(i - 1, k)));
            let pre = tt(n, i + 1).inv() * v(deg(i + 1) - deg(i) - i) * v(1) * Monomial::pow(Var::U, -2);
            list.coeff = LaurentExpr::monomial(pre * g);
            Ok((list, big * v(i), tgt))
        }
        XKind::F => {
            list.den.extend((c..=i).filter(|&k| k != j).map(|k| p(i, k) / big));
            list.num.extend((c..=i + 1).map(|k| p(i + 1, k) / big));
            let pre = tt(n, i).inv() * v(deg(i) - deg(i - 1) - 2 + i) * big * v(2);
            list.coeff = -LaurentExpr::monomial(pre * g.inv());
            Ok((list, big * v(i + 2), tgt))
        }
    }
}

/// Entry of `x_{i,r}` in the renormalized basis, before specialization.
pub fn renorm_coeff_generic(
    kind: XKind,
    src: &AffinePattern,
    i: i64,
    j: i64,
    r: i32,
) -> Result<LaurentExpr, ActionError> {
    let (list, beta, _) = renorm_factors(kind, src, i, j)?;
    Ok(list.to_expr()? * LaurentExpr::monomial(beta.powi(r)))
}

/// Entry of `x_{i,r}` in the renormalized basis, specialized at `w`.
pub fn renorm_coeff(
    kind: XKind,
    src: &AffinePattern,
    i: i64,
    j: i64,
    r: i32,
    w: &LevelWeight,
) -> Result<SpecializedExpr, ActionError> {
    let sp = Specializer::new(w);
    let (list, beta, _) = renorm_factors(kind, src, i, j)?;
    let base = sp.factors(&list)?.into_inner();
    Ok(SpecializedExpr(base * LaurentExpr::monomial(sp.monomial(beta).powi(r))))
}

/// One matrix entry of a `V(μ)` block.
#[derive(Clone, Debug, Serialize)]
pub struct BlockEntry {
    pub kind: XKind,
    pub node: i64,
    pub mode: i32,
    pub source: AffinePattern,
    pub target: AffinePattern,
    pub value: String,
}

/// Outcome of the two closure checks over every move out of a block.
#[derive(Clone, Debug, Default, Serialize)]
pub struct ClosureReport {
    pub transitions: usize,
    pub internal: usize,
    pub crossing: usize,
    /// Moves whose specialized denominator vanishes.
    pub denominator_failures: Vec<String>,
    /// Moves leaving `D(μ)` whose entry does not specialize to zero.
    pub crossing_failures: Vec<String>,
}

impl ClosureReport {
    pub fn holds(&self) -> bool {
        self.denominator_failures.is_empty() && self.crossing_failures.is_empty()
    }

    fn absorb(&mut self, other: ClosureReport) {
        self.transitions += other.transitions;
        self.internal += other.internal;
        self.crossing += other.crossing;
        self.denominator_failures.extend(other.denominator_failures);
        self.crossing_failures.extend(other.crossing_failures);
    }
}

/// The `D(μ)` patterns of one degree vector with their specialized
/// matrix entries.
#[derive(Clone, Debug, Serialize)]
pub struct VmuBlock {
    pub degrees: Vec<u32>,
    pub basis: Vec<AffinePattern>,
    pub entries: Vec<BlockEntry>,
    pub report: ClosureReport,
}

pub fn build_vmu_block(w: &LevelWeight, deg: &[u32], window: i32) -> Result<VmuBlock, ActionError> {
    build_vmu_block_with(&Specializer::new(w), deg, window)
}

/// As [`build_vmu_block`] with an arbitrary substitution, for negative
/// controls.
pub fn build_vmu_block_with(sp: &Specializer, deg: &[u32], window: i32) -> Result<VmuBlock, ActionError> {
    let w = sp.weight();
    let n = w.n();
    if n < 3 {
        return Err(ActionError::RankTooSmall(n));
    }
    let basis: Vec<AffinePattern> = enumerate_affine(n, deg)?
        .into_iter()
        .filter(|p| in_d_mu(p, w))
        .collect();
    let mut entries = Vec::new();
    let mut report = ClosureReport::default();
    for p in &basis {
        for i in 1..=n as i64 {
            for kind in [XKind::E, XKind::F] {
                let step = match kind {
                    XKind::E => Step::Remove,
                    XKind::F => Step::Add,
                };
                for (j, _) in p.neighbors(i, step) {
                    let (list, beta, tgt) = renorm_factors(kind, p, i, j)?;
                    let list = oriented(&list);
                    let label = format!("{kind}_{i} {p} -> {tgt} (column {j})");
                    report.transitions += 1;
                    if list.den.iter().any(|&m| sp.monomial(m).is_one()) {
                        report.denominator_failures.push(label.clone());
                    }
                    let num_vanishes = list.num.iter().any(|&m| sp.monomial(m).is_one());
                    if !in_d_mu(&tgt, w) {
                        report.crossing += 1;
                        if !num_vanishes {
                            report.crossing_failures.push(label);
                        }
                        continue;
                    }
                    report.internal += 1;
                    let Ok(base) = sp.factors(&list) else { continue };
                    let beta = LaurentExpr::monomial(sp.monomial(beta));
                    for r in -window..=window {
                        entries.push(BlockEntry {
                            kind,
                            node: i,
                            mode: r,
                            source: p.clone(),
                            target: tgt.clone(),
                            value: (base.as_expr() * &beta.pow(r)).to_string(),
                        });
                    }
                }
            }
        }
    }
    Ok(VmuBlock {
        degrees: deg.to_vec(),
        basis,
        entries,
        report,
    })
}

/// Closure over every degree vector of total at most `max_total`.
pub fn closure_up_to(sp: &Specializer, max_total: u32) -> Result<(usize, ClosureReport), ActionError> {
    let n = sp.weight().n();
    let mut basis = 0;
    let mut report = ClosureReport::default();
    let mut seen = BTreeSet::new();
    for total in 0..=max_total {
        for deg in laumon_patterns::degree_vectors(n, total) {
            if seen.insert(deg.clone()) {
                let block = build_vmu_block_with(sp, &deg, 0)?;
                basis += block.basis.len();
                report.absorb(block.report);
            }
        }
    }
    Ok((basis, report))
}

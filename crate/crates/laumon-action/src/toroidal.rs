//! The quantum toroidal action on the fixed-point basis of the affine module.
//!
//! Row and column indices run over all of `ℤ`. The formally infinite
//! products over columns `k ≤ i` are telescoped: below a cutoff every
//! numerator factor meets an identical denominator factor, so only finitely
//! many factors survive.

use std::sync::Arc;

use laumon_algebra::{LaurentExpr, Monomial, Var, MAX_T};
use laumon_patterns::{affine_patterns_up_to, ceil_div, residue, AffinePattern, Step};
use serde::{Deserialize, Serialize};

use crate::error::ActionError;
use crate::module::{FactorList, GradedVector, LoopModule, Memo, PsiSign, SeriesMemo, Transition, XKind};

pub type AffineGradedVector = GradedVector<AffinePattern>;

fn v(e: i64) -> Monomial {
    Monomial::pow(Var::V, e as i32)
}

fn u(e: i64) -> Monomial {
    Monomial::pow(Var::U, e as i32)
}

fn zinv() -> Monomial {
    Monomial::pow(Var::Z, -1)
}

fn mono(m: Monomial) -> LaurentExpr {
    LaurentExpr::monomial(m)
}

fn deg(p: &AffinePattern, k: i64) -> i64 {
    p.degree(k) as i64
}

fn pw(p: &AffinePattern, i: i64, j: i64) -> Monomial {
    p.p_weight(i, j).expect("column at most the row")
}

fn t_res(n: usize, k: i64) -> Monomial {
    Monomial::var(Var::t(residue(k, n)))
}

/// `t_k` extended to all `k ∈ ℤ`: `t_{(k mod n)} u^{⌈k/n⌉-1}`.
pub fn tt(n: usize, k: i64) -> Monomial {
    t_res(n, k) * u(ceil_div(k, n) - 1)
}

/// `v^n u^2`, the shift of the hatted node-`n` series.
pub fn hat_unit(n: usize) -> Monomial {
    v(n as i64) * u(2)
}

fn check_rank(n: usize) -> Result<(), ActionError> {
    if n < 3 {
        return Err(ActionError::RankTooSmall(n));
    }
    if n > MAX_T {
        return Err(laumon_patterns::PatternError::BadRank(n).into());
    }
    Ok(())
}

/// Knobs for the affine matrix entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoeffOptions {
    /// Lowest column kept in the telescoped products; `None` picks the
    /// largest safe value minus one.
    pub cutoff: Option<i64>,
    /// Rescale entries at node `k` by `(uv^n)^{±(⌈k/n⌉-1)}` so that the
    /// series at node `k - n` is the series at node `k` with `z` scaled by
    /// `v^n u^2`. Nodes `1..n` are unaffected.
    pub gauge: bool,
}

impl Default for CoeffOptions {
    fn default() -> Self {
        CoeffOptions {
            cutoff: None,
            gauge: true,
        }
    }
}

/// Largest cutoff at which the pairing below it is exact.
fn cutoff_bound(p: &AffinePattern, i: i64, j: Option<i64>) -> i64 {
    let row = i - p.depth();
    j.map_or(row, |j| j.min(row))
}

pub(crate) fn resolve_cutoff(p: &AffinePattern, i: i64, j: Option<i64>, req: Option<i64>) -> Result<i64, ActionError> {
    let bound = cutoff_bound(p, i, j);
    match req {
        Some(c) if c > bound => Err(ActionError::Cutoff { cutoff: c, bound }),
        Some(c) => Ok(c),
        None => Ok(bound - 1),
    }
}

pub(crate) fn gauge(n: usize, k: i64, on: bool) -> Monomial {
    if !on {
        return Monomial::ONE;
    }
    (u(1) * v(n as i64)).powi((ceil_div(k, n) - 1) as i32)
}

fn moved(src: &AffinePattern, i: i64, j: i64, step: Step) -> Result<AffinePattern, ActionError> {
    check_rank(src.n())?;
    src.moved(i, j, step).ok_or(ActionError::InvalidMove { i, j })
}

/// The column products of an `f_i` entry: `1/(1-v^2)`, the row-`i`
/// denominators and the row-`(i-1)` numerators. Also returns `p_{ij}`.
fn f_core(src: &AffinePattern, i: i64, j: i64, c: i64) -> (FactorList, Monomial) {
    let pij = pw(src, i, j);
    let mut list = FactorList::new(LaurentExpr::one());
    list.den.push(v(2));
    list.den
        .extend((c..=i).filter(|&k| k != j).map(|k| pij / pw(src, i, k)));
    list.num.extend((c..i).map(|k| pij / pw(src, i - 1, k)));
    (list, pij)
}

fn e_core(src: &AffinePattern, i: i64, j: i64, c: i64) -> (FactorList, Monomial) {
    let pij = pw(src, i, j);
    let mut list = FactorList::new(LaurentExpr::one());
    list.den.push(v(2));
    list.den
        .extend((c..=i).filter(|&k| k != j).map(|k| pw(src, i, k) / pij));
    list.num.extend((c..=i + 1).map(|k| pw(src, i + 1, k) / pij));
    (list, pij)
}

/// Factors of the `f_{i,•}` entry adding a box at `(i, j)`, the spectral
/// parameter `p_{ij} v^i` and the target.
pub fn f_factors_affine(
    src: &AffinePattern,
    i: i64,
    j: i64,
    opts: CoeffOptions,
) -> Result<(FactorList, Monomial, AffinePattern), ActionError> {
    let target = moved(src, i, j, Step::Add)?;
    let n = src.n();
    let c = resolve_cutoff(src, i, Some(j), opts.cutoff)?;
    let (mut list, pij) = f_core(src, i, j, c);
    let pre = tt(n, i).inv() * v(deg(src, i) - deg(src, i - 1) - 1 + i) * pij;
    list.coeff = -mono(pre * gauge(n, i, opts.gauge).inv());
    Ok((list, pij * v(i), target))
}

/// Factors of the `e_{i,•}` entry removing a box at `(i, j)`, the spectral
/// parameter `p_{ij} v^{i+2}` and the target.
pub fn e_factors_affine(
    src: &AffinePattern,
    i: i64,
    j: i64,
    opts: CoeffOptions,
) -> Result<(FactorList, Monomial, AffinePattern), ActionError> {
    let target = moved(src, i, j, Step::Remove)?;
    let n = src.n();
    let c = resolve_cutoff(src, i, Some(j), opts.cutoff)?;
    let (mut list, pij) = e_core(src, i, j, c);
    let pre = tt(n, i + 1).inv() * v(deg(src, i + 1) - deg(src, i) + 1 - i) * v(1) * u(-2);
    list.coeff = mono(pre * gauge(n, i, opts.gauge));
    Ok((list, pij * v(i + 2), target))
}

/// `f_{i,r}` entry from `src` to `src + δ_{ij}` (whole periodic class).
pub fn f_mode_coeff_affine(src: &AffinePattern, i: i64, j: i64, r: i32) -> Result<LaurentExpr, ActionError> {
    f_mode_coeff_affine_with(src, i, j, r, CoeffOptions::default())
}

pub fn f_mode_coeff_affine_with(
    src: &AffinePattern,
    i: i64,
    j: i64,
    r: i32,
    opts: CoeffOptions,
) -> Result<LaurentExpr, ActionError> {
    let (list, beta, _) = f_factors_affine(src, i, j, opts)?;
    Ok(list.to_expr()? * mono(beta.powi(r)))
}

/// `e_{i,r}` entry from `src` to `src - δ_{ij}`.
pub fn e_mode_coeff_affine(src: &AffinePattern, i: i64, j: i64, r: i32) -> Result<LaurentExpr, ActionError> {
    e_mode_coeff_affine_with(src, i, j, r, CoeffOptions::default())
}

pub fn e_mode_coeff_affine_with(
    src: &AffinePattern,
    i: i64,
    j: i64,
    r: i32,
    opts: CoeffOptions,
) -> Result<LaurentExpr, ActionError> {
    let (list, beta, _) = e_factors_affine(src, i, j, opts)?;
    Ok(list.to_expr()? * mono(beta.powi(r)))
}

/// The entry of `x_{i,r}` from `src` to `tgt`, zero unless they differ by
/// one box in row `i` in the right direction.
pub fn matrix_coeff_affine(
    kind: XKind,
    i: i64,
    r: i32,
    src: &AffinePattern,
    tgt: &AffinePattern,
) -> Result<LaurentExpr, ActionError> {
    check_rank(src.n())?;
    let step = match kind {
        XKind::E => Step::Remove,
        XKind::F => Step::Add,
    };
    for (j, q) in src.neighbors(i, step) {
        if &q == tgt {
            return match kind {
                XKind::E => e_mode_coeff_affine(src, i, j, r),
                XKind::F => f_mode_coeff_affine(src, i, j, r),
            };
        }
    }
    Ok(LaurentExpr::zero())
}

fn psi_prefactor(p: &AffinePattern, i: i64) -> Monomial {
    let n = p.n();
    tt(n, i + 1).inv() * tt(n, i) * v(deg(p, i + 1) - 2 * deg(p, i) + deg(p, i - 1) - 1)
}

/// Eigenvalue of `ψ^±_i(z)` on `p` as a rational function of `z`.
pub fn psi_eigenvalue_affine(p: &AffinePattern, i: i64) -> Result<LaurentExpr, ActionError> {
    psi_eigenvalue_affine_with(p, i, None)
}

/// As [`psi_eigenvalue_affine`] with an explicit telescoping cutoff.
pub fn psi_eigenvalue_affine_with(p: &AffinePattern, i: i64, cutoff: Option<i64>) -> Result<LaurentExpr, ActionError> {
    check_rank(p.n())?;
    let c = resolve_cutoff(p, i, None, cutoff)?;
    let w = zinv();
    let mut list = FactorList::new(mono(psi_prefactor(p, i)));
    for j in c..=i {
        list.den.push(w * v(i + 2) * pw(p, i, j));
        list.den.push(w * v(i) * pw(p, i, j));
    }
    list.num.extend((c..=i + 1).map(|j| w * v(i + 2) * pw(p, i + 1, j)));
    list.num.extend((c..i).map(|j| w * v(i) * pw(p, i - 1, j)));
    list.to_expr()
}

/// `b_{mk}(z v^{-a}) = ∏_{c<j≤k}(1 - z^{-1}v^a p_{kj}) / ∏_{c<j≤m}(1 - z^{-1}v^a p_{mj})`.
fn b_quotient(p: &AffinePattern, m: i64, k: i64, c: i64, a: i64) -> Result<LaurentExpr, ActionError> {
    let w = zinv() * v(a);
    let side = |row: i64| {
        let mut list = FactorList::new(LaurentExpr::one());
        list.num.extend((c + 1..=row).map(|j| w * pw(p, row, j)));
        list.to_expr()
    };
    Ok(side(k)?.checked_div(&side(m)?)?)
}

/// The `ψ_i` eigenvalue rebuilt from the quotient series `b_{mk}` for a row
/// `m < i`; it does not depend on `m`.
pub fn faktory(p: &AffinePattern, i: i64, m: i64) -> Result<LaurentExpr, ActionError> {
    check_rank(p.n())?;
    if m >= i {
        return Err(ActionError::NodeOutOfRange { node: m, n: p.n() });
    }
    let c = m - p.depth() - 1;
    let num = b_quotient(p, m, i - 1, c, i)? * b_quotient(p, m, i + 1, c, i + 2)?;
    let den = b_quotient(p, m, i, c, i + 2)? * b_quotient(p, m, i, c, i)?;
    Ok(mono(psi_prefactor(p, i)) * num.checked_div(&den)?)
}

fn check_hat_node(n: usize, node: i64) -> Result<(), ActionError> {
    if node != n as i64 {
        return Err(ActionError::NodeOutOfRange { node, n });
    }
    Ok(())
}

/// Mode `r` of the hatted node-`n` series: the plain mode times
/// `(v^n u^2)^{-r}`.
pub fn hat_shift_mode(n: usize, node: i64, value: &LaurentExpr, r: i32) -> Result<LaurentExpr, ActionError> {
    check_hat_node(n, node)?;
    Ok(value * &mono(hat_unit(n).powi(-r)))
}

/// `ψ̂_n(z) = ψ_n(z v^n u^2)`.
pub fn hat_shift_psi(n: usize, node: i64, f: &LaurentExpr) -> Result<LaurentExpr, ActionError> {
    check_hat_node(n, node)?;
    Ok(f.scale_z(hat_unit(n)))
}

/// Diagonal entry of the Chevalley `k_i` and the nonzero entries of `e_i`,
/// `f_i`, for `i ∈ ℤ/n`.
#[derive(Clone, Debug)]
pub struct ChevalleyOps {
    pub k: LaurentExpr,
    pub e: Vec<(AffinePattern, LaurentExpr)>,
    pub f: Vec<(AffinePattern, LaurentExpr)>,
}

/// Chevalley generators at `i ∈ {0, …, n-1}`. Node `0` moves boxes in row
/// `n`; the `e` entries carry the same `v u^{-2}` normalization as
/// [`e_mode_coeff_affine`].
pub fn chevalley_ops(p: &AffinePattern, i: usize) -> Result<ChevalleyOps, ActionError> {
    let n = p.n();
    check_rank(n)?;
    if i >= n {
        return Err(ActionError::NodeOutOfRange { node: i as i64, n });
    }
    let ii = i as i64;
    let delta = i64::from(i == 0);
    let row = if i == 0 { n as i64 } else { ii };
    let k =
        t_res(n, ii + 1).inv() * t_res(n, ii) * u(-delta) * v(-2 * deg(p, ii) + deg(p, ii - 1) + deg(p, ii + 1) - 1);

    let mut e = Vec::new();
    for (j, tgt) in p.neighbors(row, Step::Remove) {
        let c = resolve_cutoff(p, row, Some(j), None)?;
        let (mut list, _) = e_core(p, row, j, c);
        let pre = t_res(n, ii + 1).inv() * v(deg(p, ii + 1) - deg(p, ii) - ii + 1) * v(1) * u(-2);
        list.coeff = mono(pre);
        e.push((tgt, list.to_expr()?));
    }
    let mut f = Vec::new();
    for (j, tgt) in p.neighbors(row, Step::Add) {
        let c = resolve_cutoff(p, row, Some(j), None)?;
        let (mut list, pij) = f_core(p, row, j, c);
        let pre = t_res(n, ii).inv() * u(delta) * v(deg(p, ii) - deg(p, ii - 1) + ii - 1) * pij;
        list.coeff = -mono(pre);
        f.push((tgt, list.to_expr()?));
    }
    Ok(ChevalleyOps { k: mono(k), e, f })
}

/// Ratio of each node-0 Chevalley entry to the matching zero mode of the
/// hatted node-`n` series, keyed by kind and target.
pub fn node0_ratios(p: &AffinePattern) -> Result<Vec<(XKind, AffinePattern, LaurentExpr)>, ActionError> {
    let n = p.n();
    let ops = chevalley_ops(p, 0)?;
    let mut out = Vec::new();
    for (kind, entries) in [(XKind::E, &ops.e), (XKind::F, &ops.f)] {
        for (tgt, value) in entries {
            let plain = matrix_coeff_affine(kind, n as i64, 0, p, tgt)?;
            let hat = hat_shift_mode(n, n as i64, &plain, 0)?;
            out.push((kind, tgt.clone(), value.checked_div(&hat)?));
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AffineModeKind {
    E,
    F,
    PsiPlus,
    PsiMinus,
    EHat0,
    FHat0,
    PsiHat0Plus,
    PsiHat0Minus,
    ChevalleyK,
    ChevalleyE,
    ChevalleyF,
}

impl AffineModeKind {
    pub fn is_hat(self) -> bool {
        matches!(
            self,
            AffineModeKind::EHat0 | AffineModeKind::FHat0 | AffineModeKind::PsiHat0Plus | AffineModeKind::PsiHat0Minus
        )
    }

    pub fn is_chevalley(self) -> bool {
        matches!(
            self,
            AffineModeKind::ChevalleyK | AffineModeKind::ChevalleyE | AffineModeKind::ChevalleyF
        )
    }
}

/// One generator of the toroidal action. Hatted kinds live at node `n`;
/// Chevalley kinds take `node ∈ {0, …, n-1}` and ignore `mode`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineModeSpec {
    pub kind: AffineModeKind,
    pub node: i64,
    pub mode: i32,
}

impl AffineModeSpec {
    pub fn new(kind: AffineModeKind, node: i64, mode: i32) -> Self {
        AffineModeSpec { kind, node, mode }
    }
}

type TransitionKey = (AffinePattern, XKind, i64);

/// The affine module with memoized entries.
pub struct AffineAction {
    n: usize,
    opts: CoeffOptions,
    transitions: Memo<TransitionKey, Vec<Transition<AffinePattern>>>,
    psi: Memo<(AffinePattern, i64), LaurentExpr>,
    series: SeriesMemo<(AffinePattern, i64)>,
}

impl AffineAction {
    pub fn new(n: usize) -> Result<Self, ActionError> {
        Self::with_options(n, CoeffOptions::default())
    }

    pub fn with_options(n: usize, opts: CoeffOptions) -> Result<Self, ActionError> {
        check_rank(n)?;
        Ok(AffineAction {
            n,
            opts,
            transitions: Memo::default(),
            psi: Memo::default(),
            series: SeriesMemo::default(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn build_transitions(&self, p: &AffinePattern, kind: XKind, i: i64) -> Vec<Transition<AffinePattern>> {
        let step = match kind {
            XKind::E => Step::Remove,
            XKind::F => Step::Add,
        };
        let opts = CoeffOptions {
            cutoff: None,
            ..self.opts
        };
        p.neighbors(i, step)
            .into_iter()
            .map(|(j, _)| {
                let (list, beta, target) = match kind {
                    XKind::E => e_factors_affine(p, i, j, opts),
                    XKind::F => f_factors_affine(p, i, j, opts),
                }
                .expect("neighbor moves are valid");
                Transition {
                    target,
                    column: j,
                    coeff0: list.to_expr().expect("generic denominators are nonzero"),
                    beta,
                }
            })
            .collect()
    }

    fn check_node(&self, k: i64) -> Result<(), ActionError> {
        if !(1..=self.n as i64).contains(&k) {
            return Err(ActionError::NodeOutOfRange { node: k, n: self.n });
        }
        Ok(())
    }

    pub fn apply(&self, op: AffineModeSpec, x: &AffineGradedVector) -> Result<AffineGradedVector, ActionError> {
        x.check_rank(self.n)?;
        let n = self.n as i64;
        let mut out = GradedVector::new(self.n);
        use AffineModeKind as K;
        match op.kind {
            K::ChevalleyK | K::ChevalleyE | K::ChevalleyF => {
                if !(0..n).contains(&op.node) {
                    return Err(ActionError::NodeOutOfRange {
                        node: op.node,
                        n: self.n,
                    });
                }
                for (p, c) in x.iter() {
                    let ops = chevalley_ops(p, op.node as usize)?;
                    match op.kind {
                        K::ChevalleyK => out.add_term(p.clone(), c * &ops.k)?,
                        K::ChevalleyE => {
                            for (q, val) in ops.e {
                                out.add_term(q, c * &val)?;
                            }
                        }
                        _ => {
                            for (q, val) in ops.f {
                                out.add_term(q, c * &val)?;
                            }
                        }
                    }
                }
            }
            K::PsiPlus | K::PsiMinus | K::PsiHat0Plus | K::PsiHat0Minus => {
                if op.kind.is_hat() {
                    check_hat_node(self.n, op.node)?;
                } else {
                    self.check_node(op.node)?;
                }
                let sign = if matches!(op.kind, K::PsiPlus | K::PsiHat0Plus) {
                    PsiSign::Plus
                } else {
                    PsiSign::Minus
                };
                let scale = if op.kind.is_hat() {
                    mono(hat_unit(self.n).powi(-op.mode))
                } else {
                    LaurentExpr::one()
                };
                for (p, c) in x.iter() {
                    let value = self.psi_mode(p, op.node, sign, op.mode) * scale.clone();
                    out.add_term(p.clone(), c * &value)?;
                }
            }
            K::E | K::F | K::EHat0 | K::FHat0 => {
                if op.kind.is_hat() {
                    check_hat_node(self.n, op.node)?;
                } else {
                    self.check_node(op.node)?;
                }
                let kind = if matches!(op.kind, K::E | K::EHat0) {
                    XKind::E
                } else {
                    XKind::F
                };
                for (p, c) in x.iter() {
                    for tr in self.transitions(p, kind, op.node).iter() {
                        let mut value = tr.at_mode(op.mode);
                        if op.kind.is_hat() {
                            value = hat_shift_mode(self.n, n, &value, op.mode)?;
                        }
                        out.add_term(tr.target.clone(), c * &value)?;
                    }
                }
            }
        }
        Ok(out)
    }
}

impl LoopModule for AffineAction {
    type P = AffinePattern;

    fn rank(&self) -> usize {
        self.n
    }

    fn nodes(&self) -> Vec<i64> {
        (1..=self.n as i64).collect()
    }

    fn cartan(&self, k: i64, l: i64) -> i32 {
        let n = self.n as i64;
        match (k - l).rem_euclid(n) {
            0 => 2,
            d if d == 1 || d == n - 1 => -1,
            _ => 0,
        }
    }

    fn basis(&self, max_total: u32) -> Vec<AffinePattern> {
        affine_patterns_up_to(self.n, max_total).expect("rank checked at construction")
    }

    fn transitions(&self, p: &AffinePattern, kind: XKind, node: i64) -> Arc<Vec<Transition<AffinePattern>>> {
        self.transitions
            .get_or((p.clone(), kind, node), || self.build_transitions(p, kind, node))
    }

    fn psi(&self, p: &AffinePattern, node: i64) -> Arc<LaurentExpr> {
        self.psi.get_or((p.clone(), node), || {
            psi_eigenvalue_affine(p, node).expect("rank checked at construction")
        })
    }

    fn psi_mode(&self, p: &AffinePattern, node: i64, sign: PsiSign, m: i32) -> LaurentExpr {
        let f = self.psi(p, node);
        self.series.mode((p.clone(), node), &f, sign, m)
    }

    fn hat_unit(&self) -> Option<Monomial> {
        Some(hat_unit(self.n))
    }
}

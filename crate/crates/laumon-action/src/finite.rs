//! The loop algebra action on the fixed-point basis of the finite module.

use std::sync::Arc;

use laumon_algebra::{LaurentExpr, Monomial, Var};
use laumon_patterns::{finite_patterns_up_to, FinitePattern, Step};
use serde::{Deserialize, Serialize};

use crate::error::ActionError;
use crate::module::{psi_mode_of, FactorList, GradedVector, LoopModule, Memo, PsiSign, SeriesMemo, Transition, XKind};

fn t(i: usize) -> Monomial {
    Monomial::var(Var::t(i))
}

fn v(e: i64) -> Monomial {
    Monomial::pow(Var::V, e as i32)
}

fn zinv() -> Monomial {
    Monomial::pow(Var::Z, -1)
}

fn mono(m: Monomial) -> LaurentExpr {
    LaurentExpr::monomial(m)
}

fn deg(p: &FinitePattern, i: usize) -> i64 {
    p.degree(i) as i64
}

/// `s_{ij}`, defined for `1 ≤ j ≤ i ≤ n`.
fn s(p: &FinitePattern, i: usize, j: usize) -> Monomial {
    p.s_weight(i, j).expect("row and column in range")
}

fn check_node(p: &FinitePattern, i: usize) -> Result<(), ActionError> {
    if i == 0 || i >= p.n() {
        return Err(ActionError::NodeOutOfRange {
            node: i as i64,
            n: p.n(),
        });
    }
    Ok(())
}

/// Factors of the `f_{i,•}` entry adding a box at `(i, j)`, the target and
/// the spectral parameter `s_{ij} v^i`.
pub fn f_factors(
    src: &FinitePattern,
    i: usize,
    j: usize,
) -> Result<(FactorList, Monomial, FinitePattern), ActionError> {
    check_node(src, i)?;
    let target = src.moved(i, j, Step::Add).ok_or(ActionError::InvalidMove {
        i: i as i64,
        j: j as i64,
    })?;
    let sij = s(src, i, j);
    let pre = t(i).inv() * v(deg(src, i) - deg(src, i - 1) - 1 + i as i64) * sij;
    let mut list = FactorList::new(-mono(pre));
    list.den.push(v(2));
    list.den.extend((1..=i).filter(|&k| k != j).map(|k| sij / s(src, i, k)));
    list.num.extend((1..i).map(|k| sij / s(src, i - 1, k)));
    Ok((list, sij * v(i as i64), target))
}

/// Factors of the `e_{i,•}` entry removing a box at `(i, j)`, the target and
/// the spectral parameter `s_{ij} v^{i+2}`.
pub fn e_factors(
    src: &FinitePattern,
    i: usize,
    j: usize,
) -> Result<(FactorList, Monomial, FinitePattern), ActionError> {
    check_node(src, i)?;
    let target = src.moved(i, j, Step::Remove).ok_or(ActionError::InvalidMove {
        i: i as i64,
        j: j as i64,
    })?;
    let sij = s(src, i, j);
    let pre = t(i + 1).inv() * v(deg(src, i + 1) - deg(src, i) + 2 - i as i64);
    let mut list = FactorList::new(mono(pre));
    list.den.push(v(2));
    list.den.extend((1..=i).filter(|&k| k != j).map(|k| s(src, i, k) / sij));
    list.num.extend((1..=i + 1).map(|k| s(src, i + 1, k) / sij));
    Ok((list, sij * v(i as i64 + 2), target))
}

/// `f_{i,r}` entry from `src` to `src + δ_{ij}`.
pub fn f_mode_coeff(src: &FinitePattern, i: usize, j: usize, r: i32) -> Result<LaurentExpr, ActionError> {
    let (list, beta, _) = f_factors(src, i, j)?;
    Ok(list.to_expr()? * mono(beta.powi(r)))
}

/// `e_{i,r}` entry from `src` to `src - δ_{ij}`.
pub fn e_mode_coeff(src: &FinitePattern, i: usize, j: usize, r: i32) -> Result<LaurentExpr, ActionError> {
    let (list, beta, _) = e_factors(src, i, j)?;
    Ok(list.to_expr()? * mono(beta.powi(r)))
}

/// The entry of `x_{i,r}` from `src` to `tgt`; zero unless they differ by a
/// single box in row `i` in the right direction.
pub fn matrix_coeff(
    kind: XKind,
    i: usize,
    r: i32,
    src: &FinitePattern,
    tgt: &FinitePattern,
) -> Result<LaurentExpr, ActionError> {
    check_node(src, i)?;
    let step = match kind {
        XKind::E => Step::Remove,
        XKind::F => Step::Add,
    };
    for (j, q) in src.neighbors(i, step) {
        if &q == tgt {
            return match kind {
                XKind::E => e_mode_coeff(src, i, j, r),
                XKind::F => f_mode_coeff(src, i, j, r),
            };
        }
    }
    Ok(LaurentExpr::zero())
}

fn psi_prefactor(p: &FinitePattern, i: usize) -> Monomial {
    t(i + 1).inv() * t(i) * v(deg(p, i + 1) - 2 * deg(p, i) + deg(p, i - 1) - 1)
}

/// Eigenvalue of `ψ^±_i(z)` on the basis vector `p`, as a rational function.
pub fn psi_eigenvalue(p: &FinitePattern, i: usize) -> Result<LaurentExpr, ActionError> {
    check_node(p, i)?;
    let w = zinv();
    let hi = v(i as i64 + 2);
    let lo = v(i as i64);
    let mut list = FactorList::new(mono(psi_prefactor(p, i)));
    for j in 1..=i {
        list.den.push(w * hi * s(p, i, j));
        list.den.push(w * lo * s(p, i, j));
    }
    list.num.extend((1..=i + 1).map(|j| w * hi * s(p, i + 1, j)));
    list.num.extend((1..i).map(|j| w * lo * s(p, i - 1, j)));
    list.to_expr()
}

/// `ψ^±_{i,m}` on `p`: coefficient of `z^{-m}` in the expansion at `∞` (for
/// `+`) or at `0` (for `-`). A mode of the wrong sign gives zero.
pub fn psi_mode(p: &FinitePattern, i: usize, m: i32, sign: PsiSign) -> Result<LaurentExpr, ActionError> {
    Ok(psi_mode_of(&psi_eigenvalue(p, i)?, sign, m))
}

/// `b_m(z) = ∏_{j≤m} (1 - z^{-1} s_{mj})`, with `b_0 = 1`.
pub fn b_series_eigenvalue(p: &FinitePattern, m: usize) -> Result<LaurentExpr, ActionError> {
    if m > p.n() {
        return Err(ActionError::RowOutOfRange(m));
    }
    let mut list = FactorList::new(LaurentExpr::one());
    list.num.extend((1..=m).map(|j| zinv() * s(p, m, j)));
    list.to_expr()
}

/// The `ψ` eigenvalue assembled from the `b`-series:
/// prefactor · `b_{i+1}(zv^{-i-2}) b_{i-1}(zv^{-i}) / (b_i(zv^{-i-2}) b_i(zv^{-i}))`.
pub fn psi_from_b_series(p: &FinitePattern, i: usize) -> Result<LaurentExpr, ActionError> {
    check_node(p, i)?;
    let hi = v(-(i as i64) - 2);
    let lo = v(-(i as i64));
    let b = |m: usize| b_series_eigenvalue(p, m);
    let num = b(i + 1)?.scale_z(hi) * b(i - 1)?.scale_z(lo);
    let den = b(i)?.scale_z(hi) * b(i)?.scale_z(lo);
    Ok(mono(psi_prefactor(p, i)) * num.checked_div(&den)?)
}

/// The four-factor expression in the quotient series `b_{mk} = b_k / b_m`
/// for a cutoff row `m < i`; it does not depend on `m`.
pub fn faktor(p: &FinitePattern, i: usize, m: usize) -> Result<LaurentExpr, ActionError> {
    check_node(p, i)?;
    if m >= i {
        return Err(ActionError::RowOutOfRange(m));
    }
    let bm = b_series_eigenvalue(p, m)?;
    let quotient = |k: usize| -> Result<LaurentExpr, ActionError> { Ok(b_series_eigenvalue(p, k)?.checked_div(&bm)?) };
    let hi = v(-(i as i64) - 2);
    let lo = v(-(i as i64));
    let num = quotient(i - 1)?.scale_z(lo) * quotient(i + 1)?.scale_z(hi);
    let den = quotient(i)?.scale_z(hi) * quotient(i)?.scale_z(lo);
    Ok(mono(psi_prefactor(p, i)) * num.checked_div(&den)?)
}

/// `χ_{i,a}`: the diagonal entry of `(v - v^{-1})[e_{i,•}, f_{i,•}]` at total
/// mode `a`, written as a sum over the columns of row `i`.
pub fn chi_coeff(p: &FinitePattern, i: usize, a: i32) -> Result<LaurentExpr, ActionError> {
    check_node(p, i)?;
    let pre = -mono(t(i + 1).inv() * t(i).inv() * v(deg(p, i + 1) - deg(p, i - 1) - 1))
        .checked_div(&(mono(v(2)) - LaurentExpr::one()))?;
    let v2 = v(2);
    let mut terms = Vec::with_capacity(2 * i);
    for j in 1..=i {
        let sij = s(p, i, j);
        let others: Vec<usize> = (1..=i).filter(|&k| k != j).collect();

        let mut first = FactorList::new(mono(sij * (sij * v(i as i64)).powi(a)));
        first.den.extend(others.iter().map(|&k| sij / s(p, i, k)));
        first.den.extend(others.iter().map(|&k| v2 * s(p, i, k) / sij));
        first.num.extend((1..i).map(|k| sij / s(p, i - 1, k)));
        first.num.extend((1..=i + 1).map(|k| v2 * s(p, i + 1, k) / sij));

        let mut second = FactorList::new(-mono(v2 * sij * (sij * v(i as i64 + 2)).powi(a)));
        second.den.extend(others.iter().map(|&k| s(p, i, k) / sij));
        second.den.extend(others.iter().map(|&k| v2 * sij / s(p, i, k)));
        second.num.extend((1..i).map(|k| v2 * sij / s(p, i - 1, k)));
        second.num.extend((1..=i + 1).map(|k| s(p, i + 1, k) / sij));

        terms.push(first.to_expr()?);
        terms.push(second.to_expr()?);
    }
    Ok(pre * LaurentExpr::sum_of(&terms))
}

/// Eigenvalue of the Cartan generator `t_i`, `1 ≤ i ≤ n`:
/// `t_i v^{d_{i-1} - d_i + i - 1}`.
pub fn t_cartan_eigenvalue(p: &FinitePattern, i: usize) -> Result<LaurentExpr, ActionError> {
    if i == 0 || i > p.n() {
        return Err(ActionError::NodeOutOfRange {
            node: i as i64,
            n: p.n(),
        });
    }
    Ok(mono(t(i) * v(deg(p, i - 1) - deg(p, i) + i as i64 - 1)))
}

/// Zero-mode `f_i` entry written directly in `t_j`, `v` and the entries
/// `d_{ij}` of the source.
pub fn zero_mode_f(src: &FinitePattern, i: usize, j: usize) -> Result<LaurentExpr, ActionError> {
    check_node(src, i)?;
    src.moved(i, j, Step::Add).ok_or(ActionError::InvalidMove {
        i: i as i64,
        j: j as i64,
    })?;
    let d = |a: usize, b: usize| src.d(a, b) as i64;
    let tj2 = t(j).powi(2);
    let pre = t(i).inv() * v(deg(src, i) - deg(src, i - 1) - 1 + i as i64) * tj2 * v(-2 * d(i, j));
    let mut list = FactorList::new(-mono(pre));
    list.den.push(v(2));
    for k in (1..=i).filter(|&k| k != j) {
        list.den.push(tj2 * t(k).powi(-2) * v(2 * d(i, k) - 2 * d(i, j)));
    }
    for k in 1..i {
        list.num.push(tj2 * t(k).powi(-2) * v(2 * d(i - 1, k) - 2 * d(i, j)));
    }
    list.to_expr()
}

/// Zero-mode `e_i` entry written directly in `t_j`, `v` and `d_{ij}`; the
/// degrees in the prefactor are those of the target.
pub fn zero_mode_e(src: &FinitePattern, i: usize, j: usize) -> Result<LaurentExpr, ActionError> {
    check_node(src, i)?;
    let tgt = src.moved(i, j, Step::Remove).ok_or(ActionError::InvalidMove {
        i: i as i64,
        j: j as i64,
    })?;
    let d = |a: usize, b: usize| src.d(a, b) as i64;
    let tj2inv = t(j).powi(-2);
    let pre = t(i + 1).inv() * v(deg(&tgt, i + 1) - deg(&tgt, i) + 1 - i as i64);
    let mut list = FactorList::new(mono(pre));
    list.den.push(v(2));
    for k in (1..=i).filter(|&k| k != j) {
        list.den.push(t(k).powi(2) * tj2inv * v(2 * d(i, j) - 2 * d(i, k)));
    }
    for k in 1..=i + 1 {
        list.num.push(t(k).powi(2) * tj2inv * v(2 * d(i, j) - 2 * d(i + 1, k)));
    }
    list.to_expr()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeKind {
    E,
    F,
    PsiPlus,
    PsiMinus,
    TCartan,
}

/// A single generator: `e_{k,r}`, `f_{k,r}`, `ψ^±_{k,r}` or `t_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModeSpec {
    pub kind: ModeKind,
    pub node: usize,
    pub mode: i32,
}

impl ModeSpec {
    pub fn new(kind: ModeKind, node: usize, mode: i32) -> Self {
        ModeSpec { kind, node, mode }
    }
}

/// The finite module with memoized matrix entries.
pub struct FiniteAction {
    n: usize,
    transitions: Memo<(FinitePattern, XKind, i64), Vec<Transition<FinitePattern>>>,
    psi: Memo<(FinitePattern, i64), LaurentExpr>,
    series: SeriesMemo<(FinitePattern, i64)>,
}

impl FiniteAction {
    pub fn new(n: usize) -> Result<Self, ActionError> {
        if !(2..=laumon_algebra::MAX_T).contains(&n) {
            return Err(laumon_patterns::PatternError::BadRank(n).into());
        }
        Ok(FiniteAction {
            n,
            transitions: Memo::default(),
            psi: Memo::default(),
            series: SeriesMemo::default(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn build_transitions(&self, p: &FinitePattern, kind: XKind, i: usize) -> Vec<Transition<FinitePattern>> {
        let step = match kind {
            XKind::E => Step::Remove,
            XKind::F => Step::Add,
        };
        p.neighbors(i, step)
            .into_iter()
            .map(|(j, _)| {
                let (list, beta, target) = match kind {
                    XKind::E => e_factors(p, i, j),
                    XKind::F => f_factors(p, i, j),
                }
                .expect("neighbor moves are valid");
                Transition {
                    target,
                    column: j as i64,
                    coeff0: list.to_expr().expect("generic denominators are nonzero"),
                    beta,
                }
            })
            .collect()
    }

    pub fn apply(
        &self,
        op: ModeSpec,
        x: &GradedVector<FinitePattern>,
    ) -> Result<GradedVector<FinitePattern>, ActionError> {
        x.check_rank(self.n)?;
        let k = op.node;
        let mut out = GradedVector::new(self.n);
        match op.kind {
            ModeKind::TCartan => {
                for (p, c) in x.iter() {
                    out.add_term(p.clone(), c * &t_cartan_eigenvalue(p, k)?)?;
                }
            }
            ModeKind::PsiPlus | ModeKind::PsiMinus => {
                if k == 0 || k >= self.n {
                    return Err(ActionError::NodeOutOfRange {
                        node: k as i64,
                        n: self.n,
                    });
                }
                let sign = if op.kind == ModeKind::PsiPlus {
                    PsiSign::Plus
                } else {
                    PsiSign::Minus
                };
                for (p, c) in x.iter() {
                    out.add_term(p.clone(), c * &self.psi_mode(p, k as i64, sign, op.mode))?;
                }
            }
            ModeKind::E | ModeKind::F => {
                if k == 0 || k >= self.n {
                    return Err(ActionError::NodeOutOfRange {
                        node: k as i64,
                        n: self.n,
                    });
                }
                let kind = if op.kind == ModeKind::E { XKind::E } else { XKind::F };
                for (p, c) in x.iter() {
                    for tr in self.transitions(p, kind, k as i64).iter() {
                        out.add_term(tr.target.clone(), c * &tr.at_mode(op.mode))?;
                    }
                }
            }
        }
        Ok(out)
    }
}

impl LoopModule for FiniteAction {
    type P = FinitePattern;

    fn rank(&self) -> usize {
        self.n
    }

    fn nodes(&self) -> Vec<i64> {
        (1..self.n as i64).collect()
    }

    fn cartan(&self, k: i64, l: i64) -> i32 {
        match (k - l).abs() {
            0 => 2,
            1 => -1,
            _ => 0,
        }
    }

    fn basis(&self, max_total: u32) -> Vec<FinitePattern> {
        finite_patterns_up_to(self.n, max_total).expect("rank checked at construction")
    }

    fn transitions(&self, p: &FinitePattern, kind: XKind, node: i64) -> Arc<Vec<Transition<FinitePattern>>> {
        self.transitions.get_or((p.clone(), kind, node), || {
            self.build_transitions(p, kind, node as usize)
        })
    }

    fn psi(&self, p: &FinitePattern, node: i64) -> Arc<LaurentExpr> {
        self.psi.get_or((p.clone(), node), || {
            psi_eigenvalue(p, node as usize).expect("node in range")
        })
    }

    fn psi_mode(&self, p: &FinitePattern, node: i64, sign: PsiSign, m: i32) -> LaurentExpr {
        let f = self.psi(p, node);
        self.series.mode((p.clone(), node), &f, sign, m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use laumon_algebra::Direction;

    fn ex(s: &str) -> LaurentExpr {
        s.parse().unwrap()
    }

    fn single(n: usize, rows: Vec<Vec<u32>>) -> FinitePattern {
        FinitePattern::new(n, rows).unwrap()
    }

    #[test]
    fn f_on_the_vacuum() {
        let z = FinitePattern::zero(2);
        assert_eq!(f_mode_coeff(&z, 1, 1, 0).unwrap(), ex("(-t1)/(1 - v^2)"));
        assert_eq!(f_mode_coeff(&z, 1, 1, 1).unwrap(), ex("(-t1^3*v)/(1 - v^2)"));
    }

    #[test]
    fn e_on_one_box() {
        let p = single(2, vec![vec![1]]);
        let e0 = e_mode_coeff(&p, 1, 1, 0).unwrap();
        assert_eq!(e0, ex("t2^-1 - t2*t1^-2*v^2"));
        assert_eq!(e_mode_coeff(&p, 1, 1, 1).unwrap(), e0 * ex("t1^2*v"));
        assert!(e_mode_coeff(&FinitePattern::zero(2), 1, 1, 0).is_err());
    }

    #[test]
    fn non_moves_vanish() {
        let z = FinitePattern::zero(3);
        let far = single(3, vec![vec![2], vec![0, 0]]);
        assert!(matrix_coeff(XKind::F, 1, 0, &z, &far).unwrap().is_zero());
        assert!(matrix_coeff(XKind::E, 1, 0, &far, &z).unwrap().is_zero());
    }

    #[test]
    fn vacuum_psi() {
        let z = FinitePattern::zero(2);
        let psi = psi_eigenvalue(&z, 1).unwrap();
        assert_eq!(psi, ex("(t2^-1*t1*v^-1 - t2*t1*v^2*z^-1)/(1 - t1^2*v*z^-1)"));
        assert_eq!(psi_mode(&z, 1, 0, PsiSign::Plus).unwrap(), ex("t2^-1*t1*v^-1"));
        assert_eq!(psi_mode(&z, 1, 0, PsiSign::Minus).unwrap(), ex("t1^-1*t2*v"));
        assert_eq!(psi_mode(&z, 1, 1, PsiSign::Plus).unwrap(), ex("t1^3*t2^-1 - t1*t2*v^2"));
        assert!(psi_mode(&z, 1, 1, PsiSign::Minus).unwrap().is_zero());
    }

    #[test]
    fn zero_modes_of_psi() {
        for p in finite_patterns_up_to(3, 3).unwrap() {
            for i in 1..3 {
                let (di1, di, dim1) = (deg(&p, i + 1), deg(&p, i), deg(&p, i - 1));
                let plus = mono(t(i) * t(i + 1).inv() * v(di1 - 2 * di + dim1 - 1));
                let minus = mono(t(i).inv() * t(i + 1) * v(-di1 + 2 * di - dim1 + 1));
                assert_eq!(psi_mode(&p, i, 0, PsiSign::Plus).unwrap(), plus);
                assert_eq!(psi_mode(&p, i, 0, PsiSign::Minus).unwrap(), minus);
            }
        }
    }

    #[test]
    fn b_series_examples() {
        let z = FinitePattern::zero(2);
        assert!(b_series_eigenvalue(&z, 0).unwrap().is_one());
        assert_eq!(
            b_series_eigenvalue(&z, 2).unwrap(),
            ex("(1 - t1^2*z^-1)") * ex("1 - t2^2*z^-1")
        );
        let p = single(2, vec![vec![1]]);
        assert_eq!(b_series_eigenvalue(&p, 1).unwrap(), ex("1 - t1^2*v^-2*z^-1"));
        assert!(b_series_eigenvalue(&p, 3).is_err());
    }

    #[test]
    fn cartan_and_apply() {
        let a = FiniteAction::new(2).unwrap();
        let vac = GradedVector::basis(FinitePattern::zero(2));
        let fv = a.apply(ModeSpec::new(ModeKind::F, 1, 0), &vac).unwrap();
        assert_eq!(fv.len(), 1);
        assert_eq!(fv.get(&single(2, vec![vec![1]])), ex("(-t1)/(1 - v^2)"));
        assert!(a.apply(ModeSpec::new(ModeKind::E, 1, 0), &vac).unwrap().is_empty());
        let tv = a.apply(ModeSpec::new(ModeKind::TCartan, 1, 0), &vac).unwrap();
        assert_eq!(tv.get(&FinitePattern::zero(2)), ex("t1"));
        let other = GradedVector::basis(FinitePattern::zero(3));
        assert!(a.apply(ModeSpec::new(ModeKind::F, 1, 0), &other).is_err());
    }

    #[test]
    fn expansion_direction_matches_sign() {
        assert_eq!(PsiSign::Plus.direction(), Direction::AtInfinity);
        assert_eq!(PsiSign::Minus.direction(), Direction::AtZero);
    }
}

//! Torus characters of tangent spaces at the affine fixed points and an
//! independent recomputation of the affine matrix entries by localization.

use std::collections::BTreeMap;
use std::fmt;

use laumon_algebra::{LaurentExpr, Monomial, Var};
use laumon_patterns::{residue, AffinePattern, Step};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::ActionError;
use crate::module::XKind;
use crate::toroidal::tt;

/// A character written as a signed sum of monomials.
type Signed = BTreeMap<Monomial, i64>;

/// A finite multiset of torus weights with positive multiplicities, none of
/// them trivial.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeightMultiset {
    weights: BTreeMap<Monomial, u32>,
}

impl WeightMultiset {
    fn from_signed(ch: Signed) -> Result<Self, ActionError> {
        let mut weights = BTreeMap::new();
        for (m, c) in ch {
            if c == 0 {
                continue;
            }
            if c < 0 {
                return Err(ActionError::NonPositiveMultiplicity(m.to_string()));
            }
            if m.is_one() {
                return Err(ActionError::UnitWeight);
            }
            weights.insert(m, c as u32);
        }
        Ok(WeightMultiset { weights })
    }

    /// Number of weights counted with multiplicity.
    pub fn len(&self) -> usize {
        self.weights.values().map(|&c| c as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn multiplicity(&self, m: &Monomial) -> u32 {
        self.weights.get(m).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, u32)> {
        self.weights.iter().map(|(m, &c)| (m, c))
    }

    /// `∏ (1 - w)` over the multiset.
    pub fn euler(&self) -> LaurentExpr {
        self.weights
            .iter()
            .map(|(&m, &c)| LaurentExpr::one_minus(m).pow(c as i32))
            .product()
    }
}

impl fmt::Display for WeightMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .weights
            .iter()
            .map(|(m, c)| if *c == 1 { m.to_string() } else { format!("{m} x{c}") })
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl Serialize for WeightMultiset {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.weights.len()))?;
        for (m, c) in &self.weights {
            seq.serialize_element(&(m.to_string(), c))?;
        }
        seq.end()
    }
}

/// `t_{(a mod n)}^2 t_{(b mod n)}^{-2} v^{ve} u^{2⌊-b/n⌋ - 2⌊-a/n⌋}`.
fn weight(n: usize, a: i64, b: i64, ve: i64) -> Monomial {
    let fl = |x: i64| (-x).div_euclid(n as i64);
    Monomial::pow(Var::t(residue(a, n)), 2)
        * Monomial::pow(Var::t(residue(b, n)), -2)
        * Monomial::pow(Var::V, ve as i32)
        * Monomial::pow(Var::U, (2 * fl(b) - 2 * fl(a)) as i32)
}

/// `(v^{2a} - 1)/(v^2 - 1)` as signed `v`-exponents.
fn geo(a: i64) -> Vec<(i64, i64)> {
    if a >= 0 {
        (0..a).map(|s| (2 * s, 1)).collect()
    } else {
        (1..=-a).map(|s| (-2 * s, -1)).collect()
    }
}

/// `geo(a) (v^{-2b} - 1)`.
fn geo_times(a: i64, b: i64) -> Vec<(i64, i64)> {
    geo(a)
        .into_iter()
        .flat_map(|(e, c)| [(e - 2 * b, c), (e, -c)])
        .collect()
}

fn add(ch: &mut Signed, n: usize, a: i64, b: i64, terms: &[(i64, i64)], sign: i64, shift: i64) {
    for &(e, c) in terms {
        *ch.entry(weight(n, a, b, e + shift)).or_insert(0) += sign * c;
    }
}

fn space_signed(p: &AffinePattern) -> Signed {
    let n = p.n();
    let depth = p.depth();
    let d = |i: i64, j: i64| p.d(i, j) as i64;
    let mut ch = Signed::new();
    for k in 1..=n as i64 {
        let lo = k - depth;
        for l in lo..=k {
            for lp in lo..k {
                let (a, b) = (d(k - 1, lp), d(k, l));
                if a != 0 && b != 0 {
                    add(&mut ch, n, l, lp, &geo_times(a, b), 1, 2);
                }
            }
        }
        for lp in lo..k {
            let a = d(k - 1, lp);
            if a != 0 {
                add(&mut ch, n, k, lp, &geo(a), 1, 2);
            }
        }
        for l in lo..=k {
            for lp in lo..=k {
                let (a, b) = (d(k, lp), d(k, l));
                if a != 0 && b != 0 {
                    add(&mut ch, n, l, lp, &geo_times(a, b), -1, 2);
                }
            }
        }
        for l in lo..=k {
            let b = d(k, l);
            if b != 0 {
                add(&mut ch, n, l, k, &geo(-b), -1, 2);
            }
        }
    }
    ch
}

/// Character of the tangent space at the fixed point `p`; it has
/// `2 Σ_k d_k` weights.
pub fn tangent_character_space(p: &AffinePattern) -> Result<WeightMultiset, ActionError> {
    WeightMultiset::from_signed(space_signed(p))
}

/// Character of the tangent space of the correspondence at the pair
/// `(src, src + δ_{ij})`; it has `2 Σ_k d_k + 1` weights.
pub fn tangent_character_correspondence(src: &AffinePattern, i: i64, j: i64) -> Result<WeightMultiset, ActionError> {
    src.moved(i, j, Step::Add).ok_or(ActionError::InvalidMove { i, j })?;
    let n = src.n();
    let d = |a: i64, b: i64| src.d(a, b) as i64;
    let mut ch = space_signed(src);
    *ch.entry(Monomial::pow(Var::V, 2)).or_insert(0) += 1;
    if j < i {
        *ch.entry(weight(n, j, j, -2 * d(i, j) + 2 * d(i - 1, j))).or_insert(0) -= 1;
        *ch.entry(weight(n, j, i, -2 * d(i, j) + 2 * d(i, i))).or_insert(0) += 1;
    }
    for k in (i - src.depth() - 1..i).filter(|&k| k != j) {
        *ch.entry(weight(n, j, k, -2 * d(i, j) + 2 * d(i, k))).or_insert(0) += 1;
        *ch.entry(weight(n, j, k, -2 * d(i, j) + 2 * d(i - 1, k))).or_insert(0) -= 1;
    }
    WeightMultiset::from_signed(ch)
}

/// Normalization constant of the fixed point: `∏ (1 - w)` over its tangent
/// weights.
pub fn c_norm(p: &AffinePattern) -> Result<LaurentExpr, ActionError> {
    Ok(tangent_character_space(p)?.euler())
}

/// Matrix entry of `x_{i,r}` at the move `(i, j)` from `src`, computed by
/// localization on the correspondence. The `e` entries carry the same
/// `v u^{-2}` normalization as the closed formulas.
pub fn bott_coefficient(kind: XKind, src: &AffinePattern, i: i64, j: i64, r: i32) -> Result<LaurentExpr, ActionError> {
    let n = src.n();
    if n < 3 {
        return Err(ActionError::RankTooSmall(n));
    }
    let v = |e: i64| Monomial::pow(Var::V, e as i32);
    let deg = |p: &AffinePattern, k: i64| p.degree(k) as i64;
    match kind {
        XKind::F => {
            let tgt = src.moved(i, j, Step::Add).ok_or(ActionError::InvalidMove { i, j })?;
            let q = tgt.p_weight(i, j)?;
            let pre = tt(n, i).inv() * v(deg(&tgt, i) - deg(&tgt, i - 1) - 2 + i) * q * v(2);
            let spectral = (q * v(i + 2)).powi(r);
            let ratio = tangent_character_space(src)?
                .euler()
                .checked_div(&tangent_character_correspondence(src, i, j)?.euler())?;
            Ok(-LaurentExpr::monomial(pre * spectral) * ratio)
        }
        XKind::E => {
            let lam = src.moved(i, j, Step::Remove).ok_or(ActionError::InvalidMove { i, j })?;
            let p = lam.p_weight(i, j)?;
            let pre = tt(n, i + 1).inv() * v(deg(&lam, i + 1) - deg(&lam, i) - i);
            let spectral = (p * v(i)).powi(r);
            let norm = v(1) * Monomial::pow(Var::U, -2);
            let ratio = tangent_character_space(src)?
                .euler()
                .checked_div(&tangent_character_correspondence(&lam, i, j)?.euler())?;
            Ok(LaurentExpr::monomial(pre * spectral * norm) * ratio)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_pattern_has_no_weights() {
        let p = AffinePattern::empty(3);
        assert!(tangent_character_space(&p).unwrap().is_empty());
        assert!(c_norm(&p).unwrap().is_one());
        assert_eq!(tangent_character_correspondence(&p, 1, 1).unwrap().len(), 1);
    }

    #[test]
    fn single_box_in_rank_two() {
        let p = AffinePattern::new(2, vec![vec![1], vec![]]).unwrap();
        let ch = tangent_character_space(&p).unwrap();
        assert_eq!(ch.len(), 2);
        let product: LaurentExpr = ch.iter().map(|(m, _)| LaurentExpr::one_minus(*m)).product();
        assert_eq!(c_norm(&p).unwrap(), product);
    }

    #[test]
    fn geometric_sums() {
        assert_eq!(geo(3), vec![(0, 1), (2, 1), (4, 1)]);
        assert_eq!(geo(-2), vec![(-2, -1), (-4, -1)]);
        assert!(geo(0).is_empty());
    }
}

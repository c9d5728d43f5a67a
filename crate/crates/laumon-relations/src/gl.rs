//! Zero modes together with the Cartan generators `t_i` against the
//! defining relations of quantum `gl_n`.
//!
//! The operators here are assembled from the closed zero-mode formulas,
//! not from the loop transitions, so the suite also cross-checks those.

use std::collections::BTreeMap;

use laumon_action::finite::{e_mode_coeff, f_mode_coeff, t_cartan_eigenvalue, zero_mode_e, zero_mode_f};
use laumon_action::{FiniteAction, LoopModule, XKind};
use laumon_algebra::{LaurentExpr, Monomial, Var};
use laumon_patterns::{FinitePattern, Step};
use rayon::prelude::*;

use crate::report::{Counterexample, Family, ModuleKind, RelationId, Scope, Strategy, VerificationReport};

type Vector = BTreeMap<FinitePattern, LaurentExpr>;

fn apply(kind: XKind, i: usize, x: &Vector) -> Vector {
    let mut out = Vector::new();
    for (p, c) in x {
        let step = match kind {
            XKind::E => Step::Remove,
            XKind::F => Step::Add,
        };
        for (j, q) in p.neighbors(i, step) {
            let coeff = match kind {
                XKind::E => zero_mode_e(p, i, j),
                XKind::F => zero_mode_f(p, i, j),
            }
            .expect("neighbor moves are valid");
            let slot = out.entry(q).or_insert_with(LaurentExpr::zero);
            *slot = &*slot + &(c * &coeff);
        }
    }
    out
}

/// Apply a word right to left and add `weight` times the result into `acc`.
fn add_word(acc: &mut Vector, weight: &LaurentExpr, word: &[(XKind, usize)], p: &FinitePattern) {
    let mut x = Vector::from([(p.clone(), LaurentExpr::one())]);
    for &(kind, i) in word.iter().rev() {
        x = apply(kind, i, &x);
    }
    for (q, c) in x {
        let slot = acc.entry(q).or_insert_with(LaurentExpr::zero);
        *slot = &*slot + &(weight * &c);
    }
}

fn first_nonzero(p: &FinitePattern, label: &str, acc: &Vector) -> Option<Counterexample> {
    acc.iter().find(|(_, c)| !c.is_zero()).map(|(q, c)| Counterexample {
        source: p.to_string(),
        target: q.to_string(),
        instance: label.to_string(),
        residual: c.to_string(),
    })
}

fn v(e: i32) -> LaurentExpr {
    LaurentExpr::monomial(Monomial::pow(Var::V, e))
}

fn t_eigen(p: &FinitePattern, i: usize) -> LaurentExpr {
    t_cartan_eigenvalue(p, i).expect("node in range")
}

fn run<F>(n: usize, max_total: u32, id: RelationId, check: F) -> VerificationReport
where
    F: Fn(&FinitePattern) -> (usize, Option<Counterexample>) + Send + Sync,
{
    let act = FiniteAction::new(n).expect("rank at least two");
    let scope = Scope {
        module: ModuleKind::Finite,
        n,
        max_total,
        window: 0,
        strategy: Strategy::Symbolic,
    };
    let outcomes = act.basis(max_total).par_iter().map(check).collect();
    VerificationReport::from_outcomes(id, scope, 1, outcomes)
}

/// `t_i t_j = t_j t_i` and `t_i t_i^{-1} = 1`.
pub fn verify_cartan(n: usize, max_total: u32, i: usize, j: usize) -> VerificationReport {
    run(
        n,
        max_total,
        RelationId::new(Family::GlCartan, (i as i64, j as i64)),
        |p| {
            let (a, b) = (t_eigen(p, i), t_eigen(p, j));
            let ok = (&a * &b) == (&b * &a) && a.inv().map(|x| (&x * &a).is_one()).unwrap_or(false);
            let fail = (!ok).then(|| Counterexample {
                source: p.to_string(),
                target: p.to_string(),
                instance: "t_i t_j".into(),
                residual: (&a * &b).to_string(),
            });
            (1, fail)
        },
    )
}

/// `t_i x_j t_i^{-1} = x_j v^{±(δ_{ij} - δ_{i,j+1})}`.
pub fn verify_conjugation(n: usize, max_total: u32, i: usize, j: usize, kind: XKind) -> VerificationReport {
    let delta = |a: usize, b: usize| (a == b) as i32;
    let expected = v(kind.sign() * (delta(i, j) - delta(i, j + 1)));
    let id = RelationId::new(Family::GlConjugation, (i as i64, j as i64)).side(kind);
    run(n, max_total, id, |p| {
        let step = match kind {
            XKind::E => Step::Remove,
            XKind::F => Step::Add,
        };
        let moves = p.neighbors(j, step);
        let fail = moves.iter().find_map(|(_, q)| {
            let ratio = t_eigen(q, i).checked_div(&t_eigen(p, i)).expect("monomial");
            (ratio != expected).then(|| Counterexample {
                source: p.to_string(),
                target: q.to_string(),
                instance: "t_i x_j t_i^-1".into(),
                residual: (ratio - &expected).to_string(),
            })
        });
        (moves.len(), fail)
    })
}

/// `[e_i, f_j] = δ_{ij}(k_i - k_i^{-1})/(v - v^{-1})` with `k_i = t_i t_{i+1}^{-1}`.
pub fn verify_commutator(n: usize, max_total: u32, i: usize, j: usize) -> VerificationReport {
    let id = RelationId::new(Family::GlCommutator, (i as i64, j as i64));
    run(n, max_total, id, |p| {
        let mut acc = Vector::new();
        add_word(&mut acc, &LaurentExpr::one(), &[(XKind::E, i), (XKind::F, j)], p);
        add_word(&mut acc, &-LaurentExpr::one(), &[(XKind::F, j), (XKind::E, i)], p);
        if i == j {
            let k = t_eigen(p, i).checked_div(&t_eigen(p, i + 1)).expect("monomial");
            let rhs = (&k - &k.inv().expect("monomial"))
                .checked_div(&(v(1) - v(-1)))
                .expect("nonzero");
            let slot = acc.entry(p.clone()).or_insert_with(LaurentExpr::zero);
            *slot = &*slot - &rhs;
        }
        (acc.len(), first_nonzero(p, "[e_i,f_j]", &acc))
    })
}

/// `[x_i, x_j] = 0` for `|i - j| > 1`.
pub fn verify_far_commute(n: usize, max_total: u32, i: usize, j: usize, kind: XKind) -> VerificationReport {
    let id = RelationId::new(Family::GlFarCommute, (i as i64, j as i64)).side(kind);
    run(n, max_total, id, |p| {
        let mut acc = Vector::new();
        add_word(&mut acc, &LaurentExpr::one(), &[(kind, i), (kind, j)], p);
        add_word(&mut acc, &-LaurentExpr::one(), &[(kind, j), (kind, i)], p);
        (acc.len(), first_nonzero(p, "[x_i,x_j]", &acc))
    })
}

/// `x_i^2 x_j - (v + v^{-1}) x_i x_j x_i + x_j x_i^2 = 0` for `|i - j| = 1`.
pub fn verify_serre(n: usize, max_total: u32, i: usize, j: usize, kind: XKind) -> VerificationReport {
    let id = RelationId::new(Family::GlSerre, (i as i64, j as i64)).side(kind);
    run(n, max_total, id, |p| {
        let mut acc = Vector::new();
        add_word(&mut acc, &LaurentExpr::one(), &[(kind, i), (kind, i), (kind, j)], p);
        add_word(&mut acc, &-(v(1) + v(-1)), &[(kind, i), (kind, j), (kind, i)], p);
        add_word(&mut acc, &LaurentExpr::one(), &[(kind, j), (kind, i), (kind, i)], p);
        (acc.len(), first_nonzero(p, "serre", &acc))
    })
}

/// The closed zero-mode formulas agree with the `r = 0` loop entries.
pub fn verify_zero_modes(n: usize, max_total: u32, i: usize) -> VerificationReport {
    let id = RelationId::new(Family::GlZeroModes, (i as i64, i as i64));
    run(n, max_total, id, |p| {
        let mut count = 0;
        for (kind, step) in [(XKind::F, Step::Add), (XKind::E, Step::Remove)] {
            for (j, q) in p.neighbors(i, step) {
                count += 1;
                let (closed, loop0) = match kind {
                    XKind::F => (zero_mode_f(p, i, j), f_mode_coeff(p, i, j, 0)),
                    XKind::E => (zero_mode_e(p, i, j), e_mode_coeff(p, i, j, 0)),
                };
                let (closed, loop0) = (closed.expect("valid move"), loop0.expect("valid move"));
                if closed != loop0 {
                    return (
                        count,
                        Some(Counterexample {
                            source: p.to_string(),
                            target: q.to_string(),
                            instance: format!("{kind}_{i},0"),
                            residual: (closed - loop0).to_string(),
                        }),
                    );
                }
            }
        }
        (count, None)
    })
}

/// Every family above on every admissible node pair.
pub fn gl_suite(n: usize, max_total: u32) -> Vec<VerificationReport> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            out.push(verify_cartan(n, max_total, i, j));
        }
    }
    for i in 1..=n {
        for j in 1..n {
            for kind in [XKind::E, XKind::F] {
                out.push(verify_conjugation(n, max_total, i, j, kind));
            }
        }
    }
    for i in 1..n {
        for j in 1..n {
            out.push(verify_commutator(n, max_total, i, j));
            for kind in [XKind::E, XKind::F] {
                match i.abs_diff(j) {
                    0 => {}
                    1 => out.push(verify_serre(n, max_total, i, j, kind)),
                    _ => out.push(verify_far_commute(n, max_total, i, j, kind)),
                }
            }
        }
        out.push(verify_zero_modes(n, max_total, i));
    }
    out
}

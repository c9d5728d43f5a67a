//! The defining relations in mode form and their toroidal boundary variants.

use laumon_action::{AffineAction, LoopModule, PsiSign, XKind};
use laumon_algebra::{LaurentExpr, Monomial, Point, Var};
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use crate::engine::{good_points, verify_instances};
use crate::report::{Counterexample, Family, Mutation, RelationId, Scope, Strategy, VerificationReport};
use crate::word::{int, v_minus_vinv, vmono, Instance, Letter, Term};

fn window(scope: &Scope) -> std::ops::RangeInclusive<i32> {
    -scope.window..=scope.window
}

/// `x_{k,a+1}x_{l,b} - v^e x_{k,a}x_{l,b+1} - v^e x_{l,b}x_{k,a+1} + x_{l,b+1}x_{k,a}`.
fn quadratic(kind: XKind, k: (i64, bool), l: (i64, bool), e: i32, a: i32, b: i32) -> Instance {
    let xk = |m| Letter::x_hat(kind, k.0, k.1, m);
    let xl = |m| Letter::x_hat(kind, l.0, l.1, m);
    Instance {
        label: format!("a={a},b={b}"),
        terms: vec![
            Term::new(int(1), vec![xk(a + 1), xl(b)]),
            Term::new(vmono(-1, e), vec![xk(a), xl(b + 1)]),
            Term::new(vmono(-1, e), vec![xl(b), xk(a + 1)]),
            Term::new(int(1), vec![xl(b + 1), xk(a)]),
        ],
    }
}

fn commutation(kind: XKind, k: i64, l: i64, a: i32, b: i32) -> Instance {
    Instance {
        label: format!("a={a},b={b}"),
        terms: vec![
            Term::new(int(1), vec![Letter::x(kind, k, a), Letter::x(kind, l, b)]),
            Term::new(int(-1), vec![Letter::x(kind, l, b), Letter::x(kind, k, a)]),
        ],
    }
}

/// Same-node quadratic relation of `x^±_k`.
pub fn verify_xx_same<M: LoopModule>(
    m: &M,
    k: i64,
    kind: XKind,
    scope: Scope,
    mutation: Option<Mutation>,
) -> VerificationReport {
    let power = match mutation {
        Some(Mutation::HalfPower) => 1,
        _ => m.cartan(k, k),
    };
    let e = kind.sign() * power;
    let instances: Vec<Instance> = window(&scope)
        .flat_map(|a| window(&scope).map(move |b| quadratic(kind, (k, false), (k, false), e, a, b)))
        .collect();
    let id = RelationId::new(Family::XxSame, (k, k)).side(kind).mutated(mutation);
    verify_instances(m, id, scope, &instances)
}

/// Quadratic relation between `x^±_k` and `x^±_l`, `k ≠ l`. When the nodes
/// are not joined the modes must commute outright.
pub fn verify_xx_adjacent<M: LoopModule>(
    m: &M,
    k: i64,
    l: i64,
    kind: XKind,
    scope: Scope,
    mutation: Option<Mutation>,
) -> VerificationReport {
    let a = m.cartan(k, l);
    let e = match mutation {
        Some(Mutation::DoublePower) => 2 * kind.sign() * a,
        _ => kind.sign() * a,
    };
    let instances: Vec<Instance> = window(&scope)
        .flat_map(|x| {
            window(&scope).map(move |y| {
                if a == 0 {
                    commutation(kind, k, l, x, y)
                } else {
                    quadratic(kind, (k, false), (l, false), e, x, y)
                }
            })
        })
        .collect();
    let id = RelationId::new(Family::XxAdjacent, (k, l)).side(kind).mutated(mutation);
    verify_instances(m, id, scope, &instances)
}

/// `(v - v^{-1})[e_{k,a}, f_{l,b}] = δ_{kl}(ψ^+_{k,a+b} - ψ^-_{k,a+b})`.
pub fn verify_commutator<M: LoopModule>(m: &M, k: i64, l: i64, scope: Scope) -> VerificationReport {
    let vv = v_minus_vinv();
    let instances: Vec<Instance> = window(&scope)
        .flat_map(|a| {
            let vv = vv.clone();
            window(&scope).map(move |b| {
                let e = Letter::x(XKind::E, k, a);
                let f = Letter::x(XKind::F, l, b);
                let mut terms = vec![Term::new(vv.clone(), vec![e, f]), Term::new(vv.neg(), vec![f, e])];
                if k == l {
                    terms.push(Term::new(int(-1), vec![Letter::psi(PsiSign::Plus, k, a + b)]));
                    terms.push(Term::new(int(1), vec![Letter::psi(PsiSign::Minus, k, a + b)]));
                }
                Instance {
                    label: format!("a={a},b={b}"),
                    terms,
                }
            })
        })
        .collect();
    verify_instances(m, RelationId::new(Family::XCommutator, (k, l)), scope, &instances)
}

/// `[ψ^s_{k,a}, ψ^{s'}_{l,b}] = 0` over the modes each sign admits.
pub fn verify_psi_psi<M: LoopModule>(
    m: &M,
    k: i64,
    l: i64,
    signs: (PsiSign, PsiSign),
    scope: Scope,
) -> VerificationReport {
    let modes = |s: PsiSign| window(&scope).filter(move |&a| s.admits(a));
    let instances: Vec<Instance> = modes(signs.0)
        .flat_map(|a| {
            modes(signs.1).map(move |b| {
                let x = Letter::psi(signs.0, k, a);
                let y = Letter::psi(signs.1, l, b);
                Instance {
                    label: format!("a={a},b={b}"),
                    terms: vec![Term::new(int(1), vec![x, y]), Term::new(int(-1), vec![y, x])],
                }
            })
        })
        .collect();
    let id = RelationId::new(Family::PsiPsi, (k, l)).signs(vec![signs.0, signs.1]);
    verify_instances(m, id, scope, &instances)
}

/// Cubic relation between adjacent nodes `i` and `j`, symmetrized in the
/// two `x_i` modes.
pub fn verify_serre<M: LoopModule>(
    m: &M,
    i: i64,
    j: i64,
    kind: XKind,
    scope: Scope,
    mutation: Option<Mutation>,
) -> VerificationReport {
    let middle = match mutation {
        Some(Mutation::ClassicalSerre) => int(-2),
        _ => vmono(-1, 1).sub(&vmono(1, -1)),
    };
    let x = |node, mode| Letter::x(kind, node, mode);
    let mut instances = Vec::new();
    for a in window(&scope) {
        for b in window(&scope).filter(|&b| b >= a) {
            for c in window(&scope) {
                let mut terms = Vec::new();
                for (p, q) in [(a, b), (b, a)] {
                    terms.push(Term::new(int(1), vec![x(i, p), x(i, q), x(j, c)]));
                    terms.push(Term::new(middle.clone(), vec![x(i, p), x(j, c), x(i, q)]));
                    terms.push(Term::new(int(1), vec![x(j, c), x(i, p), x(i, q)]));
                }
                instances.push(Instance {
                    label: format!("a={a},b={b},c={c}"),
                    terms,
                });
            }
        }
    }
    let id = RelationId::new(Family::Serre, (i, j)).side(kind).mutated(mutation);
    verify_instances(m, id, scope, &instances)
}

/// One side of a `ψ`-`x` relation: `x^±_k` acting, `ψ_l` measured, either
/// possibly hat-shifted.
struct RatioSpec {
    kind: XKind,
    k: i64,
    x_hat: bool,
    l: i64,
    psi_hat: bool,
    a: i32,
}

/// Every `x_k` entry is geometric in the mode with ratio `β`, so the
/// relation holds iff `(z - v^{±a}β)Ψ_tgt(z) = (v^{±a}z - β)Ψ_src(z)` for
/// each single-box transition.
fn verify_ratio<M: LoopModule>(m: &M, id: RelationId, scope: Scope, spec: RatioSpec) -> VerificationReport {
    let hat = m.hat_unit();
    let shift = |on: bool| {
        if on {
            hat.expect("hatted series need a hat shift")
        } else {
            Monomial::ONE
        }
    };
    let psi = |p: &M::P| {
        let f = m.psi(p, spec.l);
        if spec.psi_hat {
            f.scale_z(shift(true))
        } else {
            (*f).clone()
        }
    };
    let va = Monomial::pow(Var::V, spec.kind.sign() * spec.a);
    let z = Monomial::var(Var::Z);
    let label = id.to_string();
    let sources = m.basis(scope.max_total);
    let outcomes: Vec<(usize, Option<Counterexample>)> = sources
        .par_iter()
        .map(|p| {
            let before = psi(p);
            let mut count = 0;
            for tr in m.transitions(p, spec.kind, spec.k).iter() {
                count += 1;
                let beta = tr.beta / shift(spec.x_hat);
                let after = psi(&tr.target);
                let residual = match scope.strategy {
                    Strategy::Symbolic => {
                        let lhs = (LaurentExpr::monomial(z) - LaurentExpr::monomial(va * beta)) * &after;
                        let rhs = (LaurentExpr::monomial(va * z) - LaurentExpr::monomial(beta)) * &before;
                        let r = lhs - rhs;
                        (!r.is_zero()).then(|| r.to_string())
                    }
                    Strategy::Random { points, seed } => {
                        let (src, tgt) = (p.to_string(), tr.target.to_string());
                        let pts = good_points(seed, &[&label, &src, &tgt], m.rank(), points, true, &[&after, &before]);
                        pts.iter().enumerate().find_map(|(idx, (pt, vals))| {
                            let r = ratio_residual(pt, z, va, beta, &vals[0], &vals[1]);
                            (!r.is_zero()).then(|| format!("{r} at point {idx}"))
                        })
                    }
                };
                if let Some(residual) = residual {
                    return (
                        count,
                        Some(Counterexample {
                            source: p.to_string(),
                            target: tr.target.to_string(),
                            instance: format!("row {}", tr.column),
                            residual,
                        }),
                    );
                }
            }
            (count, None)
        })
        .collect();
    VerificationReport::from_outcomes(id, scope, 1, outcomes)
}

fn ratio_residual(
    pt: &Point,
    z: Monomial,
    va: Monomial,
    beta: Monomial,
    after: &BigRational,
    before: &BigRational,
) -> BigRational {
    let ev = |m: Monomial| pt.monomial(&m).expect("all variables assigned");
    (ev(z) - ev(va * beta)) * after - (ev(va * z) - ev(beta)) * before
}

/// `(z - v^{±a_{kl}}w)ψ_l(z)x^±_k(w) = x^±_k(w)ψ_l(z)(v^{±a_{kl}}z - w)`,
/// covering both expansions of `ψ_l` at once.
pub fn verify_psi_x<M: LoopModule>(m: &M, k: i64, l: i64, kind: XKind, scope: Scope) -> VerificationReport {
    let spec = RatioSpec {
        kind,
        k,
        x_hat: false,
        l,
        psi_hat: false,
        a: m.cartan(k, l),
    };
    verify_ratio(m, RelationId::new(Family::PsiX, (k, l)).side(kind), scope, spec)
}

/// The relations between node `n` and node `1` of the toroidal action,
/// where node `n` enters through the hat-shifted series. The `Unshifted`
/// mutation drops the shift.
pub fn verify_toroidal_boundary(
    m: &AffineAction,
    family: Family,
    kind: XKind,
    scope: Scope,
    mutation: Option<Mutation>,
) -> VerificationReport {
    let n = m.n() as i64;
    let hat = mutation != Some(Mutation::Unshifted);
    let a = -1;
    match family {
        Family::TorXxBoundary => {
            let e = kind.sign() * a;
            let instances: Vec<Instance> = window(&scope)
                .flat_map(|x| window(&scope).map(move |y| quadratic(kind, (n, hat), (1, false), e, x, y)))
                .collect();
            let id = RelationId::new(family, (n, 1)).side(kind).mutated(mutation);
            verify_instances(m, id, scope, &instances)
        }
        Family::TorPsixBoundaryA => {
            let spec = RatioSpec {
                kind,
                k: 1,
                x_hat: false,
                l: n,
                psi_hat: hat,
                a,
            };
            let id = RelationId::new(family, (n, 1)).side(kind).mutated(mutation);
            verify_ratio(m, id, scope, spec)
        }
        Family::TorPsixBoundaryB => {
            let spec = RatioSpec {
                kind,
                k: n,
                x_hat: hat,
                l: 1,
                psi_hat: false,
                a,
            };
            let id = RelationId::new(family, (1, n)).side(kind).mutated(mutation);
            verify_ratio(m, id, scope, spec)
        }
        other => panic!("{} is not a toroidal boundary family", other.name()),
    }
}

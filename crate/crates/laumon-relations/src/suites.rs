//! Whole suites: every relation family on every node pair of a module, the
//! tangent-weight cross-check, and the deliberately broken controls.

use laumon_action::oracle::{bott_coefficient, tangent_character_correspondence, tangent_character_space};
use laumon_action::toroidal::{e_mode_coeff_affine, f_mode_coeff_affine};
use laumon_action::{ActionError, AffineAction, FiniteAction, LoopModule, PsiSign, XKind};
use laumon_patterns::{affine_patterns_up_to, AffinePattern, Step};
use rayon::prelude::*;

use crate::families::{
    verify_commutator, verify_psi_psi, verify_psi_x, verify_serre, verify_toroidal_boundary, verify_xx_adjacent,
    verify_xx_same,
};
use crate::report::{Counterexample, Family, ModuleKind, Mutation, RelationId, Scope, Strategy, VerificationReport};

const KINDS: [XKind; 2] = [XKind::E, XKind::F];
const SIGNS: [PsiSign; 2] = [PsiSign::Plus, PsiSign::Minus];

/// Relations (with the module's Cartan matrix) on all node pairs for which
/// `plain` holds; the other pairs are left to dedicated checks.
fn relation_families<M: LoopModule>(m: &M, scope: Scope, plain: impl Fn(i64, i64) -> bool) -> Vec<VerificationReport> {
    let nodes = m.nodes();
    let mut out = Vec::new();
    for &k in &nodes {
        for &l in nodes.iter().filter(|&&l| l >= k) {
            for s in SIGNS {
                for t in SIGNS {
                    out.push(verify_psi_psi(m, k, l, (s, t), scope));
                }
            }
        }
    }
    for &k in &nodes {
        for &l in &nodes {
            out.push(verify_commutator(m, k, l, scope));
            if !plain(k, l) {
                continue;
            }
            for kind in KINDS {
                out.push(verify_psi_x(m, k, l, kind, scope));
            }
        }
    }
    for &k in &nodes {
        for kind in KINDS {
            out.push(verify_xx_same(m, k, kind, scope, None));
        }
        for &l in nodes.iter().filter(|&&l| l > k && plain(k, l)) {
            for kind in KINDS {
                out.push(verify_xx_adjacent(m, k, l, kind, scope, None));
            }
        }
        for &l in nodes.iter().filter(|&&l| l != k && plain(k, l) && m.cartan(k, l) == -1) {
            for kind in KINDS {
                out.push(verify_serre(m, k, l, kind, scope, None));
            }
        }
    }
    out
}

/// The loop algebra relations on the finite fixed-point module.
pub fn loop_suite(
    n: usize,
    max_total: u32,
    window: i32,
    strategy: Strategy,
) -> Result<Vec<VerificationReport>, ActionError> {
    let m = FiniteAction::new(n)?;
    let scope = Scope {
        module: ModuleKind::Finite,
        n,
        max_total,
        window,
        strategy,
    };
    Ok(relation_families(&m, scope, |_, _| true))
}

/// The toroidal relations on the affine module: the loop relations away
/// from the pair `(n, 1)` and the boundary relations through the hat shift.
pub fn toroidal_suite(
    n: usize,
    max_total: u32,
    window: i32,
    strategy: Strategy,
) -> Result<Vec<VerificationReport>, ActionError> {
    let m = AffineAction::new(n)?;
    let scope = Scope {
        module: ModuleKind::Toroidal,
        n,
        max_total,
        window,
        strategy,
    };
    let last = n as i64;
    let boundary = |k: i64, l: i64| (k.min(l), k.max(l)) == (1, last);
    let mut out = relation_families(&m, scope, |k, l| !boundary(k, l));
    for family in [
        Family::TorXxBoundary,
        Family::TorPsixBoundaryA,
        Family::TorPsixBoundaryB,
    ] {
        for kind in KINDS {
            out.push(verify_toroidal_boundary(&m, family, kind, scope, None));
        }
    }
    Ok(out)
}

fn adds(p: &AffinePattern) -> Vec<(i64, i64, AffinePattern)> {
    (1..=p.n() as i64)
        .flat_map(|i| p.neighbors(i, Step::Add).into_iter().map(move |(j, q)| (i, j, q)))
        .collect()
}

/// Localization on the correspondences against the closed affine
/// formulas, for every move out of a pattern with at most `max_total`
/// boxes and modes in the window, plus the tangent dimensions.
pub fn oracle_suite(n: usize, max_total: u32, window: i32) -> Result<Vec<VerificationReport>, ActionError> {
    AffineAction::new(n)?;
    let scope = Scope {
        module: ModuleKind::Toroidal,
        n,
        max_total,
        window,
        strategy: Strategy::Symbolic,
    };
    let sources = affine_patterns_up_to(n, max_total)?;
    let mut out = Vec::new();
    for kind in KINDS {
        let outcomes = sources
            .par_iter()
            .map(|p| {
                let moves = adds(p);
                let mut count = 0;
                for (i, j, q) in &moves {
                    for r in -window..=window {
                        count += 1;
                        let (closed, bott) = match kind {
                            XKind::F => (f_mode_coeff_affine(p, *i, *j, r), bott_coefficient(kind, p, *i, *j, r)),
                            XKind::E => (e_mode_coeff_affine(q, *i, *j, r), bott_coefficient(kind, q, *i, *j, r)),
                        };
                        let residual = match (closed, bott) {
                            (Ok(a), Ok(b)) if a == b => continue,
                            (Ok(a), Ok(b)) => (a - b).to_string(),
                            (a, b) => format!("{:?} / {:?}", a.err(), b.err()),
                        };
                        let (src, tgt) = match kind {
                            XKind::F => (p, q),
                            XKind::E => (q, p),
                        };
                        return (
                            count,
                            Some(Counterexample {
                                source: src.to_string(),
                                target: tgt.to_string(),
                                instance: format!("{kind}_{{{i},{r}}} row {j}"),
                                residual,
                            }),
                        );
                    }
                }
                (count, None)
            })
            .collect();
        let id = RelationId::new(Family::BottLocalization, (1, n as i64)).side(kind);
        out.push(VerificationReport::from_outcomes(
            id,
            scope,
            (2 * window + 1) as usize,
            outcomes,
        ));
    }
    let outcomes = sources
        .par_iter()
        .map(|p| {
            let size = 2 * p.size() as usize;
            let mut dims = vec![("space".to_string(), tangent_character_space(p).map(|w| w.len()), size)];
            for (i, j, _) in adds(p) {
                let found = tangent_character_correspondence(p, i, j).map(|w| w.len());
                dims.push((format!("correspondence ({i},{j})"), found, size + 1));
            }
            let count = dims.len();
            let fail = dims.into_iter().find_map(|(label, found, want)| {
                (found.as_ref().ok() != Some(&want)).then(|| Counterexample {
                    source: p.to_string(),
                    target: p.to_string(),
                    instance: label,
                    residual: format!("{found:?} weights, expected {want}"),
                })
            });
            (count, fail)
        })
        .collect();
    out.push(VerificationReport::from_outcomes(
        RelationId::new(Family::BottLocalization, (0, 0)),
        scope,
        1,
        outcomes,
    ));
    Ok(out)
}

/// Broken variants of the relations; every one of them must fail.
pub fn mutation_controls(strategy: Strategy) -> Result<Vec<VerificationReport>, ActionError> {
    let scope = |module, n, max_total, window| Scope {
        module,
        n,
        max_total,
        window,
        strategy,
    };
    let two = FiniteAction::new(2)?;
    let three = FiniteAction::new(3)?;
    let affine = AffineAction::new(3)?;
    let fin = |n, d, r| scope(ModuleKind::Finite, n, d, r);
    let tor = scope(ModuleKind::Toroidal, 3, 2, 1);
    Ok(vec![
        verify_xx_same(&two, 1, XKind::F, fin(2, 3, 2), Some(Mutation::HalfPower)),
        verify_xx_adjacent(&three, 1, 2, XKind::F, fin(3, 2, 1), Some(Mutation::DoublePower)),
        verify_serre(&three, 1, 2, XKind::F, fin(3, 2, 1), Some(Mutation::ClassicalSerre)),
        verify_toroidal_boundary(&affine, Family::TorXxBoundary, XKind::F, tor, Some(Mutation::Unshifted)),
        verify_toroidal_boundary(
            &affine,
            Family::TorPsixBoundaryA,
            XKind::F,
            tor,
            Some(Mutation::Unshifted),
        ),
    ])
}

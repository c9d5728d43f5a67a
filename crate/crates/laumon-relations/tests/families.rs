use laumon_action::{AffineAction, FiniteAction, PsiSign, XKind};
use laumon_relations::families::{
    verify_commutator, verify_psi_psi, verify_psi_x, verify_serre, verify_toroidal_boundary, verify_xx_adjacent,
    verify_xx_same,
};
use laumon_relations::{Family, ModuleKind, Mutation, Scope, Strategy, VerificationReport};

fn finite(n: usize, max_total: u32, window: i32, strategy: Strategy) -> Scope {
    Scope {
        module: ModuleKind::Finite,
        n,
        max_total,
        window,
        strategy,
    }
}

fn toroidal(max_total: u32, window: i32, strategy: Strategy) -> Scope {
    Scope {
        module: ModuleKind::Toroidal,
        n: 3,
        max_total,
        window,
        strategy,
    }
}

fn passes(r: VerificationReport) {
    assert!(r.passed(), "{r}");
    assert!(r.entries_checked > 0, "{r}");
}

fn fails(r: VerificationReport) -> VerificationReport {
    assert!(!r.passed(), "{r}");
    assert!(r.counterexample.is_some());
    r
}

#[test]
fn same_node_relation() {
    let m = FiniteAction::new(2).unwrap();
    passes(verify_xx_same(
        &m,
        1,
        XKind::F,
        finite(2, 3, 2, Strategy::Symbolic),
        None,
    ));
    let m = FiniteAction::new(3).unwrap();
    passes(verify_xx_same(
        &m,
        2,
        XKind::E,
        finite(3, 2, 1, Strategy::random(11)),
        None,
    ));
}

#[test]
fn half_power_breaks_the_same_node_relation() {
    let m = FiniteAction::new(2).unwrap();
    let r = fails(verify_xx_same(
        &m,
        1,
        XKind::F,
        finite(2, 3, 2, Strategy::Symbolic),
        Some(Mutation::HalfPower),
    ));
    let c = r.counterexample.unwrap();
    assert_eq!(c.source, "[0]");
    assert_eq!(c.target, "[2]");
}

#[test]
fn adjacent_and_distant_nodes() {
    let m = FiniteAction::new(3).unwrap();
    passes(verify_xx_adjacent(
        &m,
        1,
        2,
        XKind::F,
        finite(3, 2, 1, Strategy::Symbolic),
        None,
    ));
    let m = FiniteAction::new(4).unwrap();
    passes(verify_xx_adjacent(
        &m,
        1,
        3,
        XKind::E,
        finite(4, 2, 1, Strategy::Symbolic),
        None,
    ));
    let m = FiniteAction::new(3).unwrap();
    fails(verify_xx_adjacent(
        &m,
        1,
        2,
        XKind::F,
        finite(3, 2, 1, Strategy::Symbolic),
        Some(Mutation::DoublePower),
    ));
}

#[test]
fn commutators() {
    let m = FiniteAction::new(3).unwrap();
    passes(verify_commutator(&m, 1, 2, finite(3, 2, 1, Strategy::Symbolic)));
    passes(verify_commutator(&m, 2, 2, finite(3, 2, 1, Strategy::random(3))));
    let m = FiniteAction::new(2).unwrap();
    passes(verify_commutator(&m, 1, 1, finite(2, 2, 3, Strategy::Symbolic)));
}

#[test]
fn cartan_currents() {
    let m = FiniteAction::new(3).unwrap();
    for (k, l) in [(1, 1), (1, 2), (2, 1)] {
        for kind in [XKind::E, XKind::F] {
            passes(verify_psi_x(&m, k, l, kind, finite(3, 2, 0, Strategy::Symbolic)));
        }
    }
    let m = FiniteAction::new(4).unwrap();
    passes(verify_psi_x(&m, 1, 3, XKind::F, finite(4, 2, 0, Strategy::random(5))));
    for signs in [(PsiSign::Plus, PsiSign::Minus), (PsiSign::Minus, PsiSign::Minus)] {
        passes(verify_psi_psi(&m, 1, 3, signs, finite(4, 2, 2, Strategy::Symbolic)));
    }
}

#[test]
fn serre_relations() {
    let m = FiniteAction::new(3).unwrap();
    passes(verify_serre(
        &m,
        1,
        2,
        XKind::F,
        finite(3, 3, 1, Strategy::Symbolic),
        None,
    ));
    passes(verify_serre(
        &m,
        2,
        1,
        XKind::E,
        finite(3, 3, 1, Strategy::random(2)),
        None,
    ));
    fails(verify_serre(
        &m,
        1,
        2,
        XKind::F,
        finite(3, 2, 1, Strategy::Symbolic),
        Some(Mutation::ClassicalSerre),
    ));
}

#[test]
fn toroidal_boundary() {
    let m = AffineAction::new(3).unwrap();
    for kind in [XKind::E, XKind::F] {
        for family in [
            Family::TorXxBoundary,
            Family::TorPsixBoundaryA,
            Family::TorPsixBoundaryB,
        ] {
            passes(verify_toroidal_boundary(
                &m,
                family,
                kind,
                toroidal(2, 1, Strategy::Symbolic),
                None,
            ));
        }
    }
    for family in [
        Family::TorXxBoundary,
        Family::TorPsixBoundaryA,
        Family::TorPsixBoundaryB,
    ] {
        fails(verify_toroidal_boundary(
            &m,
            family,
            XKind::F,
            toroidal(2, 1, Strategy::Symbolic),
            Some(Mutation::Unshifted),
        ));
    }
}

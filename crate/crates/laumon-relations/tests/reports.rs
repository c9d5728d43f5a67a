use laumon_action::{FiniteAction, LoopModule, PsiSign, XKind};
use laumon_patterns::Step;
use laumon_relations::families::{verify_psi_psi, verify_psi_x, verify_xx_same};
use laumon_relations::{loop_suite, ModuleKind, Mutation, Scope, Strategy};

fn scope(n: usize, max_total: u32, window: i32, strategy: Strategy) -> Scope {
    Scope {
        module: ModuleKind::Finite,
        n,
        max_total,
        window,
        strategy,
    }
}

#[test]
fn same_seed_same_bytes() {
    let run = || {
        loop_suite(3, 2, 1, Strategy::random(42))
            .unwrap()
            .iter()
            .map(|r| r.to_json())
            .collect::<Vec<_>>()
            .join("\n")
    };
    assert_eq!(run(), run());
}

#[test]
fn json_shape() {
    let m = FiniteAction::new(2).unwrap();
    let r = verify_xx_same(
        &m,
        1,
        XKind::F,
        scope(2, 2, 1, Strategy::random(9)),
        Some(Mutation::HalfPower),
    );
    let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(v["status"], "fail");
    assert_eq!(v["relation"]["family"], "xx_same");
    assert_eq!(v["scope"]["strategy"]["kind"], "random");
    assert_eq!(v["scope"]["strategy"]["seed"], 9);
    assert!(v["entries_checked"].as_u64().unwrap() > 0);
    assert!(v["degree_bound"].as_u64().unwrap() > 0);
    let residual = v["counterexample"]["residual"].as_str().unwrap();
    assert!(!residual.starts_with("0 "));
}

#[test]
fn ratio_checks_touch_every_transition() {
    let m = FiniteAction::new(3).unwrap();
    let basis = m.basis(3);
    for (kind, step) in [(XKind::F, Step::Add), (XKind::E, Step::Remove)] {
        let expected: usize = basis.iter().map(|p| p.neighbors(2, step).len()).sum();
        let r = verify_psi_x(&m, 2, 1, kind, scope(3, 3, 0, Strategy::Symbolic));
        assert_eq!(r.entries_checked, expected);
    }
}

#[test]
fn diagonal_words_touch_every_source_once() {
    let m = FiniteAction::new(3).unwrap();
    let sources = m.basis(3).len();
    let r = verify_psi_psi(
        &m,
        1,
        2,
        (PsiSign::Plus, PsiSign::Plus),
        scope(3, 3, 2, Strategy::Symbolic),
    );
    assert!(r.passed());
    assert_eq!(r.instances, 9);
    assert_eq!(r.entries_checked, 9 * sources);
}

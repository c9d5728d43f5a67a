use laumon_action::finite::{
    chi_coeff, e_mode_coeff, f_mode_coeff, faktor, psi_eigenvalue, psi_from_b_series, zero_mode_e, zero_mode_f,
};
use laumon_action::{FiniteAction, LoopModule, PsiSign, XKind};
use laumon_algebra::{LaurentExpr, Var};
use laumon_patterns::{finite_patterns_up_to, FinitePattern, Step};
use proptest::prelude::*;

fn adds(p: &FinitePattern) -> Vec<(usize, usize, FinitePattern)> {
    (1..p.n())
        .flat_map(|i| p.neighbors(i, Step::Add).into_iter().map(move |(j, q)| (i, j, q)))
        .collect()
}

#[test]
fn zero_modes_in_closed_form() {
    for n in 2..=4 {
        for p in finite_patterns_up_to(n, 2).unwrap() {
            for (i, j, q) in adds(&p) {
                assert_eq!(f_mode_coeff(&p, i, j, 0).unwrap(), zero_mode_f(&p, i, j).unwrap());
                assert_eq!(e_mode_coeff(&q, i, j, 0).unwrap(), zero_mode_e(&q, i, j).unwrap());
            }
        }
    }
}

#[test]
fn psi_from_b_series_and_cutoff_rows() {
    for n in 2..=4 {
        for p in finite_patterns_up_to(n, 2).unwrap() {
            for i in 1..n {
                let psi = psi_eigenvalue(&p, i).unwrap();
                assert_eq!(psi_from_b_series(&p, i).unwrap(), psi);
                for m in 0..i {
                    assert_eq!(faktor(&p, i, m).unwrap(), psi, "{p} i={i} m={m}");
                }
            }
        }
    }
}

/// Diagonal of `(v - v^{-1})[e_{i,a}, f_{i,b}]` from the transition lists.
fn commutator_diagonal(act: &FiniteAction, p: &FinitePattern, i: i64, a: i32, b: i32) -> LaurentExpr {
    let mut acc = Vec::new();
    for tf in act.transitions(p, XKind::F, i).iter() {
        for te in act.transitions(&tf.target, XKind::E, i).iter() {
            if &te.target == p {
                acc.push(tf.at_mode(b) * te.at_mode(a));
            }
        }
    }
    for te in act.transitions(p, XKind::E, i).iter() {
        for tf in act.transitions(&te.target, XKind::F, i).iter() {
            if &tf.target == p {
                acc.push(-(te.at_mode(a) * tf.at_mode(b)));
            }
        }
    }
    let vv = LaurentExpr::var(Var::V) - LaurentExpr::var(Var::V).pow(-1);
    LaurentExpr::sum_of(&acc) * vv
}

#[test]
fn chi_is_the_commutator_diagonal() {
    let act = FiniteAction::new(3).unwrap();
    for p in finite_patterns_up_to(3, 2).unwrap() {
        for i in 1..3 {
            for (a, b) in [(0, 0), (1, 0), (0, -2), (2, 1)] {
                let lhs = commutator_diagonal(&act, &p, i as i64, a, b);
                assert_eq!(chi_coeff(&p, i, a + b).unwrap(), lhs, "{p} i={i} a={a} b={b}");
                let m = a + b;
                let psi = act.psi_mode(&p, i as i64, PsiSign::Plus, m) - act.psi_mode(&p, i as i64, PsiSign::Minus, m);
                assert_eq!(lhs, psi, "{p} i={i} a={a} b={b}");
            }
        }
    }
}

fn finite_pattern() -> impl Strategy<Value = FinitePattern> {
    (2usize..=4, 0u32..=3).prop_flat_map(|(n, total)| {
        prop::sample::select(
            finite_patterns_up_to(n, total)
                .unwrap()
                .into_iter()
                .filter(|p| p.total() == total)
                .collect::<Vec<_>>(),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn spectral_recursion(p in finite_pattern(), r in -3i32..3) {
        for (i, j, q) in adds(&p) {
            let beta_f = LaurentExpr::monomial(p.s_weight(i, j).unwrap() * laumon_algebra::Monomial::pow(Var::V, i as i32));
            prop_assert_eq!(f_mode_coeff(&p, i, j, r + 1).unwrap(), f_mode_coeff(&p, i, j, r).unwrap() * beta_f);
            let beta_e = LaurentExpr::monomial(q.s_weight(i, j).unwrap() * laumon_algebra::Monomial::pow(Var::V, i as i32 + 2));
            prop_assert_eq!(e_mode_coeff(&q, i, j, r + 1).unwrap(), e_mode_coeff(&q, i, j, r).unwrap() * beta_e);
        }
    }

    #[test]
    fn psi_zero_modes_are_inverse(p in finite_pattern()) {
        let act = FiniteAction::new(p.n()).unwrap();
        for i in 1..p.n() as i64 {
            let plus = act.psi_mode(&p, i, PsiSign::Plus, 0);
            let minus = act.psi_mode(&p, i, PsiSign::Minus, 0);
            prop_assert!((plus * minus).is_one());
            prop_assert!(act.psi_mode(&p, i, PsiSign::Minus, 2).is_zero());
        }
    }
}

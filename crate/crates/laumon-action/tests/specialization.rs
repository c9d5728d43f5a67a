use laumon_action::oracle::c_norm;
use laumon_action::specialization::{
    build_vmu_block, closure_up_to, in_d_mu, in_d_mu_brute, renorm_coeff, renorm_coeff_generic, LevelWeight,
    Specializer,
};
use laumon_action::toroidal::{e_mode_coeff_affine, f_mode_coeff_affine, tt};
use laumon_action::XKind;
use laumon_algebra::{LaurentExpr, Monomial, Var};
use laumon_patterns::{affine_patterns_up_to, AffinePattern, Step};
use proptest::prelude::*;

fn adds(p: &AffinePattern) -> Vec<(i64, i64, AffinePattern)> {
    (1..=p.n() as i64)
        .flat_map(|i| p.neighbors(i, Step::Add).into_iter().map(move |(j, q)| (i, j, q)))
        .collect()
}

fn dominant(n: usize, level: i64) -> impl Strategy<Value = LevelWeight> {
    (prop::collection::vec(0..=level, n - 1), -3i64..=3).prop_map(move |(steps, base)| {
        // Partial sums of the steps, capped so the whole spread is at most K.
        let mut mu = vec![base; n];
        let mut acc = 0;
        for k in (0..n - 1).rev() {
            acc = (acc + steps[k]).min(level);
            mu[k] = base + acc;
        }
        LevelWeight::new(n, level, mu).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn fast_and_brute_membership_agree(w in (1i64..=2).prop_flat_map(|k| dominant(3, k))) {
        for p in affine_patterns_up_to(3, 3).unwrap() {
            prop_assert_eq!(in_d_mu(&p, &w), in_d_mu_brute(&p, &w, 9), "{}", p);
        }
    }

    #[test]
    fn extension_is_periodic(w in dominant(4, 3), i in -100i64..100) {
        let mt = w.extend();
        prop_assert_eq!(mt.at(i + 4), mt.at(i) - 3);
        prop_assert!(mt.at(i + 1) <= mt.at(i));
    }
}

#[test]
fn empty_pattern_is_always_in() {
    for k in 1..=3 {
        let w = LevelWeight::zero(3, k).unwrap();
        assert!(in_d_mu(&AffinePattern::empty(3), &w));
    }
}

#[test]
fn a_pattern_failing_at_the_first_step() {
    let w = LevelWeight::zero(3, 1).unwrap();
    let found = affine_patterns_up_to(3, 3)
        .unwrap()
        .into_iter()
        .find(|p| {
            let mt = w.extend();
            (1..=3).any(|j| (j..j + 3).any(|i| p.d(i, j) as i64 - mt.at(j) > p.d(i + 1, j + 1) as i64 - mt.at(j + 1)))
        })
        .expect("some small pattern fails at l = 1");
    assert!(!in_d_mu(&found, &w));
    assert!(!in_d_mu_brute(&found, &w, 9));
}

#[test]
fn renormalized_entries_are_conjugated_plain_entries() {
    for p in affine_patterns_up_to(3, 1).unwrap() {
        for (i, j, q) in adds(&p) {
            let cp = c_norm(&p).unwrap();
            let cq = c_norm(&q).unwrap();
            for r in -1..=1 {
                let f = f_mode_coeff_affine(&p, i, j, r).unwrap();
                let renorm = renorm_coeff_generic(XKind::F, &p, i, j, r).unwrap();
                assert_eq!(renorm, f * cq.checked_div(&cp).unwrap(), "f {p} ({i},{j})");
                let e = e_mode_coeff_affine(&q, i, j, r).unwrap();
                let renorm = renorm_coeff_generic(XKind::E, &q, i, j, r).unwrap();
                assert_eq!(renorm, e * cp.checked_div(&cq).unwrap(), "e {q} ({i},{j})");
            }
        }
    }
}

/// `e⟨d',d⟩ = -f[d,d'] t_i t_{i+1}^{-1} v^{d_{i+1}-2d_i+d_{i-1}+2-2i}`, up
/// to the `v u^{-2}` normalization of `e` and the weight `(p_{ij} v)^{-1}` of
/// the added box, `d` being the smaller pattern.
#[test]
fn renormalized_e_is_a_rescaled_f() {
    for p in affine_patterns_up_to(3, 1).unwrap() {
        for (i, j, q) in adds(&p) {
            let d = |k: i64| p.degree(k) as i64;
            let scale = tt(3, i)
                * tt(3, i + 1).inv()
                * Monomial::pow(Var::V, (d(i + 1) - 2 * d(i) + d(i - 1) + 2 - 2 * i) as i32)
                * Monomial::pow(Var::V, 1)
                * Monomial::pow(Var::U, -2)
                * (p.p_weight(i, j).unwrap() * Monomial::pow(Var::V, 1)).inv();
            for r in -1..=1 {
                let e = renorm_coeff_generic(XKind::E, &q, i, j, r).unwrap();
                let f = f_mode_coeff_affine(&p, i, j, r).unwrap();
                assert_eq!(e, -f * LaurentExpr::monomial(scale), "{p} ({i},{j}) r={r}");
            }
        }
    }
}

#[test]
fn closure_at_levels_one_and_two() {
    for k in [1, 2] {
        let w = LevelWeight::zero(3, k).unwrap();
        let (basis, report) = closure_up_to(&Specializer::new(&w), 2).unwrap();
        assert!(basis > 1);
        assert!(report.crossing > 0, "level {k} has no boundary moves to test");
        assert!(report.holds(), "level {k}: {report:?}");
    }
    let w = LevelWeight::new(3, 2, vec![2, 1, 0]).unwrap();
    assert!(closure_up_to(&Specializer::new(&w), 2).unwrap().1.holds());
}

#[test]
fn wrong_specialization_breaks_closure() {
    let w = LevelWeight::zero(3, 1).unwrap();
    let wrong = Specializer::with_u_exponent(&w, -(1 + 3) + 1);
    let (_, report) = closure_up_to(&wrong, 2).unwrap();
    assert!(!report.holds());
}

#[test]
fn block_entries_are_finite_and_spectral() {
    let w = LevelWeight::zero(3, 1).unwrap();
    let block = laumon_patterns::degree_vectors(3, 2)
        .iter()
        .map(|deg| build_vmu_block(&w, deg, 1).unwrap())
        .find(|b| !b.basis.is_empty())
        .expect("some degree-2 block is nonempty");
    assert!(!block.entries.is_empty());
    assert!(block.report.holds());
    for p in &block.basis {
        for i in 1..=3 {
            for (j, q) in p.neighbors(i, Step::Remove) {
                if in_d_mu(&q, &w) {
                    let r0 = renorm_coeff(XKind::E, p, i, j, 0, &w).unwrap();
                    let r1 = renorm_coeff(XKind::E, p, i, j, 1, &w).unwrap();
                    let beta =
                        Specializer::new(&w).monomial(q.p_weight(i, j).unwrap() * Monomial::pow(Var::V, i as i32));
                    assert_eq!(r1.into_inner(), r0.into_inner() * LaurentExpr::monomial(beta));
                }
            }
        }
    }
}

//! One line per acceptance criterion, then a nonzero exit if any failed.

use std::process::ExitCode;

use laumon_action::finite::{faktor, psi_eigenvalue, psi_from_b_series};
use laumon_action::specialization::{closure_up_to, LevelWeight, Specializer};
use laumon_action::toroidal::{e_mode_coeff_affine, f_mode_coeff_affine, faktory, hat_unit, psi_eigenvalue_affine};
use laumon_algebra::LaurentExpr;
use laumon_patterns::{affine_patterns_up_to, finite_patterns_up_to, FinitePattern, Step};
use laumon_relations::gl::gl_suite;
use laumon_relations::{loop_suite, mutation_controls, oracle_suite, toroidal_suite, Strategy, VerificationReport};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn all_pass(reports: &[VerificationReport]) -> Outcome {
    if reports.is_empty() {
        return Err("no reports".into());
    }
    if let Some(r) = reports.iter().find(|r| !r.passed()) {
        return Err(r.to_string());
    }
    let entries: usize = reports.iter().map(|r| r.entries_checked).sum();
    let vacuous = reports.iter().filter(|r| r.entries_checked == 0).count();
    if entries == 0 {
        return Err("nothing was checked".into());
    }
    Ok(format!(
        "{} reports, {entries} entries, {vacuous} vacuous",
        reports.len()
    ))
}

fn err<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

fn finite_suite() -> Outcome {
    let mut reports = Vec::new();
    for n in [2, 3] {
        for strategy in [Strategy::Symbolic, Strategy::random(2024)] {
            reports.extend(loop_suite(n, 3, 2, strategy).map_err(err)?);
        }
    }
    all_pass(&reports)
}

fn gl_zero_modes() -> Outcome {
    let reports: Vec<_> = (2..=4).flat_map(|n| gl_suite(n, 3)).collect();
    all_pass(&reports)
}

fn ex(s: &str) -> LaurentExpr {
    s.parse().expect("well-formed expression")
}

fn psi_two_routes() -> Outcome {
    let mut checked = 0;
    for n in 2..=3 {
        for p in finite_patterns_up_to(n, 3).map_err(err)? {
            for i in 1..n {
                let a = psi_eigenvalue(&p, i).map_err(err)?;
                let b = psi_from_b_series(&p, i).map_err(err)?;
                if a != b {
                    return Err(format!("{p} i={i}: {a} vs {b}"));
                }
                checked += 1;
            }
        }
        let vac = FinitePattern::zero(n);
        for i in 1..n {
            let (k, l) = (i + 1, i);
            let num = ex(&format!("1 - t{k}^2*v^{}*z^-1", i + 2));
            let den = ex(&format!("1 - t{l}^2*v^{l}*z^-1"));
            let want = ex(&format!("t{k}^-1*t{l}*v^-1")) * num.checked_div(&den).map_err(err)?;
            let got = psi_eigenvalue(&vac, i).map_err(err)?;
            if got != want {
                return Err(format!("vacuum n={n} i={i}: {got} vs {want}"));
            }
        }
    }
    Ok(format!("{checked} eigenvalues"))
}

fn cutoff_rows() -> Outcome {
    let mut checked = 0;
    for n in 2..=3 {
        for p in finite_patterns_up_to(n, 2).map_err(err)? {
            for i in 1..n {
                let psi = psi_eigenvalue(&p, i).map_err(err)?;
                for m in 0..i {
                    if faktor(&p, i, m).map_err(err)? != psi {
                        return Err(format!("finite {p} i={i} m={m}"));
                    }
                    checked += 1;
                }
            }
        }
    }
    for p in affine_patterns_up_to(3, 2).map_err(err)? {
        for i in 1..=3 {
            let psi = psi_eigenvalue_affine(&p, i).map_err(err)?;
            for m in (i - p.depth() - 4..i).rev() {
                if faktory(&p, i, m).map_err(err)? != psi {
                    return Err(format!("affine {p} i={i} m={m}"));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} cutoff rows"))
}

fn periodic_shift() -> Result<usize, String> {
    let n = 3;
    let unit = LaurentExpr::monomial(hat_unit(n));
    let mut checked = 0;
    for p in affine_patterns_up_to(n, 2).map_err(err)? {
        for i in 1..=n as i64 {
            for (j, q) in p.neighbors(i, Step::Add) {
                for r in -2..=2 {
                    let scale = unit.pow(-r);
                    let f = f_mode_coeff_affine(&p, i, j, r).map_err(err)?;
                    let e = e_mode_coeff_affine(&q, i, j, r).map_err(err)?;
                    let f_shift = f_mode_coeff_affine(&p, i - 3, j - 3, r).map_err(err)?;
                    let e_shift = e_mode_coeff_affine(&q, i - 3, j - 3, r).map_err(err)?;
                    if f_shift != &f * &scale || e_shift != &e * &scale {
                        return Err(format!("{p} ({i},{j}) r={r}"));
                    }
                    checked += 2;
                }
            }
        }
    }
    Ok(checked)
}

fn toroidal() -> Outcome {
    let summary = all_pass(&toroidal_suite(3, 2, 2, Strategy::Symbolic).map_err(err)?)?;
    // Words with three raising letters need three boxes to act on.
    let deeper = toroidal_suite(3, 3, 1, Strategy::Symbolic).map_err(err)?;
    let deeper = all_pass(&deeper).map_err(|e| format!("at total degree 3: {e}"))?;
    let shifted = periodic_shift()?;
    Ok(format!(
        "{summary}; at total degree 3 {deeper}; {shifted} shifted entries"
    ))
}

fn oracle() -> Outcome {
    all_pass(&oracle_suite(3, 2, 1).map_err(err)?)
}

fn specialization() -> Outcome {
    let weights: [(i64, &[i64]); 7] = [
        (1, &[0, 0, 0]),
        (1, &[1, 0, 0]),
        (1, &[1, 1, 0]),
        (2, &[0, 0, 0]),
        (2, &[1, 0, 0]),
        (2, &[1, 1, 0]),
        (2, &[2, 1, 0]),
    ];
    let mut crossing = 0;
    for (k, mu) in weights {
        let w = LevelWeight::new(3, k, mu.to_vec()).map_err(err)?;
        let (_, report) = closure_up_to(&Specializer::new(&w), 2).map_err(err)?;
        if !report.holds() {
            return Err(format!("K={k} mu={mu:?}: {report:?}"));
        }
        crossing += report.crossing;
        let wrong = Specializer::with_u_exponent(&w, -(k + 3) + 1);
        let (_, report) = closure_up_to(&wrong, 2).map_err(err)?;
        if report.holds() {
            return Err(format!("wrong exponent still closes at K={k} mu={mu:?}"));
        }
    }
    if crossing == 0 {
        return Err("no boundary moves were tested".into());
    }
    Ok(format!("{} weights, {crossing} boundary moves", weights.len()))
}

fn controls() -> Outcome {
    let reports = mutation_controls(Strategy::Symbolic).map_err(err)?;
    if reports.is_empty() {
        return Err("no controls".into());
    }
    if let Some(r) = reports.iter().find(|r| r.passed() || r.counterexample.is_none()) {
        return Err(format!("control did not fail: {r}"));
    }
    Ok(format!("{} controls failed", reports.len()))
}

fn full_run(seed: u64) -> Result<String, String> {
    let mut reports = Vec::new();
    for n in [2, 3] {
        reports.extend(loop_suite(n, 3, 2, Strategy::random(seed)).map_err(err)?);
    }
    reports.extend(toroidal_suite(3, 2, 1, Strategy::random(seed)).map_err(err)?);
    reports.extend(mutation_controls(Strategy::random(seed)).map_err(err)?);
    serde_json::to_string_pretty(&reports).map_err(err)
}

fn determinism() -> Outcome {
    let (a, b) = (full_run(41)?, full_run(41)?);
    if a != b {
        return Err("reports differ between runs".into());
    }
    Ok(format!("{} identical bytes", a.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("finite loop relations", finite_suite),
        ("gl_n zero modes", gl_zero_modes),
        ("psi by two routes", psi_two_routes),
        ("cutoff row independence", cutoff_rows),
        ("toroidal relations", toroidal),
        ("localization oracle", oracle),
        ("specialization closure", specialization),
        ("mutation controls", controls),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(note) => println!("PASS {} {name}: {note}", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why}", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

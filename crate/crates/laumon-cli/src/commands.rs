use std::fs;
use std::io::{self, Write};
use std::path::Path;

use anyhow::{bail, Context, Result};
use laumon_action::finite::{ModeKind, ModeSpec};
use laumon_action::specialization::{closure_up_to, in_d_mu, LevelWeight, Specializer};
use laumon_action::toroidal::{AffineModeKind, AffineModeSpec};
use laumon_action::{AffineAction, FiniteAction, GradedVector, Pattern};
use laumon_patterns::{degree_vectors, enumerate_affine, enumerate_finite};
use laumon_relations::gl::gl_suite;
use laumon_relations::{loop_suite, mutation_controls, oracle_suite, toroidal_suite, VerificationReport};
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::{OpKind, Suite};

/// A closed pipe downstream is not an error.
fn say(line: &str) -> Result<()> {
    match writeln!(io::stdout().lock(), "{line}") {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn emit(out: Option<&Path>, value: &Value) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    match out {
        Some(path) => fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display())),
        None => say(&text),
    }
}

fn labels<P: Pattern>(ps: &[P]) -> Vec<String> {
    ps.iter().map(ToString::to_string).collect()
}

pub fn patterns(cfg: &RunConfig, affine: bool, d: Option<Vec<u32>>, total: Option<u32>) -> Result<bool> {
    let Some(n) = cfg.n else { bail!("missing -n") };
    let len = if affine { n } else { n.saturating_sub(1) };
    let degrees = match d {
        Some(d) => vec![d],
        None => degree_vectors(len, total.unwrap_or(0)),
    };
    let mut blocks = Vec::new();
    let mut count = 0;
    for deg in degrees {
        let listed = if affine {
            labels(&enumerate_affine(n, &deg)?)
        } else {
            labels(&enumerate_finite(n, &deg)?)
        };
        count += listed.len();
        blocks.push(json!({ "degrees": deg, "count": listed.len(), "patterns": listed }));
    }
    let module = if affine { "affine" } else { "finite" };
    emit(
        cfg.output.as_deref(),
        &json!({ "module": module, "n": n, "count": count, "blocks": blocks }),
    )?;
    Ok(true)
}

pub fn verify(cfg: &RunConfig, suite: Suite) -> Result<bool> {
    let n = cfg.n.unwrap_or(3);
    let window = cfg.window.unwrap_or(2);
    let affine = matches!(suite, Suite::Toroidal | Suite::Oracle);
    let max_total = cfg.max_total.unwrap_or(if affine { 2 } else { 3 });
    if window < 0 {
        bail!("the mode window must be nonnegative");
    }
    let strategy = cfg.strategy()?;
    let reports: Vec<VerificationReport> = match suite {
        Suite::Loop => loop_suite(n, max_total, window, strategy)?,
        Suite::Toroidal => toroidal_suite(n, max_total, window, strategy)?,
        Suite::Oracle => oracle_suite(n, max_total, window)?,
        Suite::Gl => {
            FiniteAction::new(n)?;
            gl_suite(n, max_total)
        }
        Suite::Controls => mutation_controls(strategy)?,
    };
    // Controls are expected to fail.
    let expected = suite != Suite::Controls;
    let good = reports.iter().filter(|r| r.passed() == expected).count();
    for r in &reports {
        say(&r.to_string())?;
    }
    let verb = if expected { "passed" } else { "failed as expected" };
    say(&format!("{good}/{} {verb}", reports.len()))?;
    if let Some(path) = &cfg.output {
        emit(Some(path), &serde_json::to_value(&reports)?)?;
    }
    Ok(good == reports.len())
}

#[derive(Serialize)]
struct Dimension {
    degrees: Vec<u32>,
    dimension: usize,
}

pub fn specialize(cfg: &RunConfig, u_exponent: Option<i64>) -> Result<bool> {
    let n = cfg.n.unwrap_or(3);
    let level = cfg.level.unwrap_or(1);
    let mu = cfg.mu.clone().unwrap_or_else(|| vec![0; n]);
    let max_total = cfg.max_total.unwrap_or(2);
    AffineAction::new(n)?;
    let w = LevelWeight::new(n, level, mu)?;
    let sp = match u_exponent {
        Some(e) => Specializer::with_u_exponent(&w, e),
        None => Specializer::new(&w),
    };
    let mut character = Vec::new();
    for total in 0..=max_total {
        for deg in degree_vectors(n, total) {
            let dimension = enumerate_affine(n, &deg)?.iter().filter(|p| in_d_mu(p, &w)).count();
            character.push(Dimension {
                degrees: deg,
                dimension,
            });
        }
    }
    let (basis, report) = closure_up_to(&sp, max_total)?;
    let holds = report.holds();
    emit(
        cfg.output.as_deref(),
        &json!({
            "n": n,
            "level": level,
            "mu": w.mu(),
            "u_exponent": u_exponent,
            "max_degree": max_total,
            "basis": basis,
            "character": character,
            "closure": { "holds": holds, "report": report },
        }),
    )?;
    Ok(holds)
}

pub struct MatrixSpec {
    pub affine: bool,
    pub n: usize,
    pub kind: OpKind,
    pub node: i64,
    pub mode: i32,
    pub from: Vec<u32>,
}

fn finite_kind(k: OpKind) -> Result<ModeKind> {
    Ok(match k {
        OpKind::E => ModeKind::E,
        OpKind::F => ModeKind::F,
        OpKind::PsiPlus => ModeKind::PsiPlus,
        OpKind::PsiMinus => ModeKind::PsiMinus,
        OpKind::T => ModeKind::TCartan,
        other => bail!("{other:?} acts only on the affine module"),
    })
}

fn affine_kind(k: OpKind) -> Result<AffineModeKind> {
    Ok(match k {
        OpKind::E => AffineModeKind::E,
        OpKind::F => AffineModeKind::F,
        OpKind::PsiPlus => AffineModeKind::PsiPlus,
        OpKind::PsiMinus => AffineModeKind::PsiMinus,
        OpKind::EHat0 => AffineModeKind::EHat0,
        OpKind::FHat0 => AffineModeKind::FHat0,
        OpKind::PsiHat0Plus => AffineModeKind::PsiHat0Plus,
        OpKind::PsiHat0Minus => AffineModeKind::PsiHat0Minus,
        OpKind::ChevalleyK => AffineModeKind::ChevalleyK,
        OpKind::ChevalleyE => AffineModeKind::ChevalleyE,
        OpKind::ChevalleyF => AffineModeKind::ChevalleyF,
        OpKind::T => bail!("t acts only on the finite module"),
    })
}

fn columns<P: Pattern>(
    sources: &[P],
    apply: impl Fn(&GradedVector<P>) -> Result<GradedVector<P>, laumon_action::ActionError>,
) -> Result<Vec<Value>> {
    let mut out = Vec::new();
    for p in sources {
        let image = apply(&GradedVector::basis(p.clone()))?;
        for (q, c) in image.iter() {
            out.push(json!({ "source": p.to_string(), "target": q.to_string(), "value": c.to_string() }));
        }
    }
    Ok(out)
}

pub fn matrix(spec: &MatrixSpec, out: Option<&Path>) -> Result<bool> {
    let (sources, entries) = if spec.affine {
        let act = AffineAction::new(spec.n)?;
        let op = AffineModeSpec::new(affine_kind(spec.kind)?, spec.node, spec.mode);
        let sources = enumerate_affine(spec.n, &spec.from)?;
        let entries = columns(&sources, |x| act.apply(op, x))?;
        (labels(&sources), entries)
    } else {
        let act = FiniteAction::new(spec.n)?;
        if spec.node < 1 {
            bail!("node {} is out of range", spec.node);
        }
        let op = ModeSpec::new(finite_kind(spec.kind)?, spec.node as usize, spec.mode);
        let sources = enumerate_finite(spec.n, &spec.from)?;
        let entries = columns(&sources, |x| act.apply(op, x))?;
        (labels(&sources), entries)
    };
    let kind = format!("{:?}", spec.kind);
    emit(
        out,
        &json!({
            "module": if spec.affine { "affine" } else { "finite" },
            "n": spec.n,
            "op": { "kind": kind, "node": spec.node, "mode": spec.mode },
            "source_degrees": spec.from,
            "sources": sources,
            "entries": entries,
        }),
    )?;
    Ok(true)
}

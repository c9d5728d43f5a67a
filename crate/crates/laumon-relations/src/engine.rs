//! Entrywise evaluation of relation instances on a fixed-point basis.
//!
//! For a source vector every word of a relation is expanded into paths
//! through the basis. A path contributes `base · ∏ β^mode`, where `base`
//! does not depend on the `x` modes, so the bases are computed once per
//! source and every mode instance reduces to a sum of polynomials over a
//! shared denominator (symbolic) or of rationals (random points).

use std::collections::BTreeMap;

use laumon_action::{LoopModule, Pattern};
use laumon_algebra::{LaurentExpr, Monomial, Point, Poly, Var};
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::report::{Counterexample, RelationId, Scope, Status, Strategy, VerificationReport};
use crate::word::{Instance, Letter, Skel};

struct Path<P> {
    target: P,
    base: LaurentExpr,
    /// Spectral parameter of each `x` letter, `1` at `ψ` letters.
    betas: Vec<Monomial>,
}

fn walk<M: LoopModule>(m: &M, p: &M::P, skel: &[Skel]) -> Vec<Path<M::P>> {
    let hat = || m.hat_unit().expect("hatted letters need a module with a hat shift");
    let mut cur = vec![Path {
        target: p.clone(),
        base: LaurentExpr::one(),
        betas: vec![Monomial::ONE; skel.len()],
    }];
    for (pos, s) in skel.iter().enumerate().rev() {
        let mut next = Vec::new();
        for path in cur {
            match *s {
                Skel::X { kind, node, hat: h } => {
                    for tr in m.transitions(&path.target, kind, node).iter() {
                        let mut betas = path.betas.clone();
                        betas[pos] = if h { tr.beta / hat() } else { tr.beta };
                        next.push(Path {
                            target: tr.target.clone(),
                            base: &path.base * &tr.coeff0,
                            betas,
                        });
                    }
                }
                Skel::Psi {
                    sign,
                    node,
                    hat: h,
                    mode,
                } => {
                    let mut value = m.psi_mode(&path.target, node, sign, mode);
                    if value.is_zero() {
                        continue;
                    }
                    if h {
                        value = value * LaurentExpr::monomial(hat().powi(-mode));
                    }
                    next.push(Path {
                        base: &path.base * &value,
                        ..path
                    });
                }
            }
        }
        cur = next;
    }
    cur
}

fn multiplier(word: &[Letter], betas: &[Monomial]) -> Monomial {
    word.iter().zip(betas).fold(Monomial::ONE, |acc, (l, b)| match l {
        Letter::X { mode, .. } => acc * b.powi(*mode),
        Letter::Psi { .. } => acc,
    })
}

/// All paths of every skeleton used by the instances, from one source.
struct Expansion<P> {
    skeletons: BTreeMap<Vec<Skel>, usize>,
    paths: Vec<Vec<Path<P>>>,
}

impl<P: Pattern> Expansion<P> {
    fn new<M: LoopModule<P = P>>(m: &M, p: &P, instances: &[Instance]) -> Self {
        let mut skeletons = BTreeMap::new();
        let mut paths = Vec::new();
        for inst in instances {
            for term in &inst.terms {
                let key: Vec<Skel> = term.word.iter().map(|l| l.skeleton()).collect();
                skeletons.entry(key).or_insert_with_key(|key| {
                    paths.push(walk(m, p, key));
                    paths.len() - 1
                });
            }
        }
        Expansion { skeletons, paths }
    }

    fn index(&self, word: &[Letter]) -> usize {
        let key: Vec<Skel> = word.iter().map(|l| l.skeleton()).collect();
        self.skeletons[&key]
    }

    fn targets(&self) -> Vec<P> {
        let mut all: Vec<P> = self.paths.iter().flatten().map(|p| p.target.clone()).collect();
        all.sort();
        all.dedup();
        all
    }
}

#[derive(Default)]
struct SourceOutcome {
    entries: usize,
    degree: u64,
    failure: Option<Counterexample>,
}

fn check_symbolic<P: Pattern>(p: &P, exp: &Expansion<P>, instances: &[Instance]) -> SourceOutcome {
    let targets = exp.targets();
    let tindex = |q: &P| targets.binary_search(q).expect("target collected");
    // Per target, the bases of all paths ending there over one denominator.
    let mut members: Vec<Vec<(usize, usize)>> = vec![Vec::new(); targets.len()];
    for (s, paths) in exp.paths.iter().enumerate() {
        for (k, path) in paths.iter().enumerate() {
            members[tindex(&path.target)].push((s, k));
        }
    }
    let mut numer: Vec<Vec<Poly>> = exp.paths.iter().map(|ps| vec![Poly::zero(); ps.len()]).collect();
    let mut denom = Vec::with_capacity(targets.len());
    for group in &members {
        let bases: Vec<LaurentExpr> = group.iter().map(|&(s, k)| exp.paths[s][k].base.clone()).collect();
        let (polys, q) = LaurentExpr::common_numerators(&bases);
        for (&(s, k), poly) in group.iter().zip(polys) {
            numer[s][k] = poly;
        }
        denom.push(q);
    }

    let mut out = SourceOutcome::default();
    for inst in instances {
        let mut acc: BTreeMap<usize, Poly> = BTreeMap::new();
        for term in &inst.terms {
            let s = exp.index(&term.word);
            for (k, path) in exp.paths[s].iter().enumerate() {
                let mult = multiplier(&term.word, &path.betas);
                let piece = numer[s][k].mul(&term.weight).mul_monomial(mult);
                let slot = acc.entry(tindex(&path.target)).or_insert_with(Poly::zero);
                *slot = slot.add(&piece);
            }
        }
        out.entries += acc.len();
        if let Some((&t, residual)) = acc.iter().find(|(_, r)| !r.is_zero()) {
            out.failure = Some(Counterexample {
                source: p.to_string(),
                target: targets[t].to_string(),
                instance: inst.label.clone(),
                residual: (LaurentExpr::from_poly(residual) * denom[t].clone()).to_string(),
            });
            return out;
        }
    }
    out
}

/// FNV-1a over the seed and the labels, so that each entry gets its own
/// reproducible stream regardless of scheduling.
fn entry_seed(seed: u64, parts: &[&str]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325 ^ seed;
    for part in parts {
        for b in part.bytes().chain([0xff]) {
            h ^= b as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }
    h
}

fn random_point(rng: &mut ChaCha8Rng, n: usize, with_z: bool) -> Point {
    let mut vars: Vec<Var> = (1..=n).map(Var::t).collect();
    vars.extend([Var::U, Var::V]);
    if with_z {
        vars.push(Var::Z);
    }
    let mut used: Vec<BigRational> = Vec::new();
    let mut pt = Point::new();
    for v in vars {
        let x = loop {
            let num = rng.gen_range(-97i64..=97);
            let den = rng.gen_range(1i64..=97);
            let x = BigRational::new(num.into(), den.into());
            let unit = BigRational::from_integer(1.into());
            if !x.is_zero() && x != unit && x != -unit && !used.contains(&x) {
                break x;
            }
        };
        used.push(x.clone());
        pt.set(v, x);
    }
    pt
}

/// Seeded points at which every expression in `exprs` is defined.
pub(crate) fn good_points(
    seed: u64,
    labels: &[&str],
    n: usize,
    count: usize,
    with_z: bool,
    exprs: &[&LaurentExpr],
) -> Vec<(Point, Vec<BigRational>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(entry_seed(seed, labels));
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let pt = random_point(&mut rng, n, with_z);
        let values: Result<Vec<BigRational>, _> = exprs.iter().map(|e| e.evaluate(&pt)).collect();
        if let Ok(values) = values {
            out.push((pt, values));
        }
    }
    out
}

fn check_random<P: Pattern>(
    p: &P,
    exp: &Expansion<P>,
    instances: &[Instance],
    n: usize,
    points: usize,
    seed: u64,
    id: &str,
) -> SourceOutcome {
    let flat: Vec<&LaurentExpr> = exp.paths.iter().flatten().map(|path| &path.base).collect();
    let offsets: Vec<usize> = exp
        .paths
        .iter()
        .scan(0, |acc, ps| {
            let here = *acc;
            *acc += ps.len();
            Some(here)
        })
        .collect();
    let source = p.to_string();
    let evaluated = good_points(seed, &[id, &source], n, points, false, &flat);

    let mut out = SourceOutcome {
        degree: flat.iter().map(|b| b.degree_bound()).max().unwrap_or(0),
        ..SourceOutcome::default()
    };
    for inst in instances {
        let mut touched: BTreeMap<P, Vec<BigRational>> = BTreeMap::new();
        for term in &inst.terms {
            let s = exp.index(&term.word);
            for (k, path) in exp.paths[s].iter().enumerate() {
                let mult = multiplier(&term.word, &path.betas);
                let slot = touched
                    .entry(path.target.clone())
                    .or_insert_with(|| vec![BigRational::zero(); points]);
                for (idx, (pt, values)) in evaluated.iter().enumerate() {
                    let w = pt.poly(&term.weight).expect("all variables assigned");
                    let mu = pt.monomial(&mult).expect("all variables assigned");
                    slot[idx] += w * mu * &values[offsets[s] + k];
                }
            }
        }
        out.entries += touched.len();
        for (q, sums) in &touched {
            if let Some(idx) = sums.iter().position(|x| !x.is_zero()) {
                out.failure = Some(Counterexample {
                    source,
                    target: q.to_string(),
                    instance: inst.label.clone(),
                    residual: format!("{} at point {idx}", sums[idx]),
                });
                return out;
            }
        }
    }
    out
}

/// Check every instance entrywise on all basis vectors with at most
/// `scope.max_total` boxes.
pub fn verify_instances<M: LoopModule>(
    m: &M,
    id: RelationId,
    scope: Scope,
    instances: &[Instance],
) -> VerificationReport {
    let sources = m.basis(scope.max_total);
    let label = id.to_string();
    let outcomes: Vec<SourceOutcome> = sources
        .par_iter()
        .map(|p| {
            let exp = Expansion::new(m, p, instances);
            match scope.strategy {
                Strategy::Symbolic => check_symbolic(p, &exp, instances),
                Strategy::Random { points, seed } => check_random(p, &exp, instances, m.rank(), points, seed, &label),
            }
        })
        .collect();
    let entries = outcomes.iter().map(|o| o.entries).sum();
    let degree = outcomes.iter().map(|o| o.degree).max().unwrap_or(0);
    let counterexample = outcomes.into_iter().find_map(|o| o.failure);
    VerificationReport {
        relation: id,
        scope,
        status: if counterexample.is_some() {
            Status::Fail
        } else {
            Status::Pass
        },
        instances: instances.len(),
        entries_checked: entries,
        degree_bound: matches!(scope.strategy, Strategy::Random { .. }).then_some(degree),
        counterexample,
    }
}

//! Relation identifiers, run scopes and verification reports.

use std::fmt;

use laumon_action::{PsiSign, XKind};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    PsiPsi,
    PsiX,
    XCommutator,
    XxSame,
    XxAdjacent,
    Serre,
    TorXxBoundary,
    TorPsixBoundaryA,
    TorPsixBoundaryB,
    GlCartan,
    GlConjugation,
    GlCommutator,
    GlFarCommute,
    GlSerre,
    GlZeroModes,
    BottLocalization,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::PsiPsi => "psi_psi",
            Family::PsiX => "psi_x",
            Family::XCommutator => "x_commutator",
            Family::XxSame => "xx_same",
            Family::XxAdjacent => "xx_adjacent",
            Family::Serre => "serre",
            Family::TorXxBoundary => "tor_xx_boundary",
            Family::TorPsixBoundaryA => "tor_psix_boundary_a",
            Family::TorPsixBoundaryB => "tor_psix_boundary_b",
            Family::GlCartan => "gl_cartan",
            Family::GlConjugation => "gl_conjugation",
            Family::GlCommutator => "gl_commutator",
            Family::GlFarCommute => "gl_far_commute",
            Family::GlSerre => "gl_serre",
            Family::GlZeroModes => "gl_zero_modes",
            Family::BottLocalization => "bott_localization",
        }
    }
}

/// Deliberately wrong variants of a relation, used as soundness controls.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mutation {
    /// `v^{∓2}` replaced by `v^{∓1}` in the same-node quadratic relation.
    HalfPower,
    /// `v^{∓1}` replaced by `v^{∓2}` in the adjacent-node relation.
    DoublePower,
    /// `v + v^{-1}` replaced by `2` in the Serre relation.
    ClassicalSerre,
    /// The node-`n` series used without the hat shift.
    Unshifted,
}

/// Which relation, on which nodes and signs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RelationId {
    pub family: Family,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub side: Option<XKind>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub signs: Vec<PsiSign>,
    pub nodes: (i64, i64),
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mutation: Option<Mutation>,
}

impl RelationId {
    pub fn new(family: Family, nodes: (i64, i64)) -> Self {
        RelationId {
            family,
            side: None,
            signs: Vec::new(),
            nodes,
            mutation: None,
        }
    }

    pub fn side(mut self, side: XKind) -> Self {
        self.side = Some(side);
        self
    }

    pub fn signs(mut self, signs: Vec<PsiSign>) -> Self {
        self.signs = signs;
        self
    }

    pub fn mutated(mut self, m: Option<Mutation>) -> Self {
        self.mutation = m;
        self
    }
}

impl fmt::Display for RelationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.family.name())?;
        if let Some(side) = self.side {
            write!(f, "[{side}]")?;
        }
        for s in &self.signs {
            f.write_str(match s {
                PsiSign::Plus => "+",
                PsiSign::Minus => "-",
            })?;
        }
        write!(f, "({},{})", self.nodes.0, self.nodes.1)?;
        if let Some(m) = self.mutation {
            write!(f, " mutated:{m:?}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Strategy {
    /// Exact identity of rational functions.
    Symbolic,
    /// Exact evaluation at `points` seeded rational points per entry.
    Random { points: usize, seed: u64 },
}

impl Strategy {
    pub fn random(seed: u64) -> Self {
        Strategy::Random { points: 5, seed }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModuleKind {
    Finite,
    Toroidal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Scope {
    pub module: ModuleKind,
    pub n: usize,
    pub max_total: u32,
    pub window: i32,
    pub strategy: Strategy,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// A nonzero entry of a relation that should vanish.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub source: String,
    pub target: String,
    pub instance: String,
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub relation: RelationId,
    pub scope: Scope,
    pub status: Status,
    pub instances: usize,
    pub entries_checked: usize,
    /// For the random strategy: an upper bound on the total degree of the
    /// terms that were evaluated.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree_bound: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

impl VerificationReport {
    /// Merge per-source `(entries, first failure)` pairs, kept in source
    /// order so that the reported counterexample does not depend on
    /// scheduling.
    pub fn from_outcomes(
        relation: RelationId,
        scope: Scope,
        instances: usize,
        outcomes: Vec<(usize, Option<Counterexample>)>,
    ) -> Self {
        let entries_checked = outcomes.iter().map(|o| o.0).sum();
        let counterexample = outcomes.into_iter().find_map(|o| o.1);
        VerificationReport {
            relation,
            scope,
            status: if counterexample.is_some() {
                Status::Fail
            } else {
                Status::Pass
            },
            instances,
            entries_checked,
            degree_bound: None,
            counterexample,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status} {} ({} instances, {} entries)",
            self.relation, self.instances, self.entries_checked
        )?;
        if let Some(c) = &self.counterexample {
            write!(
                f,
                ": {} -> {} at {}, residual {}",
                c.source, c.target, c.instance, c.residual
            )?;
        }
        Ok(())
    }
}

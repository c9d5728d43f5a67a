//! Run configuration read from a JSON file; command-line flags take
//! precedence over every field.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use laumon_relations::Strategy;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum StrategyName {
    Symbolic,
    Random,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub n: Option<usize>,
    /// Bound on the total degree of the source pieces.
    pub max_total: Option<u32>,
    /// Modes run over `[-window, window]`.
    pub window: Option<i32>,
    pub strategy: Option<StrategyName>,
    pub seed: Option<u64>,
    /// Evaluation points per entry for the random strategy.
    pub trials: Option<usize>,
    pub output: Option<PathBuf>,
    pub level: Option<i64>,
    pub mu: Option<Vec<i64>>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }

    pub fn load_opt(path: Option<&Path>) -> Result<Self> {
        path.map(Self::load).transpose().map(Option::unwrap_or_default)
    }

    pub fn strategy(&self) -> Result<Strategy> {
        let points = self.trials.unwrap_or(5);
        match self.strategy.unwrap_or(StrategyName::Symbolic) {
            StrategyName::Symbolic => Ok(Strategy::Symbolic),
            StrategyName::Random if points == 0 => bail!("the random strategy needs at least one point"),
            StrategyName::Random => Ok(Strategy::Random {
                points,
                seed: self.seed.unwrap_or(0),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_fields_are_rejected() {
        assert!(serde_json::from_str::<RunConfig>(r#"{"n": 3, "depth": 2}"#).is_err());
        let c: RunConfig = serde_json::from_str(r#"{"n": 3, "strategy": "random", "seed": 9}"#).unwrap();
        assert_eq!(c.strategy().unwrap(), Strategy::Random { points: 5, seed: 9 });
    }
}

//! Configuration file handling. Vertices are 1-based in every config field.

use anyhow::{bail, Context, Result};
use lfchar::presets;
use lfchar::CartanDatum;
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    /// Builtin type shortcut (e.g. "B2", "G2", "B3").
    #[serde(rename = "type", skip_serializing_if = "Option::is_none")]
    pub type_name: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cartan: Option<Vec<Vec<i64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub symmetrizer: Option<Vec<i64>>,
    /// Pairs [i, j] (1-based): the edge c_ij < 0 oriented with arrow j -> i.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orientation: Option<Vec<(usize, usize)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub primes: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rng_seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cache_dir: Option<PathBuf>,
}

impl Config {
    pub fn load(path: &Path) -> Result<Config> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read config file {}", path.display()))?;
        let cfg: Config = serde_json::from_str(&text)
            .with_context(|| format!("cannot parse config file {}", path.display()))?;
        Ok(cfg)
    }

    pub fn datum(&self) -> Result<CartanDatum> {
        if let Some(name) = &self.type_name {
            if self.cartan.is_some() || self.symmetrizer.is_some() || self.orientation.is_some() {
                bail!("config sets both \"type\" and explicit Cartan data");
            }
            return presets::datum(name).map_err(|e| anyhow::anyhow!("{}", e));
        }
        let cartan = self
            .cartan
            .as_ref()
            .context("config needs either \"type\" or \"cartan\"")?;
        let sym = self
            .symmetrizer
            .as_ref()
            .context("config needs \"symmetrizer\" alongside \"cartan\"")?;
        let pairs_1based = self.orientation.clone().unwrap_or_default();
        let mut pairs = Vec::with_capacity(pairs_1based.len());
        for (i, j) in pairs_1based {
            if i == 0 || j == 0 {
                bail!("orientation pairs are 1-based; got ({}, {})", i, j);
            }
            pairs.push((i - 1, j - 1));
        }
        CartanDatum::new(cartan, sym, &pairs).map_err(|e| anyhow::anyhow!("{}", e))
    }
}

pub fn parse_rank_vector(s: &str, n: usize) -> Result<Vec<i64>> {
    let parts: Vec<i64> = s
        .split(',')
        .map(|p| p.trim().parse::<i64>().map_err(|e| anyhow::anyhow!("{}", e)))
        .collect::<Result<_>>()?;
    if parts.len() != n {
        bail!("expected {} comma-separated entries, got {}", n, parts.len());
    }
    Ok(parts)
}

//! Declarative run configuration (TOML).

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::diffsets::{parse_index_set_expr, FXParams};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FieldConfig {
    pub p: u64,
    pub f: u32,
}

/// An index set, either explicit residues or a generator expression such as
/// `"<3> u -2<3> u {0}"` (`p` abbreviates the field characteristic).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IndexSetInput {
    Residues(Vec<u64>),
    Expression(String),
}

impl IndexSetInput {
    pub fn resolve(&self, p: u64, n: u64) -> Result<Vec<u64>> {
        match self {
            IndexSetInput::Residues(v) => {
                let mut out: Vec<u64> = v.iter().map(|&i| i % n).collect();
                out.sort_unstable();
                out.dedup();
                Ok(out)
            }
            IndexSetInput::Expression(expr) => parse_index_set_expr(expr, p, n),
        }
    }
}

fn default_a() -> u64 {
    3
}

fn default_format() -> OutputFormat {
    OutputFormat::Json
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Tsv,
    Text,
}

#[derive(Debug, Clone, Serialize, Deserialize, Default)]
pub struct OutputConfig {
    /// Destination file; stdout when absent.
    pub path: Option<PathBuf>,
    #[serde(default = "default_format")]
    pub format: OutputFormat,
}

impl Default for OutputFormat {
    fn default() -> Self {
        OutputFormat::Json
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunConfig {
    pub field: FieldConfig,
    /// Family parameters; absent means the quadratic-residue (Paley) set.
    pub fx: Option<FXParams>,
    #[serde(default)]
    pub index_sets: Vec<IndexSetInput>,
    #[serde(default = "default_a")]
    pub a: u64,
    /// Odd lift degrees / residue moduli t for n_t columns.
    #[serde(default)]
    pub t_list: Vec<u64>,
    /// Extra moduli for lifted residue computations.
    #[serde(default)]
    pub moduli: Vec<u64>,
    #[serde(default)]
    pub output: OutputConfig,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let cfg: RunConfig =
            toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<()> {
        for &t in &self.t_list {
            if t % 2 == 0 {
                return Err(Error::Config(format!("t_list entry {t} must be odd")));
            }
        }
        if self.fx.is_none() && !self.index_sets.is_empty() {
            return Err(Error::Config(
                "index_sets given but no fx family parameters (Paley ignores them)".into(),
            ));
        }
        if self.fx.is_some() && self.index_sets.is_empty() {
            return Err(Error::Config("fx family requires at least one index set".into()));
        }
        Ok(())
    }

    pub fn n(&self) -> u64 {
        self.fx.map_or(2, |fx| fx.n())
    }
}

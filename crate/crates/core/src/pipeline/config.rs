use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::simulator::TermOrdering;

/// Which figure tables a run emits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sweep {
    /// Energies and errors against bond length (fig3, fig5, fig6).
    Bond,
    /// Error against evolution time (fig4).
    Time,
    /// Errors and dimensions against cutoff (fig5, fig6).
    Cutoff,
}

impl FromStr for Sweep {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bond" => Ok(Sweep::Bond),
            "time" => Ok(Sweep::Time),
            "cutoff" => Ok(Sweep::Cutoff),
            _ => Err(Error::Config(format!("unknown sweep {s:?} (bond|time|cutoff)"))),
        }
    }
}

impl fmt::Display for Sweep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sweep::Bond => "bond",
            Sweep::Time => "time",
            Sweep::Cutoff => "cutoff",
        })
    }
}

fn default_times() -> Vec<f64> {
    vec![2.0]
}

fn default_steps() -> usize {
    1
}

fn default_cutoffs() -> Vec<f64> {
    vec![0.11]
}

fn default_shots() -> u64 {
    200
}

fn default_seeds() -> Vec<u64> {
    vec![0]
}

/// Experiment grid. Every combination of fixture, cutoff, time and seed is
/// one cell; seeds are master seeds of independent replicates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// FCIDUMP files; each needs a `<stem>.meta.toml` sidecar.
    pub fixtures: Vec<PathBuf>,
    #[serde(default = "default_times")]
    pub times: Vec<f64>,
    #[serde(default = "default_steps")]
    pub steps: usize,
    #[serde(default = "default_cutoffs")]
    pub cutoffs: Vec<f64>,
    #[serde(default = "default_shots")]
    pub shots: u64,
    #[serde(default = "default_seeds")]
    pub seeds: Vec<u64>,
    #[serde(default)]
    pub sector_filter: bool,
    #[serde(default)]
    pub ordering: TermOrdering,
    #[serde(default)]
    pub sweep: Option<Sweep>,
    #[serde(default)]
    pub out_dir: Option<PathBuf>,
    /// Worker threads for sweep cells; defaults to the rayon global pool.
    #[serde(default)]
    pub workers: Option<usize>,
}

impl RunConfig {
    pub fn new(fixtures: Vec<PathBuf>) -> Self {
        Self {
            fixtures,
            times: default_times(),
            steps: default_steps(),
            cutoffs: default_cutoffs(),
            shots: default_shots(),
            seeds: default_seeds(),
            sector_filter: false,
            ordering: TermOrdering::default(),
            sweep: None,
            out_dir: None,
            workers: None,
        }
    }

    /// Reads a TOML config; relative fixture paths resolve against the
    /// config file's directory.
    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        let mut cfg: RunConfig = toml::from_str(&text).map_err(|e| Error::Config(e.to_string()))?;
        if let Some(dir) = path.parent() {
            for f in &mut cfg.fixtures {
                if f.is_relative() {
                    *f = dir.join(&*f);
                }
            }
        }
        Ok(cfg)
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |m: &str| Err(Error::Config(m.to_string()));
        if self.fixtures.is_empty() {
            return fail("no fixtures given");
        }
        if self.times.is_empty() || self.cutoffs.is_empty() || self.seeds.is_empty() {
            return fail("times, cutoffs and seeds must be non-empty");
        }
        if self.shots == 0 {
            return fail("shots must be at least 1");
        }
        if self.steps == 0 {
            return fail("steps must be at least 1");
        }
        if self.times.iter().any(|t| !t.is_finite()) {
            return fail("times must be finite");
        }
        if self.cutoffs.iter().any(|e| !(*e >= 0.0)) {
            return fail("cutoffs must be non-negative");
        }
        if self.workers == Some(0) {
            return fail("workers must be at least 1");
        }
        Ok(())
    }
}

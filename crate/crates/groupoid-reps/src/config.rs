//! Parameters from flags and from an optional TOML file. Flags win.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutFormat {
    #[default]
    Text,
    Json,
}

/// Every knob a subcommand can read. `None` means "not given".
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ell: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kvec: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kk: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theorem95: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cap: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Never serialized into reports: it does not change the output.
    #[serde(skip_serializing)]
    pub jobs: Option<usize>,
    #[serde(skip_serializing)]
    pub out: Option<OutFormat>,
}

impl Params {
    /// Fills every unset field from `other`.
    pub fn or(self, other: Params) -> Params {
        Params {
            ell: self.ell.or(other.ell),
            d: self.d.or(other.d),
            k: self.k.or(other.k),
            kvec: self.kvec.or(other.kvec),
            m: self.m.or(other.m),
            kk: self.kk.or(other.kk),
            theorem95: self.theorem95.or(other.theorem95),
            cap: self.cap.or(other.cap),
            seed: self.seed.or(other.seed),
            jobs: self.jobs.or(other.jobs),
            out: self.out.or(other.out),
        }
    }

    pub fn require(&self, field: Option<usize>, name: &str) -> Result<usize, CliError> {
        field.ok_or_else(|| CliError::Usage(format!("missing --{name} (flag or config)")))
    }
}

pub fn load(path: &Path) -> Result<Params, CliError> {
    let err = |message: String| CliError::Config { path: path.display().to_string(), message };
    let text = std::fs::read_to_string(path).map_err(|e| err(e.to_string()))?;
    toml::from_str(&text).map_err(|e| err(e.to_string()))
}

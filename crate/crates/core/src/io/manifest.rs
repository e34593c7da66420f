use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::config::{config_from_pairs, config_pairs};
use super::table::{TOOL_NAME, TOOL_VERSION};
use crate::error::{Error, Result};
use crate::propagator::SimConfig;

/// Everything needed to re-run a job: the command, its parameters and every
/// resolved configuration, in the same key-value form as config files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub configs: BTreeMap<String, BTreeMap<String, String>>,
    pub wall_clock_s: f64,
    pub convergence: BTreeMap<String, bool>,
    pub warnings: Vec<String>,
}

impl RunManifest {
    pub fn new(command: &str) -> Self {
        RunManifest {
            tool: TOOL_NAME.into(),
            version: TOOL_VERSION.into(),
            command: command.into(),
            parameters: BTreeMap::new(),
            configs: BTreeMap::new(),
            wall_clock_s: 0.0,
            convergence: BTreeMap::new(),
            warnings: Vec::new(),
        }
    }

    pub fn parameter(&mut self, key: &str, value: impl ToString) {
        self.parameters.insert(key.into(), value.to_string());
    }

    pub fn add_config(&mut self, label: &str, config: &SimConfig) {
        self.configs.insert(label.into(), config_pairs(config));
    }

    pub fn flag(&mut self, name: &str, converged: bool) {
        self.convergence.insert(name.into(), converged);
    }

    pub fn all_converged(&self) -> bool {
        self.convergence.values().all(|&c| c)
    }

    /// The stored configuration `label`, rebuilt and validated.
    pub fn config(&self, label: &str) -> Result<SimConfig> {
        let pairs = self
            .configs
            .get(label)
            .ok_or_else(|| Error::invalid("manifest", format!("no config labelled `{label}`")))?;
        config_from_pairs(pairs.clone())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }
}

//! The run manifest: resolved configuration, derived seeds, cache keys,
//! empirical label bounds, tuned kernels, trend fits and timings. Enough
//! to reproduce every CSV bit-exactly.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Serialize, Deserialize, Default)]
pub struct RunManifest {
    pub version: String,
    pub master_seed: u64,
    pub resolved_config: serde_json::Value,
    pub derived_seeds: BTreeMap<String, u64>,
    pub cache_keys: BTreeMap<String, String>,
    /// Empirical sup |y| over the training labels, per task.
    pub upsilon_y: BTreeMap<String, f64>,
    pub tuned_kernel: BTreeMap<String, TunedKernel>,
    pub sweep_n_fit: BTreeMap<String, TrendFit>,
    pub timings_seconds: BTreeMap<String, f64>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct TunedKernel {
    pub nu: f64,
    pub xi: f64,
    pub val_mse: f64,
}

/// Least-squares fit test_mse ~ floor + coeff / sqrt(N).
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct TrendFit {
    pub floor: f64,
    pub coeff: f64,
    pub r_squared: f64,
}

impl RunManifest {
    pub fn path(dir: &Path) -> std::path::PathBuf {
        dir.join("manifest.json")
    }

    pub fn load(dir: &Path) -> Result<Self, CliError> {
        let path = Self::path(dir);
        let text = std::fs::read_to_string(&path).map_err(|e| {
            CliError::Data(format!(
                "missing manifest {} (run `generate` first): {e}",
                path.display()
            ))
        })?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Data(format!("corrupt manifest {}: {e}", path.display())))
    }

    pub fn save(&self, dir: &Path) -> Result<(), CliError> {
        let path = Self::path(dir);
        let text = serde_json::to_string_pretty(self)
            .map_err(|e| CliError::Data(format!("cannot serialize manifest: {e}")))?;
        std::fs::write(&path, text)
            .map_err(|e| CliError::Data(format!("cannot write {}: {e}", path.display())))
    }

    pub fn note_once(&mut self, note: &str) {
        if !self.notes.iter().any(|n| n == note) {
            self.notes.push(note.to_owned());
        }
    }
}

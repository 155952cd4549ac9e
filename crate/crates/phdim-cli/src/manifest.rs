//! Run manifest: enough metadata to re-run any single cell bit-identically
//! and to resume an interrupted run without recomputing finished cells.
//!
//! Cell timings live here and vary between runs, so the manifest itself is
//! excluded from the byte-identity guarantee the data outputs carry.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};

pub const MANIFEST_NAME: &str = "manifest.json";

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CellRecord {
    pub seed: u64,
    pub stream: u64,
    pub elapsed_ms: u64,
    /// Per-cell result file, relative to the output directory.
    pub result_file: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool_version: String,
    pub command: String,
    pub config_hash: String,
    /// Completed cells keyed by a deterministic cell id.
    pub cells: BTreeMap<String, CellRecord>,
    /// Aggregated output files, relative to the output directory.
    pub outputs: Vec<String>,
    pub finished: bool,
}

impl RunManifest {
    pub fn new(command: &str, config_hash: &str) -> Self {
        RunManifest {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            config_hash: config_hash.to_string(),
            cells: BTreeMap::new(),
            outputs: Vec::new(),
            finished: false,
        }
    }

    pub fn path(out_dir: &Path) -> PathBuf {
        out_dir.join(MANIFEST_NAME)
    }

    /// Load the manifest for resuming: returns it only when it matches the
    /// requested command and configuration hash.
    pub fn load_for_resume(out_dir: &Path, command: &str, config_hash: &str) -> Option<Self> {
        let text = std::fs::read_to_string(Self::path(out_dir)).ok()?;
        let manifest: RunManifest = serde_json::from_str(&text).ok()?;
        if manifest.command == command && manifest.config_hash == config_hash {
            Some(manifest)
        } else {
            None
        }
    }

    pub fn save(&self, out_dir: &Path) -> Result<()> {
        let path = Self::path(out_dir);
        let text = serde_json::to_string_pretty(self).context("serializing manifest")?;
        let tmp = path.with_extension("json.tmp");
        std::fs::write(&tmp, text).with_context(|| format!("writing {}", tmp.display()))?;
        std::fs::rename(&tmp, &path)
            .with_context(|| format!("moving manifest into place at {}", path.display()))?;
        Ok(())
    }

    /// True when a cell is recorded and its result file is still on disk.
    pub fn has_cell(&self, out_dir: &Path, id: &str) -> bool {
        self.cells
            .get(id)
            .map(|c| out_dir.join(&c.result_file).is_file())
            .unwrap_or(false)
    }
}

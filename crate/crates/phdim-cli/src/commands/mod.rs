pub mod arrowhead;
pub mod cdf;
pub mod dimension;
pub mod sample;
pub mod selftest;

use anyhow::Result;
use phdim::rng::SeededRng;
use phdim::scaling::{ScalingSeries, SeriesSample};

use crate::config::ExperimentConfig;
use crate::manifest::RunManifest;
use crate::runner::{parse_column, read_cell};

/// Cell bookkeeping: (cell id, n, trial) triples for one series.
pub type SeriesCellIds = Vec<(String, usize, usize)>;

/// Master generator for a run. Stream 0 of the configured seed; every cell
/// derives from it.
pub fn master_rng(config: &ExperimentConfig) -> SeededRng {
    SeededRng::new(config.master_seed, 0)
}

/// Standard `#`-prefixed metadata header shared by all output files.
pub fn metadata_header(config: &ExperimentConfig, extra: &[(&str, String)]) -> String {
    let mut s = String::new();
    s.push_str(&format!("# tool_version={}\n", env!("CARGO_PKG_VERSION")));
    s.push_str(&format!("# shape={}\n", config.shape_tag()));
    s.push_str(&format!("# seed={}\n", config.master_seed));
    for (key, value) in extra {
        s.push_str(&format!("# {key}={value}\n"));
    }
    s
}

/// Reassemble a scaling series for one homological dimension from finished
/// cell payloads (columns: hom_dim,n,trial,seed,ell).
pub fn series_from_cells(
    out_dir: &std::path::Path,
    manifest: &RunManifest,
    hom_dim: usize,
    trials: usize,
    cell_ids: &[(String, usize, usize)], // (id, n, trial)
) -> Result<ScalingSeries> {
    let mut samples = Vec::with_capacity(cell_ids.len());
    for (id, n, trial) in cell_ids {
        let payload = read_cell(out_dir, manifest, id)?;
        let ell = *parse_column(&payload, 4)?
            .first()
            .ok_or_else(|| anyhow::anyhow!("cell {id} payload has no data row"))?;
        let record = &manifest.cells[id];
        samples.push(SeriesSample {
            n: *n as f64,
            ell,
            trial: *trial,
            seed: record.seed,
            stream: record.stream,
        });
    }
    Ok(ScalingSeries::from_samples(hom_dim, trials, samples)?)
}

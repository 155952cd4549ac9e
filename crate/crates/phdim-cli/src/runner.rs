//! Cell scheduler: runs independent experiment cells across the thread
//! pool, persists each result as it lands, and skips cells a previous
//! interrupted run already finished.

use std::path::Path;
use std::sync::mpsc;
use std::time::{Duration, Instant};

use anyhow::{anyhow, bail, Context, Result};
use rayon::prelude::*;

use crate::manifest::{CellRecord, RunManifest};

pub const CELL_DIR: &str = "cells";

/// What one finished cell hands back.
pub struct CellResult {
    /// File content persisted under `cells/<id>.csv`.
    pub payload: String,
    pub seed: u64,
    pub stream: u64,
}

/// Run every pending cell of `cells` through `work`, writing one result
/// file per cell and updating the manifest as results land. Results are
/// deterministic regardless of scheduling because each cell derives its own
/// random stream; only the manifest's timings vary between runs.
pub fn run_cells<I, F>(
    out_dir: &Path,
    manifest: &mut RunManifest,
    max_seconds_per_cell: u64,
    cells: Vec<(String, I)>,
    work: F,
) -> Result<()>
where
    I: Send,
    F: Fn(&I) -> Result<CellResult> + Sync,
{
    std::fs::create_dir_all(out_dir.join(CELL_DIR))
        .with_context(|| format!("creating {}", out_dir.join(CELL_DIR).display()))?;
    let total = cells.len();
    let (skipped, pending): (Vec<_>, Vec<_>) = cells
        .into_iter()
        .partition(|(id, _)| manifest.has_cell(out_dir, id));
    if !skipped.is_empty() {
        eprintln!(
            "resuming: {} of {} cells already computed",
            skipped.len(),
            total
        );
    }
    let cap = Duration::from_secs(max_seconds_per_cell);

    let (tx, rx) = mpsc::channel::<(String, Result<CellResult>, Duration)>();
    let mut first_error: Option<anyhow::Error> = None;
    let work = &work;
    std::thread::scope(|scope| {
        scope.spawn(move || {
            pending
                .into_par_iter()
                .for_each_with(tx, |tx, (id, input)| {
                    let started = Instant::now();
                    let result = work(&input);
                    // The receiver hanging up means the run is aborting.
                    let _ = tx.send((id, result, started.elapsed()));
                });
        });
        // Persist every completed cell even once a failure is recorded, so
        // a rerun resumes from as much finished work as possible.
        for (id, result, elapsed) in rx.iter() {
            match result {
                Err(e) => {
                    first_error.get_or_insert_with(|| e.context(format!("cell {id}")));
                }
                Ok(cell) => {
                    let rel = format!("{CELL_DIR}/{id}.csv");
                    if let Err(e) = std::fs::write(out_dir.join(&rel), &cell.payload) {
                        first_error
                            .get_or_insert_with(|| anyhow!(e).context(format!("writing cell {id}")));
                        continue;
                    }
                    manifest.cells.insert(
                        id.clone(),
                        CellRecord {
                            seed: cell.seed,
                            stream: cell.stream,
                            elapsed_ms: elapsed.as_millis() as u64,
                            result_file: rel,
                        },
                    );
                    if let Err(e) = manifest.save(out_dir) {
                        first_error.get_or_insert(e);
                    } else if elapsed > cap && first_error.is_none() {
                        first_error = Some(anyhow!(
                            "cell {id} took {:.1}s, over the {max_seconds_per_cell}s per-cell cap \
                             (its result was kept; raise max_seconds_per_cell to continue)",
                            elapsed.as_secs_f64()
                        ));
                    }
                }
            }
        }
    });
    match first_error {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

/// Read a finished cell's payload back.
pub fn read_cell(out_dir: &Path, manifest: &RunManifest, id: &str) -> Result<String> {
    let record = manifest
        .cells
        .get(id)
        .ok_or_else(|| anyhow!("cell {id} missing from manifest"))?;
    std::fs::read_to_string(out_dir.join(&record.result_file))
        .with_context(|| format!("reading cell {id}"))
}

/// Write an aggregated output file and record it in the manifest.
pub fn write_output(
    out_dir: &Path,
    manifest: &mut RunManifest,
    name: &str,
    content: &str,
) -> Result<()> {
    std::fs::write(out_dir.join(name), content).with_context(|| format!("writing {name}"))?;
    let name = name.to_string();
    if !manifest.outputs.contains(&name) {
        manifest.outputs.push(name);
    }
    Ok(())
}

/// Parse one numeric column out of a cell payload CSV (no header handling
/// beyond skipping `#` comments and the first non-comment line).
pub fn parse_column(payload: &str, column: usize) -> Result<Vec<f64>> {
    let mut values = Vec::new();
    let mut saw_header = false;
    for line in payload.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if !saw_header {
            saw_header = true;
            continue;
        }
        let field = line
            .split(',')
            .nth(column)
            .ok_or_else(|| anyhow!("missing column {column} in cell row '{line}'"))?;
        values.push(field.trim().parse::<f64>()?);
    }
    if !saw_header {
        bail!("cell payload had no header row");
    }
    Ok(values)
}

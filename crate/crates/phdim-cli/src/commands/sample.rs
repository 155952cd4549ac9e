//! `phdim sample`: write sampled point clouds as CSV, one point per row.

use anyhow::Result;
use phdim::geometry::sample;

use crate::commands::{master_rng, metadata_header};
use crate::config::ExperimentConfig;
use crate::manifest::RunManifest;
use crate::plots;
use crate::runner::{run_cells, write_output, CellResult};

const CELL_TAG: u64 = 0x5a0f;

pub fn run(config: &ExperimentConfig) -> Result<()> {
    config.validate()?;
    let out_dir = &config.output_dir;
    std::fs::create_dir_all(out_dir)?;
    let hash = config.result_hash("sample");
    let mut manifest = RunManifest::load_for_resume(out_dir, "sample", &hash)
        .unwrap_or_else(|| RunManifest::new("sample", &hash));

    let spec = config.shape_spec()?;
    let shape = config.shape_tag();
    let rng = master_rng(config);
    let cells: Vec<(String, (usize, usize))> = config
        .n_schedule
        .iter()
        .flat_map(|&n| (0..config.trials).map(move |t| (n, t)))
        .map(|(n, t)| (format!("points_{shape}_n{n}_t{t}"), (n, t)))
        .collect();

    let header_dim = spec.ambient_dim();
    run_cells(
        out_dir,
        &mut manifest,
        config.max_seconds_per_cell,
        cells.clone(),
        |&(n, trial)| {
            let cell_rng = rng.derive(&[CELL_TAG, n as u64, trial as u64]);
            let seed = cell_rng.seed();
            let stream = cell_rng.stream_id();
            let mut r = cell_rng;
            let cloud = sample(&spec, n, &mut r)?;
            let mut payload = metadata_header(
                config,
                &[
                    ("n", n.to_string()),
                    ("trial", trial.to_string()),
                    ("cell_seed", seed.to_string()),
                    ("cell_stream", stream.to_string()),
                    ("ambient_dim", header_dim.to_string()),
                ],
            );
            let names: Vec<String> = (0..header_dim).map(|a| format!("x{a}")).collect();
            payload.push_str(&names.join(","));
            payload.push('\n');
            for p in cloud.iter() {
                let row: Vec<String> = p.iter().map(|c| format!("{c}")).collect();
                payload.push_str(&row.join(","));
                payload.push('\n');
            }
            Ok(CellResult {
                payload,
                seed,
                stream,
            })
        },
    )?;

    let files: Vec<String> = cells
        .iter()
        .map(|(id, _)| manifest.cells[id].result_file.clone())
        .collect();
    write_output(
        out_dir,
        &mut manifest,
        "sample_plot.gp",
        &plots::scatter_plot(&shape, &files),
    )?;
    manifest.finished = true;
    manifest.save(out_dir)?;
    println!(
        "wrote {} clouds under {}",
        cells.len(),
        out_dir.join("cells").display()
    );
    Ok(())
}

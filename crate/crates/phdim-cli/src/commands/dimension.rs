//! `phdim dimension`: collect `(n, ell)` scaling series for the configured
//! shape and homological dimensions, fit the growth exponent three ways
//! (aggregated, pooled, asymptotic) and emit plot-ready data.

use anyhow::Result;
use phdim::persistence::VrOptions;
use phdim::scaling::{
    asymptotic_alpha, global_loglog_fit, pooled_loglog_fit, total_interval_length, SeriesSample,
};

use crate::commands::{master_rng, metadata_header, series_from_cells};
use crate::config::ExperimentConfig;
use crate::manifest::RunManifest;
use crate::plots;
use crate::runner::{run_cells, write_output, CellResult};

const CELL_TAG: u64 = 0xd173;

pub fn run(config: &ExperimentConfig) -> Result<()> {
    config.validate()?;
    let out_dir = &config.output_dir;
    std::fs::create_dir_all(out_dir)?;
    let hash = config.result_hash("dimension");
    let mut manifest = RunManifest::load_for_resume(out_dir, "dimension", &hash)
        .unwrap_or_else(|| RunManifest::new("dimension", &hash));

    let spec = config.shape_spec()?;
    let shape = config.shape_tag();
    let rng = master_rng(config);
    let vr_options = VrOptions {
        max_simplices: config.max_simplices,
    };

    let mut cell_index: Vec<(usize, crate::commands::SeriesCellIds)> = Vec::new();
    let mut cells: Vec<(String, (usize, usize, usize))> = Vec::new();
    for &dim in &config.hom_dims {
        let mut ids = Vec::new();
        for &n in &config.n_schedule {
            for trial in 0..config.trials {
                let id = format!("series_d{dim}_n{n}_t{trial}");
                ids.push((id.clone(), n, trial));
                cells.push((id, (dim, n, trial)));
            }
        }
        cell_index.push((dim, ids));
    }

    run_cells(
        out_dir,
        &mut manifest,
        config.max_seconds_per_cell,
        cells,
        |&(dim, n, trial)| {
            let cell_rng = rng.derive(&[CELL_TAG, dim as u64, n as u64, trial as u64]);
            let seed = cell_rng.seed();
            let stream = cell_rng.stream_id();
            let mut r = cell_rng;
            let cloud = phdim::geometry::sample(&spec, n, &mut r)?;
            let ell = total_interval_length(&cloud, dim, &vr_options)?;
            let sample = SeriesSample {
                n: n as f64,
                ell,
                trial,
                seed,
                stream,
            };
            let payload = format!(
                "hom_dim,n,trial,seed,ell\n{},{},{},{},{}\n",
                dim, sample.n, trial, seed, ell
            );
            Ok(CellResult {
                payload,
                seed,
                stream,
            })
        },
    )?;

    let mut plot_series = Vec::new();
    let mut plot_fits = Vec::new();
    for (dim, ids) in &cell_index {
        let series = series_from_cells(out_dir, &manifest, *dim, config.trials, ids)?;
        let mut csv = metadata_header(
            config,
            &[
                ("hom_dim", dim.to_string()),
                ("trials", config.trials.to_string()),
            ],
        );
        csv.push_str(&series.to_csv());
        let series_name = format!("series_d{dim}.csv");
        write_output(out_dir, &mut manifest, &series_name, &csv)?;

        let aggregated = global_loglog_fit(&series);
        let pooled = pooled_loglog_fit(&series);
        let asymptotic = asymptotic_alpha(&series);
        let mut report = metadata_header(config, &[("hom_dim", dim.to_string())]);
        for (label, fit) in [
            ("aggregated log-log fit", &aggregated),
            ("pooled log-log fit", &pooled),
            ("asymptotic extrapolation", &asymptotic),
        ] {
            report.push_str(&format!("\n== {label} ==\n"));
            match fit {
                Ok(f) => report.push_str(&f.to_report()),
                Err(e) => report.push_str(&format!("failed: {e}\n")),
            }
        }
        write_output(out_dir, &mut manifest, &format!("fits_d{dim}.txt"), &report)?;

        if let Ok(f) = &aggregated {
            println!(
                "H{dim} {shape}: alpha = {:.4} (dimension {:.3}), asymptotic alpha = {}",
                f.alpha,
                f.dimension,
                asymptotic
                    .as_ref()
                    .map(|a| format!("{:.4}", a.alpha))
                    .unwrap_or_else(|e| format!("failed: {e}")),
            );
            plot_fits.push((*dim, f.intercept, f.alpha));
        }
        plot_series.push((*dim, series_name));
    }

    write_output(
        out_dir,
        &mut manifest,
        "dimension_plot.gp",
        &plots::dimension_plot(&shape, &plot_series, &plot_fits),
    )?;
    manifest.finished = true;
    manifest.save(out_dir)?;
    Ok(())
}

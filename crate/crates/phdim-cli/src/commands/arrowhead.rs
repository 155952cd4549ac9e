//! `phdim arrowhead`: scaling series on arrowhead curves of the configured
//! levels, with the pre-saturation window (fractal-like growth) and the
//! large-n window (dimension-one saturation) tagged in the reports.

use anyhow::Result;
use phdim::geometry::{sample, ShapeKind, ShapeSpec};
use phdim::persistence::VrOptions;
use phdim::scaling::{
    asymptotic_alpha, global_loglog_fit, restrict_series, total_interval_length, ScalingSeries,
};

use crate::commands::{master_rng, metadata_header, series_from_cells};
use crate::config::ExperimentConfig;
use crate::manifest::RunManifest;
use crate::runner::{run_cells, write_output, CellResult};

const CELL_TAG: u64 = 0xa770;

/// Index window (in n) where a level-`level` curve still scales like the
/// fractal: past the first few multiples of `3^(level/2)` and clearly below
/// the `3^level` segment count.
pub fn intermediate_window(level: u32) -> (f64, f64) {
    let half = 3f64.powf(level as f64 / 2.0);
    let full = 3f64.powi(level as i32);
    (2.0 * half, 0.75 * full)
}

/// Window where the curve's one-dimensionality dominates and the total
/// length saturates at `(3/2)^level`.
pub fn large_n_window(level: u32) -> (f64, f64) {
    (4.0 * 3f64.powi(level as i32), f64::INFINITY)
}

pub fn run(config: &ExperimentConfig) -> Result<()> {
    config.validate()?;
    let out_dir = &config.output_dir;
    std::fs::create_dir_all(out_dir)?;
    let hash = config.result_hash("arrowhead");
    let mut manifest = RunManifest::load_for_resume(out_dir, "arrowhead", &hash)
        .unwrap_or_else(|| RunManifest::new("arrowhead", &hash));

    let rng = master_rng(config);
    let vr_options = VrOptions {
        max_simplices: config.max_simplices,
    };

    let mut cell_index = Vec::new();
    let mut cells = Vec::new();
    for &level in &config.arrowhead_levels {
        ShapeSpec::new(ShapeKind::Arrowhead { level }).validate()?;
        for &dim in &config.hom_dims {
            let mut ids = Vec::new();
            for &n in &config.n_schedule {
                for trial in 0..config.trials {
                    let id = format!("arrow_l{level}_d{dim}_n{n}_t{trial}");
                    ids.push((id.clone(), n, trial));
                    cells.push((id, (level, dim, n, trial)));
                }
            }
            cell_index.push((level, dim, ids));
        }
    }

    run_cells(
        out_dir,
        &mut manifest,
        config.max_seconds_per_cell,
        cells,
        |&(level, dim, n, trial)| {
            let spec = ShapeSpec::new(ShapeKind::Arrowhead { level });
            let cell_rng =
                rng.derive(&[CELL_TAG, level as u64, dim as u64, n as u64, trial as u64]);
            let seed = cell_rng.seed();
            let stream = cell_rng.stream_id();
            let mut r = cell_rng;
            let cloud = sample(&spec, n, &mut r)?;
            let ell = total_interval_length(&cloud, dim, &vr_options)?;
            let payload = format!("hom_dim,n,trial,seed,ell\n{dim},{n},{trial},{seed},{ell}\n");
            Ok(CellResult {
                payload,
                seed,
                stream,
            })
        },
    )?;

    for (level, dim, ids) in &cell_index {
        let series = series_from_cells(out_dir, &manifest, *dim, config.trials, ids)?;
        let mut csv = metadata_header(
            config,
            &[("level", level.to_string()), ("hom_dim", dim.to_string())],
        );
        csv.push_str(&series.to_csv());
        write_output(
            out_dir,
            &mut manifest,
            &format!("arrowhead_l{level}_d{dim}.csv"),
            &csv,
        )?;

        let mut report = metadata_header(
            config,
            &[("level", level.to_string()), ("hom_dim", dim.to_string())],
        );
        report.push_str(&format!(
            "curve_length: {}\nsegments: {}\n",
            1.5f64.powi(*level as i32),
            3u64.pow(*level)
        ));
        report.push_str("\n== full-range fits ==\n");
        match global_loglog_fit(&series) {
            Ok(f) => report.push_str(&f.to_report()),
            Err(e) => report.push_str(&format!("failed: {e}\n")),
        }
        match asymptotic_alpha(&series) {
            Ok(f) => {
                report.push_str("-- asymptotic --\n");
                report.push_str(&f.to_report());
            }
            Err(e) => report.push_str(&format!("asymptotic failed: {e}\n")),
        }
        for (label, window) in [
            ("intermediate window", intermediate_window(*level)),
            ("large-n window", large_n_window(*level)),
        ] {
            report.push_str(&format!(
                "\n== {label} (n in [{}, {}]) ==\n",
                window.0,
                if window.1.is_finite() {
                    format!("{}", window.1)
                } else {
                    "inf".to_string()
                }
            ));
            match window_slope(&series, window) {
                Some(fit) => report.push_str(&fit),
                None => report.push_str("too few schedule points in window\n"),
            }
        }
        write_output(
            out_dir,
            &mut manifest,
            &format!("arrowhead_l{level}_d{dim}.txt"),
            &report,
        )?;
        println!("arrowhead level {level} H{dim}: series and report written");
    }
    manifest.finished = true;
    manifest.save(out_dir)?;
    Ok(())
}

fn window_slope(series: &ScalingSeries, window: (f64, f64)) -> Option<String> {
    let sub = restrict_series(series, window.0, window.1).ok()?;
    let fit = global_loglog_fit(&sub).ok()?;
    Some(fit.to_report())
}

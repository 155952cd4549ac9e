//! `phdim cdf`: empirical CDFs of interval lengths across sample sizes,
//! optionally rescaled by `n^(1/m)`, with pairwise KS matrices; plus the
//! separated-triangle periodic family probe when configured.

use anyhow::{bail, Result};
use phdim::distributions::{empirical_cdf, ks_distance, EmpiricalCDF};
use phdim::geometry::sample;
use phdim::persistence::{
    distance_matrix, mst_interval_lengths, vr_barcode_with, CloudDistances, VrOptions,
};

use crate::commands::{master_rng, metadata_header};
use crate::config::ExperimentConfig;
use crate::manifest::RunManifest;
use crate::plots;
use crate::runner::{parse_column, read_cell, run_cells, write_output, CellResult};

const CELL_TAG: u64 = 0xcdf0;

pub fn run(config: &ExperimentConfig) -> Result<()> {
    config.validate()?;
    let out_dir = &config.output_dir;
    std::fs::create_dir_all(out_dir)?;
    let hash = config.result_hash("cdf");
    let mut manifest = RunManifest::load_for_resume(out_dir, "cdf", &hash)
        .unwrap_or_else(|| RunManifest::new("cdf", &hash));

    let spec = config.shape_spec()?;
    let shape = config.shape_tag();
    let rng = master_rng(config);
    let ns = config
        .cdf_ns
        .clone()
        .unwrap_or_else(|| config.n_schedule.clone());
    if ns.is_empty() || ns.contains(&0) {
        bail!("cdf sample sizes must be positive");
    }
    let vr_options = VrOptions {
        max_simplices: config.max_simplices,
    };

    // One cell per (hom_dim, n): the interval lengths of a fresh sample.
    let mut cells = Vec::new();
    for &dim in &config.hom_dims {
        for &n in &ns {
            cells.push((format!("lengths_d{dim}_n{n}"), (dim, n)));
        }
    }
    run_cells(
        out_dir,
        &mut manifest,
        config.max_seconds_per_cell,
        cells,
        |&(dim, n)| {
            let cell_rng = rng.derive(&[CELL_TAG, dim as u64, n as u64]);
            let seed = cell_rng.seed();
            let stream = cell_rng.stream_id();
            let mut r = cell_rng;
            let cloud = sample(&spec, n, &mut r)?;
            let lengths = if dim == 0 {
                mst_interval_lengths(&CloudDistances::new(&cloud))
            } else {
                let dist = distance_matrix(&cloud)?;
                vr_barcode_with(&dist, dim, &vr_options)?[dim].lengths()
            };
            let mut payload = format!("# hom_dim={dim}\n# n={n}\nlength\n");
            for l in &lengths {
                payload.push_str(&format!("{l}\n"));
            }
            Ok(CellResult {
                payload,
                seed,
                stream,
            })
        },
    )?;

    let mut plot_files = Vec::new();
    for &dim in &config.hom_dims {
        let mut cdfs: Vec<(usize, EmpiricalCDF)> = Vec::new();
        for &n in &ns {
            let payload = read_cell(out_dir, &manifest, &format!("lengths_d{dim}_n{n}"))?;
            let lengths = parse_column(&payload, 0)?;
            let mut cdf = empirical_cdf(&lengths, n, dim)?;
            if let Some(m) = config.rescale_m {
                cdf = cdf.rescale(m)?;
            }
            let name = format!("cdf_d{dim}_n{n}.csv");
            let meta = metadata_header(
                config,
                &[(
                    "rescale_m",
                    config
                        .rescale_m
                        .map(|m| m.to_string())
                        .unwrap_or_else(|| "none".into()),
                )],
            );
            let mut text = meta;
            text.push_str(&cdf.to_csv(&[]));
            write_output(out_dir, &mut manifest, &name, &text)?;
            plot_files.push((name, format!("H{dim} n={n}")));
            cdfs.push((n, cdf));
        }
        // Pairwise KS distances across sample sizes.
        let mut ks_csv = metadata_header(config, &[("hom_dim", dim.to_string())]);
        ks_csv.push_str("n_a,n_b,ks_distance\n");
        for i in 0..cdfs.len() {
            for j in (i + 1)..cdfs.len() {
                let (na, ca) = &cdfs[i];
                let (nb, cb) = &cdfs[j];
                if ca.is_defined() && cb.is_defined() {
                    ks_csv.push_str(&format!("{na},{nb},{}\n", ks_distance(ca, cb)?));
                } else {
                    ks_csv.push_str(&format!("{na},{nb},undefined\n"));
                }
            }
        }
        write_output(
            out_dir,
            &mut manifest,
            &format!("ks_matrix_d{dim}.csv"),
            &ks_csv,
        )?;
    }

    if let Some(periodic) = &config.periodic {
        run_periodic_family(config, periodic, &mut manifest, &mut plot_files)?;
    }

    write_output(
        out_dir,
        &mut manifest,
        "cdf_plot.gp",
        &plots::cdf_plot(&format!("interval-length CDFs: {shape}"), &plot_files),
    )?;
    manifest.finished = true;
    manifest.save(out_dir)?;
    println!(
        "wrote {} CDF files under {}",
        plot_files.len(),
        out_dir.display()
    );
    Ok(())
}

/// Rescaled CDFs along n = k * 3^j for the separated Sierpinski triangle.
fn run_periodic_family(
    config: &ExperimentConfig,
    periodic: &crate::config::PeriodicConfig,
    manifest: &mut RunManifest,
    plot_files: &mut Vec<(String, String)>,
) -> Result<()> {
    let out_dir = &config.output_dir;
    let separation = periodic.separation.unwrap_or(2.0);
    let k_list = periodic.k_list.clone().unwrap_or_else(|| vec![1, 2]);
    let j_max = periodic.j_max.unwrap_or(7);
    if separation.is_nan() || separation <= 0.0 {
        bail!("periodic family needs separation > 0");
    }
    let m = 3f64.ln() / (2.0 + separation).ln();
    let rng = master_rng(config);
    let hom_dim = *config.hom_dims.first().unwrap_or(&0);

    // One cell per (k, j); streams match the library probe, so these cells
    // reproduce phdim::distributions::periodic_family_probe exactly.
    let mut cells = Vec::new();
    for &k in &k_list {
        for j in 0..=j_max {
            cells.push((format!("periodic_k{k}_j{j}"), (k, j)));
        }
    }
    run_cells(
        out_dir,
        manifest,
        config.max_seconds_per_cell,
        cells.clone(),
        |&(k, j)| {
            let cell_rng = rng.derive(&[phdim::distributions::PROBE_STREAM_TAG, k, j as u64]);
            let seed = cell_rng.seed();
            let stream = cell_rng.stream_id();
            let snapshot =
                phdim::distributions::periodic_family_snapshot(separation, k, j, hom_dim, &rng)?;
            let mut payload = format!("# k={k}\n# j={j}\n# rescale_m={m}\nrescaled_length\n");
            for v in snapshot.cdf.values() {
                payload.push_str(&format!("{v}\n"));
            }
            Ok(CellResult {
                payload,
                seed,
                stream,
            })
        },
    )?;

    // Snapshot CDF files plus the pairwise KS matrix.
    let mut snapshots = Vec::new();
    for (id, (k, j)) in &cells {
        let payload = read_cell(out_dir, manifest, id)?;
        let values = parse_column(&payload, 0)?;
        let n = (*k as usize) * 3usize.pow(*j);
        // Values are already rescaled; rebuild the CDF around them.
        let cdf = empirical_cdf(&values, n, hom_dim)?;
        let name = format!("cdf_periodic_k{k}_j{j}.csv");
        let mut text = metadata_header(
            config,
            &[
                ("separation", separation.to_string()),
                ("rescale_m", m.to_string()),
                ("k", k.to_string()),
                ("j", j.to_string()),
            ],
        );
        text.push_str(&cdf.to_csv(&[]));
        write_output(out_dir, manifest, &name, &text)?;
        plot_files.push((name, format!("k={k} j={j}")));
        snapshots.push((*k, *j, cdf));
    }
    let mut ks_csv = metadata_header(config, &[("separation", separation.to_string())]);
    ks_csv.push_str("k_a,j_a,k_b,j_b,ks_distance\n");
    for i in 0..snapshots.len() {
        for l in (i + 1)..snapshots.len() {
            let (ka, ja, ca) = &snapshots[i];
            let (kb, jb, cb) = &snapshots[l];
            if ca.is_defined() && cb.is_defined() {
                ks_csv.push_str(&format!("{ka},{ja},{kb},{jb},{}\n", ks_distance(ca, cb)?));
            } else {
                ks_csv.push_str(&format!("{ka},{ja},{kb},{jb},undefined\n"));
            }
        }
    }
    write_output(out_dir, manifest, "ks_matrix_periodic.csv", &ks_csv)?;
    Ok(())
}

//! Command-line harness for persistent-homology fractal dimension
//! experiments: sampling, scaling-series collection and slope fits, interval
//! length CDFs, arrowhead-curve studies and a selftest.
//!
//! Configuration precedence: built-in defaults < `--config` TOML file <
//! `PHDIM_*` environment variables < command-line flags.

mod commands;
mod config;
mod manifest;
mod plots;
mod runner;

use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use config::{ConfigFile, ExperimentConfig};

#[derive(Parser)]
#[command(
    name = "phdim",
    version,
    about = "Persistent-homology fractal dimension experiments"
)]
struct Cli {
    /// TOML configuration file.
    #[arg(long, global = true, env = "PHDIM_CONFIG")]
    config: Option<PathBuf>,

    /// Master seed; every cell derives its own stream from it.
    #[arg(long, global = true, env = "PHDIM_SEED")]
    seed: Option<u64>,

    /// Output directory.
    #[arg(long, global = true, env = "PHDIM_OUT")]
    out: Option<PathBuf>,

    /// Worker threads (0 = one per core).
    #[arg(long, global = true, env = "PHDIM_THREADS")]
    threads: Option<usize>,

    /// Cap on the simplex-count estimate before a barcode computation runs.
    #[arg(long, global = true, env = "PHDIM_MAX_SIMPLICES")]
    max_simplices: Option<u64>,

    /// Comma-separated homological dimensions (e.g. 0,1).
    #[arg(long, global = true, env = "PHDIM_HOM_DIMS")]
    hom_dims: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
struct ShapeArgs {
    /// Shape: disk, square, triangle, cube, torus, interval, beta_square,
    /// cantor_set, cantor_cross_interval, cantor_dust_2d, cantor_dust_3d,
    /// sierpinski, arrowhead.
    #[arg(long)]
    shape: Option<String>,
    /// Sierpinski separation (delta >= 0).
    #[arg(long)]
    separation: Option<f64>,
    /// Arrowhead curve level.
    #[arg(long)]
    level: Option<u32>,
    #[arg(long)]
    major_radius: Option<f64>,
    #[arg(long)]
    minor_radius: Option<f64>,
    /// Beta-square first shape parameter.
    #[arg(long)]
    beta_a: Option<f64>,
    /// Beta-square second shape parameter.
    #[arg(long)]
    beta_b: Option<f64>,
    /// Digits kept in digit-expansion fractal samples.
    #[arg(long)]
    digit_depth: Option<u32>,
}

#[derive(Subcommand)]
enum Command {
    /// Write sampled point clouds as CSV (one point per row).
    Sample {
        #[command(flatten)]
        shape: ShapeArgs,
        /// Sample exactly this n instead of the schedule.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        trials: Option<usize>,
    },
    /// Collect scaling series and fit growth exponents.
    Dimension {
        #[command(flatten)]
        shape: ShapeArgs,
        /// Comma-separated sample sizes, e.g. 64,128,256.
        #[arg(long)]
        n_schedule: Option<String>,
        #[arg(long)]
        trials: Option<usize>,
    },
    /// Empirical CDFs of interval lengths, KS matrices, periodic family.
    Cdf {
        #[command(flatten)]
        shape: ShapeArgs,
        /// Comma-separated sample sizes for the CDFs.
        #[arg(long)]
        ns: Option<String>,
        /// Rescale lengths by n^(1/m) with this m.
        #[arg(long)]
        rescale_m: Option<f64>,
        /// Run the separated-triangle periodic probe with these k values.
        #[arg(long)]
        periodic_k: Option<String>,
        #[arg(long)]
        periodic_j_max: Option<u32>,
    },
    /// Scaling series on arrowhead curves with regime windows tagged.
    Arrowhead {
        /// Comma-separated curve levels, e.g. 4,6.
        #[arg(long)]
        levels: Option<String>,
        #[arg(long)]
        n_schedule: Option<String>,
        #[arg(long)]
        trials: Option<usize>,
    },
    /// Run the built-in verification suite; nonzero exit on failure.
    Selftest,
}

fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>>
where
    T::Err: std::error::Error + Send + Sync + 'static,
{
    text.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<T>()
                .with_context(|| format!("parsing {what} entry '{tok}'"))
        })
        .collect()
}

fn apply_shape_args(config: &mut ExperimentConfig, shape: &ShapeArgs) {
    if let Some(kind) = &shape.shape {
        config.shape.kind = Some(kind.clone());
    }
    if let Some(v) = shape.separation {
        config.shape.separation = Some(v);
    }
    if let Some(v) = shape.level {
        config.shape.level = Some(v);
    }
    if let Some(v) = shape.major_radius {
        config.shape.major_radius = Some(v);
    }
    if let Some(v) = shape.minor_radius {
        config.shape.minor_radius = Some(v);
    }
    if let Some(v) = shape.beta_a {
        config.shape.alpha = Some(v);
    }
    if let Some(v) = shape.beta_b {
        config.shape.beta = Some(v);
    }
    if let Some(v) = shape.digit_depth {
        config.digit_depth = v;
    }
}

fn main() -> Result<()> {
    let cli = Cli::parse();

    let file = match &cli.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    let mut config = file.resolve();

    if let Some(seed) = cli.seed {
        config.master_seed = seed;
    }
    if let Some(out) = &cli.out {
        config.output_dir = out.clone();
    }
    if let Some(threads) = cli.threads {
        config.threads = threads;
    }
    if let Some(max) = cli.max_simplices {
        config.max_simplices = max;
    }
    if let Some(dims) = &cli.hom_dims {
        config.hom_dims = parse_list(dims, "hom_dims")?;
    }

    if config.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(config.threads)
            .build_global()
            .context("configuring thread pool")?;
    }

    match &cli.command {
        Command::Sample { shape, n, trials } => {
            apply_shape_args(&mut config, shape);
            if let Some(n) = n {
                config.n_schedule = vec![*n];
            }
            if let Some(t) = trials {
                config.trials = *t;
            }
            commands::sample::run(&config)
        }
        Command::Dimension {
            shape,
            n_schedule,
            trials,
        } => {
            apply_shape_args(&mut config, shape);
            if let Some(s) = n_schedule {
                config.n_schedule = parse_list(s, "n_schedule")?;
            }
            if let Some(t) = trials {
                config.trials = *t;
            }
            commands::dimension::run(&config)
        }
        Command::Cdf {
            shape,
            ns,
            rescale_m,
            periodic_k,
            periodic_j_max,
        } => {
            apply_shape_args(&mut config, shape);
            if let Some(s) = ns {
                config.cdf_ns = Some(parse_list(s, "ns")?);
            }
            if let Some(m) = rescale_m {
                config.rescale_m = Some(*m);
            }
            if periodic_k.is_some() || periodic_j_max.is_some() {
                let mut periodic = config.periodic.clone().unwrap_or_default();
                if let Some(ks) = periodic_k {
                    periodic.k_list = Some(parse_list(ks, "periodic_k")?);
                }
                if let Some(j) = periodic_j_max {
                    periodic.j_max = Some(*j);
                }
                if periodic.separation.is_none() {
                    periodic.separation = config.shape.separation.or(Some(2.0));
                }
                config.periodic = Some(periodic);
            }
            commands::cdf::run(&config)
        }
        Command::Arrowhead {
            levels,
            n_schedule,
            trials,
        } => {
            if let Some(l) = levels {
                config.arrowhead_levels = parse_list(l, "levels")?;
            }
            if let Some(s) = n_schedule {
                config.n_schedule = parse_list(s, "n_schedule")?;
            }
            if let Some(t) = trials {
                config.trials = *t;
            }
            commands::arrowhead::run(&config)
        }
        Command::Selftest => commands::selftest::run(config.master_seed),
    }
}

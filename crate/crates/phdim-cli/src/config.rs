//! Experiment configuration.
//!
//! Values resolve with precedence: built-in defaults, then the TOML config
//! file, then `PHDIM_*` environment variables, then command-line flags
//! (clap applies env vars as flag fallbacks, so the last two come in
//! together).

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use phdim::geometry::{ShapeKind, ShapeSpec, DEFAULT_DIGIT_DEPTH};
use phdim::persistence::DEFAULT_MAX_SIMPLICES;
use serde::{Deserialize, Serialize};

/// On-disk configuration. Every field is optional; [`ConfigFile::resolve`]
/// fills in defaults. The file round-trips losslessly through serde.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub master_seed: Option<u64>,
    pub output_dir: Option<PathBuf>,
    pub threads: Option<usize>,
    pub max_simplices: Option<u64>,
    /// Cooperative per-cell wall-clock cap, checked as each cell finishes.
    pub max_seconds_per_cell: Option<u64>,
    pub hom_dims: Option<Vec<usize>>,
    pub trials: Option<usize>,
    pub n_schedule: Option<Vec<usize>>,
    pub digit_depth: Option<u32>,
    pub shape: Option<ShapeConfig>,
    pub cdf: Option<CdfConfig>,
    pub periodic: Option<PeriodicConfig>,
    pub arrowhead: Option<ArrowheadConfig>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShapeConfig {
    pub kind: Option<String>,
    pub separation: Option<f64>,
    pub level: Option<u32>,
    pub major_radius: Option<f64>,
    pub minor_radius: Option<f64>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CdfConfig {
    /// Sample sizes to build CDFs for; defaults to the n schedule.
    pub ns: Option<Vec<usize>>,
    /// Rescaling exponent m (lengths multiplied by n^(1/m)). The exponent is
    /// always supplied explicitly; the tool never infers it from data.
    pub rescale_m: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PeriodicConfig {
    pub separation: Option<f64>,
    pub k_list: Option<Vec<u64>>,
    pub j_max: Option<u32>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowheadConfig {
    pub levels: Option<Vec<u32>>,
}

impl ConfigFile {
    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }

    pub fn resolve(&self) -> ExperimentConfig {
        ExperimentConfig {
            master_seed: self.master_seed.unwrap_or(0x5eed_2026),
            output_dir: self
                .output_dir
                .clone()
                .unwrap_or_else(|| PathBuf::from("phdim-out")),
            threads: self.threads.unwrap_or(0),
            max_simplices: self.max_simplices.unwrap_or(DEFAULT_MAX_SIMPLICES),
            max_seconds_per_cell: self.max_seconds_per_cell.unwrap_or(600),
            hom_dims: self.hom_dims.clone().unwrap_or_else(|| vec![0]),
            trials: self.trials.unwrap_or(5),
            n_schedule: self
                .n_schedule
                .clone()
                .unwrap_or_else(|| (6..=13).map(|k| 1usize << k).collect()),
            digit_depth: self.digit_depth.unwrap_or(DEFAULT_DIGIT_DEPTH),
            shape: self.shape.clone().unwrap_or_default(),
            cdf_ns: self.cdf.as_ref().and_then(|c| c.ns.clone()),
            rescale_m: self.cdf.as_ref().and_then(|c| c.rescale_m),
            periodic: self.periodic.clone(),
            arrowhead_levels: self
                .arrowhead
                .as_ref()
                .and_then(|a| a.levels.clone())
                .unwrap_or_else(|| vec![4, 6]),
        }
    }
}

/// Fully resolved configuration, the single source of truth for a run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub master_seed: u64,
    pub output_dir: PathBuf,
    pub threads: usize,
    pub max_simplices: u64,
    pub max_seconds_per_cell: u64,
    pub hom_dims: Vec<usize>,
    pub trials: usize,
    pub n_schedule: Vec<usize>,
    pub digit_depth: u32,
    pub shape: ShapeConfig,
    pub cdf_ns: Option<Vec<usize>>,
    pub rescale_m: Option<f64>,
    pub periodic: Option<PeriodicConfig>,
    pub arrowhead_levels: Vec<u32>,
}

impl ExperimentConfig {
    pub fn shape_spec(&self) -> Result<ShapeSpec> {
        let kind_name = self.shape.kind.as_deref().unwrap_or("square");
        let s = &self.shape;
        let kind = match kind_name {
            "disk" => ShapeKind::Disk,
            "square" => ShapeKind::Square,
            "triangle" => ShapeKind::Triangle,
            "cube" => ShapeKind::Cube,
            "interval" => ShapeKind::Interval,
            "torus" => ShapeKind::Torus {
                major_radius: s.major_radius.unwrap_or(5.0),
                minor_radius: s.minor_radius.unwrap_or(3.0),
            },
            "beta_square" => ShapeKind::BetaSquare {
                alpha: s.alpha.unwrap_or(2.0),
                beta: s.beta.unwrap_or(2.0),
            },
            "cantor_set" => ShapeKind::CantorSet,
            "cantor_cross_interval" => ShapeKind::CantorCrossInterval,
            "cantor_dust_2d" => ShapeKind::CantorDust2d,
            "cantor_dust_3d" => ShapeKind::CantorDust3d,
            "sierpinski" => ShapeKind::Sierpinski {
                separation: s.separation.unwrap_or(0.0),
            },
            "arrowhead" => ShapeKind::Arrowhead {
                level: s.level.unwrap_or(6),
            },
            other => bail!(
                "unknown shape '{other}' (expected one of: disk, square, triangle, cube, \
                 torus, interval, beta_square, cantor_set, cantor_cross_interval, \
                 cantor_dust_2d, cantor_dust_3d, sierpinski, arrowhead)"
            ),
        };
        let spec = ShapeSpec::new(kind).with_digit_depth(self.digit_depth);
        spec.validate()?;
        Ok(spec)
    }

    /// Short shape tag used in file names.
    pub fn shape_tag(&self) -> String {
        self.shape
            .kind
            .clone()
            .unwrap_or_else(|| "square".to_string())
    }

    /// Stable hash of everything that determines the outputs (excludes the
    /// output directory and thread count, which do not affect results).
    pub fn result_hash(&self, command: &str) -> String {
        let mut key = format!(
            "v{}|{}|seed={}|simplices={}|dims={:?}|trials={}|schedule={:?}|depth={}|shape={:?}|cdf_ns={:?}|m={:?}|periodic={:?}|levels={:?}",
            env!("CARGO_PKG_VERSION"),
            command,
            self.master_seed,
            self.max_simplices,
            self.hom_dims,
            self.trials,
            self.n_schedule,
            self.digit_depth,
            self.shape,
            self.cdf_ns,
            self.rescale_m,
            self.periodic,
            self.arrowhead_levels,
        );
        key.push('|');
        format!("{:016x}", fnv1a64(key.as_bytes()))
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_schedule.is_empty() {
            bail!("n_schedule is empty");
        }
        if self.n_schedule.windows(2).any(|w| w[0] >= w[1]) {
            bail!("n_schedule must be strictly increasing");
        }
        if self.n_schedule[0] == 0 {
            bail!("n_schedule entries must be positive");
        }
        if self.trials == 0 {
            bail!("trials must be at least 1");
        }
        if self.hom_dims.is_empty() {
            bail!("hom_dims is empty");
        }
        if let Some(&d) = self.hom_dims.iter().find(|&&d| d > 2) {
            bail!("homological dimension {d} unsupported (use 0, 1 or 2)");
        }
        self.shape_spec()?;
        Ok(())
    }
}

pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_roundtrip_is_lossless() {
        let file = ConfigFile {
            master_seed: Some(77),
            output_dir: Some(PathBuf::from("out")),
            threads: Some(2),
            max_simplices: Some(1000),
            max_seconds_per_cell: Some(60),
            hom_dims: Some(vec![0, 1]),
            trials: Some(3),
            n_schedule: Some(vec![16, 32, 64]),
            digit_depth: Some(48),
            shape: Some(ShapeConfig {
                kind: Some("sierpinski".into()),
                separation: Some(2.0),
                ..ShapeConfig::default()
            }),
            cdf: Some(CdfConfig {
                ns: Some(vec![100, 200]),
                rescale_m: Some(1.585),
            }),
            periodic: Some(PeriodicConfig {
                separation: Some(2.0),
                k_list: Some(vec![1, 2]),
                j_max: Some(5),
            }),
            arrowhead: Some(ArrowheadConfig {
                levels: Some(vec![4, 6]),
            }),
        };
        let text = toml::to_string(&file).unwrap();
        let back: ConfigFile = toml::from_str(&text).unwrap();
        assert_eq!(file, back);
    }

    #[test]
    fn defaults_resolve() {
        let cfg = ConfigFile::default().resolve();
        assert_eq!(cfg.trials, 5);
        assert_eq!(cfg.hom_dims, vec![0]);
        assert_eq!(cfg.n_schedule.first(), Some(&64));
        cfg.validate().unwrap();
        assert_eq!(cfg.shape_spec().unwrap().ambient_dim(), 2);
    }

    #[test]
    fn unknown_shape_rejected() {
        let mut cfg = ConfigFile::default().resolve();
        cfg.shape.kind = Some("klein_bottle".into());
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn hash_tracks_result_relevant_fields_only() {
        let a = ConfigFile::default().resolve();
        let mut b = a.clone();
        b.output_dir = PathBuf::from("elsewhere");
        b.threads = 7;
        assert_eq!(a.result_hash("dimension"), b.result_hash("dimension"));
        let mut c = a.clone();
        c.master_seed += 1;
        assert_ne!(a.result_hash("dimension"), c.result_hash("dimension"));
        assert_ne!(a.result_hash("dimension"), a.result_hash("cdf"));
    }
}

//! Growth-exponent estimation.
//!
//! For a measure, the sum of persistence interval lengths `ell(n)` computed
//! on an `n`-point sample grows like `c * n^alpha` with
//! `alpha = (d - 1) / d`, `d` the dimension. This module collects `(n, ell)`
//! series over seeded trials, fits `alpha` by ordinary log-log least squares
//! and by extrapolating suffix-window fits to infinite window start, and
//! converts exponents to dimension estimates. A synthetic test series with a
//! known exponent and a correlation-integral comparator round out the kit.

use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{sample, PointCloud, ShapeSpec};
use crate::persistence::{
    distance_matrix, mst_interval_lengths, vr_barcode_with, CloudDistances, VrOptions,
    DEFAULT_MAX_SIMPLICES,
};
use crate::rng::SeededRng;

const SERIES_STREAM_TAG: u64 = 0x5e71e5;

/// Growth exponent `(d - 1) / d` of a space of dimension `d`.
pub fn growth_exponent_for_dimension(dimension: f64) -> f64 {
    (dimension - 1.0) / dimension
}

/// Dimension `1 / (1 - alpha)` recovering `alpha = (d - 1) / d`; estimates
/// at or above 1 map to the infinite-dimension sentinel rather than erroring,
/// since sampling noise can push an exponent past 1.
pub fn dimension_for_growth_exponent(alpha: f64) -> f64 {
    if alpha >= 1.0 {
        f64::INFINITY
    } else {
        1.0 / (1.0 - alpha)
    }
}

/// One measured cell of a scaling experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesSample {
    /// Sample size (integral for collected series; the synthetic series
    /// stores its abscissa here).
    pub n: f64,
    /// Total interval length measured on that sample.
    pub ell: f64,
    pub trial: usize,
    pub seed: u64,
    pub stream: u64,
}

/// A `(n, ell)` series over trials for one homological dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalingSeries {
    pub hom_dim: usize,
    samples: Vec<SeriesSample>,
    trials: usize,
}

impl ScalingSeries {
    pub fn from_samples(
        hom_dim: usize,
        trials: usize,
        mut samples: Vec<SeriesSample>,
    ) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::Parameter(
                "a series needs at least one sample".into(),
            ));
        }
        for s in &samples {
            if !(s.n > 0.0 && s.n.is_finite()) {
                return Err(Error::Parameter(format!("sample size {} invalid", s.n)));
            }
            if !(s.ell >= 0.0 && s.ell.is_finite()) {
                return Err(Error::Parameter(format!("ell value {} invalid", s.ell)));
            }
        }
        samples.sort_by(|a, b| {
            (a.n, a.trial)
                .partial_cmp(&(b.n, b.trial))
                .expect("finite sample sizes")
        });
        if samples
            .windows(2)
            .any(|w| w[0].n == w[1].n && w[0].trial == w[1].trial)
        {
            return Err(Error::Parameter(
                "duplicate (n, trial) cell in series".into(),
            ));
        }
        Ok(ScalingSeries {
            hom_dim,
            samples,
            trials,
        })
    }

    pub fn samples(&self) -> &[SeriesSample] {
        &self.samples
    }

    pub fn trials(&self) -> usize {
        self.trials
    }

    /// Distinct sample sizes, ascending.
    pub fn n_values(&self) -> Vec<f64> {
        let mut out: Vec<f64> = Vec::new();
        for s in &self.samples {
            if out.last() != Some(&s.n) {
                out.push(s.n);
            }
        }
        out
    }

    /// Mean ell over trials at each n, ascending in n.
    pub fn mean_ell_per_n(&self) -> Vec<(f64, f64)> {
        let mut out: Vec<(f64, f64, usize)> = Vec::new();
        for s in &self.samples {
            match out.last_mut() {
                Some(last) if last.0 == s.n => {
                    last.1 += s.ell;
                    last.2 += 1;
                }
                _ => out.push((s.n, s.ell, 1)),
            }
        }
        out.into_iter()
            .map(|(n, sum, count)| (n, sum / count as f64))
            .collect()
    }

    /// CSV with columns `hom_dim,n,trial,seed,ell`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("hom_dim,n,trial,seed,ell\n");
        for s in &self.samples {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                self.hom_dim, s.n, s.trial, s.seed, s.ell
            ));
        }
        out
    }
}

/// Options for [`collect_series_with`].
#[derive(Debug, Clone)]
pub struct SeriesOptions {
    pub max_simplices: u64,
}

impl Default for SeriesOptions {
    fn default() -> Self {
        SeriesOptions {
            max_simplices: DEFAULT_MAX_SIMPLICES,
        }
    }
}

/// Sample a fresh cloud for every `(n, trial)` cell and record the total
/// interval length in `hom_dim`. Cells run in parallel; each derives its own
/// stream from the master generator, so results do not depend on scheduling.
pub fn collect_series(
    spec: &ShapeSpec,
    hom_dim: usize,
    n_schedule: &[usize],
    trials: usize,
    rng: &SeededRng,
) -> Result<ScalingSeries> {
    collect_series_with(
        spec,
        hom_dim,
        n_schedule,
        trials,
        rng,
        &SeriesOptions::default(),
    )
}

pub fn collect_series_with(
    spec: &ShapeSpec,
    hom_dim: usize,
    n_schedule: &[usize],
    trials: usize,
    rng: &SeededRng,
    options: &SeriesOptions,
) -> Result<ScalingSeries> {
    spec.validate()?;
    if hom_dim > 2 {
        return Err(Error::Unsupported(format!(
            "homological dimension {hom_dim} (supported: 0, 1, 2)"
        )));
    }
    if n_schedule.is_empty() || trials == 0 {
        return Err(Error::Parameter(
            "need a nonempty schedule and at least one trial".into(),
        ));
    }
    if n_schedule.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Parameter(
            "sample sizes must be strictly increasing".into(),
        ));
    }
    if n_schedule[0] == 0 {
        return Err(Error::Parameter("sample sizes must be positive".into()));
    }
    let cells: Vec<(usize, usize)> = n_schedule
        .iter()
        .flat_map(|&n| (0..trials).map(move |t| (n, t)))
        .collect();
    let vr_options = VrOptions {
        max_simplices: options.max_simplices,
    };
    let samples: Result<Vec<SeriesSample>> = cells
        .par_iter()
        .map(|&(n, trial)| {
            let cell_rng = rng.derive(&[SERIES_STREAM_TAG, hom_dim as u64, n as u64, trial as u64]);
            measure_cell(spec, hom_dim, n, trial, cell_rng, &vr_options)
                .map_err(|e| e.in_cell(n, trial))
        })
        .collect();
    ScalingSeries::from_samples(hom_dim, trials, samples?)
}

fn measure_cell(
    spec: &ShapeSpec,
    hom_dim: usize,
    n: usize,
    trial: usize,
    cell_rng: SeededRng,
    vr_options: &VrOptions,
) -> Result<SeriesSample> {
    let seed = cell_rng.seed();
    let stream = cell_rng.stream_id();
    let mut r = cell_rng;
    let cloud = sample(spec, n, &mut r)?;
    let ell = total_interval_length(&cloud, hom_dim, vr_options)?;
    Ok(SeriesSample {
        n: n as f64,
        ell,
        trial,
        seed,
        stream,
    })
}

/// Total interval length of one cloud in one homological dimension, using
/// the MST shortcut for dimension 0.
pub fn total_interval_length(
    cloud: &PointCloud,
    hom_dim: usize,
    vr_options: &VrOptions,
) -> Result<f64> {
    if hom_dim == 0 {
        Ok(mst_interval_lengths(&CloudDistances::new(cloud))
            .iter()
            .sum())
    } else {
        let dist = distance_matrix(cloud)?;
        let barcodes = vr_barcode_with(&dist, hom_dim, vr_options)?;
        Ok(barcodes[hom_dim].total_length())
    }
}

/// How a slope estimate was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FitMethod {
    GlobalFit,
    Asymptotic,
    Correlation,
}

impl std::fmt::Display for FitMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FitMethod::GlobalFit => write!(f, "global_fit"),
            FitMethod::Asymptotic => write!(f, "asymptotic"),
            FitMethod::Correlation => write!(f, "correlation"),
        }
    }
}

/// Least-squares fit over one index window of the log-log sequence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindowFit {
    /// 1-based first index of the window.
    pub p: usize,
    /// 1-based last index of the window.
    pub q: usize,
    pub alpha: f64,
    pub intercept: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct FitDiagnostics {
    /// Root-mean-square residual of the defining regression.
    pub residual_rms: f64,
    /// 1-based index window of the log-log points used.
    pub window: (usize, usize),
    pub points_used: usize,
    /// Sample sizes dropped because their (mean) ell was not positive.
    pub excluded_n: Vec<f64>,
    /// Set when an asymptotic fit had too few windows and fell back.
    pub fallback_to_global: bool,
    /// Slope of the alpha-versus-1/p regression (asymptotic method only).
    pub xi_slope: Option<f64>,
    /// The per-window fits behind an asymptotic estimate.
    pub window_alphas: Vec<WindowFit>,
}

/// A fitted growth exponent with its derived dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct SlopeEstimate {
    pub alpha: f64,
    /// Intercept of the log-log line (the log of the scaling constant).
    pub intercept: f64,
    /// `1 / (1 - alpha)` for growth-exponent fits (infinite sentinel for
    /// `alpha >= 1`); equal to `alpha` itself for the correlation method,
    /// where the fitted slope already is the dimension.
    pub dimension: f64,
    pub method: FitMethod,
    pub diagnostics: FitDiagnostics,
}

impl SlopeEstimate {
    /// Plain-text report of the estimate.
    pub fn to_report(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("method: {}\n", self.method));
        out.push_str(&format!("alpha: {}\n", self.alpha));
        out.push_str(&format!("intercept: {}\n", self.intercept));
        out.push_str(&format!("dimension: {}\n", self.dimension));
        out.push_str(&format!(
            "window: {}..{}\n",
            self.diagnostics.window.0, self.diagnostics.window.1
        ));
        out.push_str(&format!("points_used: {}\n", self.diagnostics.points_used));
        out.push_str(&format!(
            "residual_rms: {}\n",
            self.diagnostics.residual_rms
        ));
        if let Some(b) = self.diagnostics.xi_slope {
            out.push_str(&format!("xi_slope: {b}\n"));
        }
        if self.diagnostics.fallback_to_global {
            out.push_str("fallback_to_global: true\n");
        }
        if !self.diagnostics.excluded_n.is_empty() {
            let ns: Vec<String> = self
                .diagnostics
                .excluded_n
                .iter()
                .map(|n| format!("{n}"))
                .collect();
            out.push_str(&format!("excluded_n: {}\n", ns.join(" ")));
        }
        out
    }
}

/// Centered ordinary least squares; returns (intercept, slope, residual rms).
fn line_fit(points: &[(f64, f64)]) -> Option<(f64, f64, f64)> {
    let m = points.len();
    if m < 2 {
        return None;
    }
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / m as f64;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / m as f64;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for &(x, y) in points {
        sxx += (x - mean_x) * (x - mean_x);
        sxy += (x - mean_x) * (y - mean_y);
    }
    if sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let rss: f64 = points
        .iter()
        .map(|&(x, y)| {
            let r = y - (intercept + slope * x);
            r * r
        })
        .sum();
    Some((intercept, slope, (rss / m as f64).sqrt()))
}

/// Per-n aggregated log-log points `(ln n, ln mean_ell)`, with the sample
/// sizes whose mean ell was not positive reported separately.
fn aggregated_loglog_points(series: &ScalingSeries) -> (Vec<(f64, f64)>, Vec<f64>) {
    let mut points = Vec::new();
    let mut excluded = Vec::new();
    for (n, mean_ell) in series.mean_ell_per_n() {
        if mean_ell > 0.0 {
            points.push((n.ln(), mean_ell.ln()));
        } else {
            excluded.push(n);
        }
    }
    (points, excluded)
}

/// Ordinary least squares on `(log n, log mean_ell)` over the whole series.
pub fn global_loglog_fit(series: &ScalingSeries) -> Result<SlopeEstimate> {
    let (points, excluded) = aggregated_loglog_points(series);
    if points.len() < 2 {
        return Err(Error::Fit(format!(
            "only {} usable sample sizes (need at least 2)",
            points.len()
        )));
    }
    let (intercept, slope, rms) =
        line_fit(&points).ok_or_else(|| Error::Fit("degenerate log-log data".into()))?;
    Ok(SlopeEstimate {
        alpha: slope,
        intercept,
        dimension: dimension_for_growth_exponent(slope),
        method: FitMethod::GlobalFit,
        diagnostics: FitDiagnostics {
            residual_rms: rms,
            window: (1, points.len()),
            points_used: points.len(),
            excluded_n: excluded,
            ..FitDiagnostics::default()
        },
    })
}

/// Like [`global_loglog_fit`] but over the raw per-trial points instead of
/// per-n means.
pub fn pooled_loglog_fit(series: &ScalingSeries) -> Result<SlopeEstimate> {
    let mut points = Vec::new();
    let mut excluded = Vec::new();
    for s in series.samples() {
        if s.ell > 0.0 {
            points.push((s.n.ln(), s.ell.ln()));
        } else if excluded.last() != Some(&s.n) {
            excluded.push(s.n);
        }
    }
    if points.len() < 2 {
        return Err(Error::Fit(format!(
            "only {} usable samples (need at least 2)",
            points.len()
        )));
    }
    let (intercept, slope, rms) =
        line_fit(&points).ok_or_else(|| Error::Fit("degenerate log-log data".into()))?;
    Ok(SlopeEstimate {
        alpha: slope,
        intercept,
        dimension: dimension_for_growth_exponent(slope),
        method: FitMethod::GlobalFit,
        diagnostics: FitDiagnostics {
            residual_rms: rms,
            window: (1, series.n_values().len()),
            points_used: points.len(),
            excluded_n: excluded,
            ..FitDiagnostics::default()
        },
    })
}

/// Least-squares fits on every index window `p..=q` (1-based, into the
/// usable aggregated log-log sequence) of length at least 3, for fixed `q`.
pub fn window_fits(series: &ScalingSeries, q: usize) -> Result<Vec<WindowFit>> {
    let (points, _) = aggregated_loglog_points(series);
    if q > points.len() {
        return Err(Error::Parameter(format!(
            "window end {q} exceeds the {} usable sample sizes",
            points.len()
        )));
    }
    let mut fits = Vec::new();
    for p in 1..=q.saturating_sub(2) {
        if let Some((intercept, slope, _)) = line_fit(&points[p - 1..q]) {
            fits.push(WindowFit {
                p,
                q,
                alpha: slope,
                intercept,
            });
        }
    }
    Ok(fits)
}

/// Extrapolate the suffix-window slopes to an infinite window start.
///
/// With `q` fixed at the last index, the window slopes `alpha(p, q)` are
/// regressed linearly against `xi = 1/p` and the intercept at `xi = 0` is
/// the estimate. With fewer than 4 windows the global fit is returned with
/// `fallback_to_global` set.
pub fn asymptotic_alpha(series: &ScalingSeries) -> Result<SlopeEstimate> {
    let (points, excluded) = aggregated_loglog_points(series);
    let q = points.len();
    let fits = if q >= 3 {
        window_fits(series, q)?
    } else {
        Vec::new()
    };
    if fits.len() < 4 {
        let mut estimate = global_loglog_fit(series)?;
        estimate.diagnostics.fallback_to_global = true;
        return Ok(estimate);
    }
    let xi_points: Vec<(f64, f64)> = fits.iter().map(|w| (1.0 / w.p as f64, w.alpha)).collect();
    let (alpha_at_zero, xi_slope, rms) =
        line_fit(&xi_points).ok_or_else(|| Error::Fit("degenerate window-slope data".into()))?;
    let full_window_intercept = fits
        .iter()
        .find(|w| w.p == 1)
        .map(|w| w.intercept)
        .unwrap_or(f64::NAN);
    Ok(SlopeEstimate {
        alpha: alpha_at_zero,
        intercept: full_window_intercept,
        dimension: dimension_for_growth_exponent(alpha_at_zero),
        method: FitMethod::Asymptotic,
        diagnostics: FitDiagnostics {
            residual_rms: rms,
            window: (1, q),
            points_used: fits.len(),
            excluded_n: excluded,
            fallback_to_global: false,
            xi_slope: Some(xi_slope),
            window_alphas: fits,
        },
    })
}

/// Two-variable variant of [`asymptotic_alpha`]: window slopes for several
/// window ends `q` are fitted to the plane `a + b xi + c eta` with
/// `xi = 1/p`, `eta = 1/q`, and the value at the origin is the estimate.
/// With a single `q` the plane is rank-deficient (`eta` constant) and the
/// one-variable extrapolation absorbs the `eta` term into its intercept, so
/// this form only adds information when `q_list` has at least two entries.
pub fn asymptotic_alpha_2d(series: &ScalingSeries, q_list: &[usize]) -> Result<SlopeEstimate> {
    let distinct: std::collections::BTreeSet<usize> = q_list.iter().copied().collect();
    if distinct.len() < 2 {
        return Err(Error::Parameter(
            "the two-variable extrapolation needs at least two distinct window ends".into(),
        ));
    }
    let mut fits = Vec::new();
    for &q in &distinct {
        fits.extend(window_fits(series, q)?);
    }
    if fits.len() < 6 {
        return Err(Error::Fit(format!(
            "only {} windows across the requested ends (need at least 6)",
            fits.len()
        )));
    }
    let points: Vec<(f64, f64, f64)> = fits
        .iter()
        .map(|w| (1.0 / w.p as f64, 1.0 / w.q as f64, w.alpha))
        .collect();
    let (a, _b, _c, rms) =
        plane_fit(&points).ok_or_else(|| Error::Fit("degenerate window-slope surface".into()))?;
    let q_max = *distinct.iter().max().unwrap();
    let full_window_intercept = fits
        .iter()
        .find(|w| w.p == 1 && w.q == q_max)
        .map(|w| w.intercept)
        .unwrap_or(f64::NAN);
    Ok(SlopeEstimate {
        alpha: a,
        intercept: full_window_intercept,
        dimension: dimension_for_growth_exponent(a),
        method: FitMethod::Asymptotic,
        diagnostics: FitDiagnostics {
            residual_rms: rms,
            window: (1, q_max),
            points_used: fits.len(),
            excluded_n: aggregated_loglog_points(series).1,
            fallback_to_global: false,
            xi_slope: None,
            window_alphas: fits,
        },
    })
}

/// Least squares for `z = a + b x + c y`; returns (a, b, c, residual rms).
fn plane_fit(points: &[(f64, f64, f64)]) -> Option<(f64, f64, f64, f64)> {
    let m = points.len();
    if m < 3 {
        return None;
    }
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / m as f64;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / m as f64;
    let mean_z = points.iter().map(|p| p.2).sum::<f64>() / m as f64;
    let (mut sxx, mut sxy, mut syy, mut sxz, mut syz) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for &(x, y, z) in points {
        let (dx, dy, dz) = (x - mean_x, y - mean_y, z - mean_z);
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
        sxz += dx * dz;
        syz += dy * dz;
    }
    let det = sxx * syy - sxy * sxy;
    if det.abs() < 1e-12 * (sxx * syy).max(1e-300) {
        return None;
    }
    let b = (sxz * syy - syz * sxy) / det;
    let c = (syz * sxx - sxz * sxy) / det;
    let a = mean_z - b * mean_x - c * mean_y;
    let rss: f64 = points
        .iter()
        .map(|&(x, y, z)| {
            let r = z - (a + b * x + c * y);
            r * r
        })
        .sum();
    Some((a, b, c, (rss / m as f64).sqrt()))
}

/// Synthetic validation series `f(x) = (100 x + x^2 / 10) (1 + a eps(x))`
/// on a positive increasing grid, where `eps` are unit-step increments of a
/// Wiener path (i.i.d. standard normals) and `a` is `noise_amplitude`.
/// Amplitude 0 gives the deterministic curve; its exponent tends to 2 as the
/// grid extends. Values driven negative by extreme noise are clamped to 0
/// and excluded by the fits.
pub fn synthetic_test_series(
    x_grid: &[f64],
    noise_amplitude: f64,
    rng: &mut SeededRng,
) -> Result<ScalingSeries> {
    if x_grid.is_empty() {
        return Err(Error::Parameter("empty grid".into()));
    }
    if x_grid[0] <= 0.0 || x_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Parameter(
            "grid values must be positive and strictly increasing".into(),
        ));
    }
    if !noise_amplitude.is_finite() || noise_amplitude < 0.0 {
        return Err(Error::Parameter(format!(
            "noise amplitude must be a finite value >= 0, got {noise_amplitude}"
        )));
    }
    let seed = rng.seed();
    let stream = rng.stream_id();
    let samples = x_grid
        .iter()
        .map(|&x| {
            let base = 100.0 * x + 0.1 * x * x;
            let eps: f64 = if noise_amplitude == 0.0 {
                0.0
            } else {
                rng.sample(StandardNormal)
            };
            SeriesSample {
                n: x,
                ell: (base * (1.0 + noise_amplitude * eps)).max(0.0),
                trial: 0,
                seed,
                stream,
            }
        })
        .collect();
    ScalingSeries::from_samples(0, 1, samples)
}

/// Restrict a series to samples with `lo <= n <= hi`.
pub fn restrict_series(series: &ScalingSeries, lo: f64, hi: f64) -> Result<ScalingSeries> {
    let samples: Vec<SeriesSample> = series
        .samples()
        .iter()
        .filter(|s| s.n >= lo && s.n <= hi)
        .cloned()
        .collect();
    ScalingSeries::from_samples(series.hom_dim, series.trials(), samples)
}

/// Correlation-integral dimension: counts ordered pairs within range `r`
/// over a grid, fits `log C(r)` against `log r`. The fitted slope is itself
/// the dimension estimate (no exponent transform).
pub fn correlation_dimension(cloud: &PointCloud, r_grid: &[f64]) -> Result<SlopeEstimate> {
    let n = cloud.len();
    if n < 2 {
        return Err(Error::Parameter(
            "correlation integral needs at least 2 points".into(),
        ));
    }
    if r_grid.is_empty() || r_grid[0] <= 0.0 || r_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Parameter(
            "r grid must be positive and strictly increasing".into(),
        ));
    }
    // Histogram pair distances into the grid cells, then prefix-sum to get
    // counts of pairs within each radius.
    let mut bucket = vec![0u64; r_grid.len()];
    for i in 1..n {
        let pi = cloud.point(i);
        for j in 0..i {
            let dist = crate::persistence::euclidean_distance(pi, cloud.point(j));
            let idx = r_grid.partition_point(|&r| r < dist);
            if idx < r_grid.len() {
                bucket[idx] += 1;
            }
        }
    }
    let mut points = Vec::with_capacity(r_grid.len());
    let mut excluded = Vec::new();
    let mut within = 0u64;
    for (k, &r) in r_grid.iter().enumerate() {
        within += bucket[k];
        // Ordered pairs: twice the unordered count, over n^2.
        let c = 2.0 * within as f64 / (n as f64 * n as f64);
        if c > 0.0 {
            points.push((r.ln(), c.ln()));
        } else {
            excluded.push(r);
        }
    }
    if points.len() < 2 {
        return Err(Error::Fit(format!(
            "only {} radii with nonzero counts (need at least 2)",
            points.len()
        )));
    }
    let (intercept, slope, rms) =
        line_fit(&points).ok_or_else(|| Error::Fit("degenerate correlation data".into()))?;
    Ok(SlopeEstimate {
        alpha: slope,
        intercept,
        dimension: slope,
        method: FitMethod::Correlation,
        diagnostics: FitDiagnostics {
            residual_rms: rms,
            window: (1, points.len()),
            points_used: points.len(),
            excluded_n: excluded,
            ..FitDiagnostics::default()
        },
    })
}

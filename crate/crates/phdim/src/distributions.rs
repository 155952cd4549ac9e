//! Distributions of barcode interval lengths.
//!
//! Unrescaled, the empirical CDF of interval lengths degenerates to a step
//! at zero as the sample grows; multiplying the lengths by `n^(1/m)` can
//! reveal a nontrivial limit. For the uniform unit interval the law of an H0
//! length is known in closed form, `1 - (1 - t)^n`, with the rate-one
//! exponential as its `t/n` rescaling limit. For self-similar sets the
//! rescaled CDFs need not converge at all: along `n = k * 3^j` the separated
//! Sierpinski family settles into one limit per residue class of `k`, which
//! [`periodic_family_probe`] exposes as data.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{sample, ShapeKind, ShapeSpec};
use crate::persistence::{distance_matrix, mst_interval_lengths, vr_barcode, CloudDistances};
use crate::rng::SeededRng;

/// Stream label under which [`periodic_family_snapshot`] derives its
/// per-cell generator; exposed so external runners can record the exact
/// streams their cells will use.
pub const PROBE_STREAM_TAG: u64 = 0xcdf5;

/// Ceiling on the sample sizes a family probe will attempt.
pub const PROBE_MAX_POINTS: u64 = 200_000;

/// Step CDF of a multiset of interval lengths.
///
/// `rescale_exponent` is 0 while unrescaled and `m` after the values have
/// been multiplied by `n_points^(1/m)`. An empty value list with
/// `hom_dim >= 1` is allowed but leaves the CDF undefined.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalCDF {
    values: Vec<f64>,
    n_points: usize,
    hom_dim: usize,
    rescale_exponent: f64,
}

/// Build the unrescaled empirical CDF of interval lengths measured on an
/// `n_points`-sample barcode of homological dimension `hom_dim`.
pub fn empirical_cdf(lengths: &[f64], n_points: usize, hom_dim: usize) -> Result<EmpiricalCDF> {
    if lengths.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
        return Err(Error::Parameter(
            "interval lengths must be finite and nonnegative".into(),
        ));
    }
    // A sample of n >= 2 points always has n - 1 reduced H0 intervals, so an
    // empty dimension-0 list is a caller bug; a single point legitimately
    // has none and yields an undefined CDF like the higher dimensions.
    if lengths.is_empty() && hom_dim == 0 && n_points >= 2 {
        return Err(Error::Parameter(
            "dimension-0 length list is empty (impossible for n >= 2)".into(),
        ));
    }
    let mut values = lengths.to_vec();
    values.sort_unstable_by(|a, b| a.partial_cmp(b).expect("finite lengths"));
    Ok(EmpiricalCDF {
        values,
        n_points,
        hom_dim,
        rescale_exponent: 0.0,
    })
}

impl EmpiricalCDF {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn hom_dim(&self) -> usize {
        self.hom_dim
    }

    pub fn rescale_exponent(&self) -> f64 {
        self.rescale_exponent
    }

    /// False when no intervals back the CDF (possible for `hom_dim >= 1`).
    pub fn is_defined(&self) -> bool {
        !self.values.is_empty()
    }

    /// `F(t)`: fraction of values `<= t` (right-continuous).
    pub fn eval(&self, t: f64) -> f64 {
        debug_assert!(self.is_defined());
        self.values.partition_point(|&v| v <= t) as f64 / self.values.len() as f64
    }

    /// Left limit `F(t-)`: fraction of values strictly below `t`.
    pub fn eval_left(&self, t: f64) -> f64 {
        debug_assert!(self.is_defined());
        self.values.partition_point(|&v| v < t) as f64 / self.values.len() as f64
    }

    /// Multiply every value by `n_points^(1/m)`. Evaluating the result at
    /// `n^(1/m) t` equals evaluating the original at `t`.
    pub fn rescale(&self, m: f64) -> Result<EmpiricalCDF> {
        if m.is_nan() || m <= 0.0 {
            return Err(Error::Parameter(format!(
                "rescaling exponent must be positive, got {m}"
            )));
        }
        if self.rescale_exponent != 0.0 {
            return Err(Error::IncompatibleRescale(self.rescale_exponent, m));
        }
        let factor = (self.n_points as f64).powf(1.0 / m);
        Ok(EmpiricalCDF {
            values: self.values.iter().map(|v| v * factor).collect(),
            n_points: self.n_points,
            hom_dim: self.hom_dim,
            rescale_exponent: m,
        })
    }

    /// CSV with columns `value,cumulative_probability` and `#`-prefixed
    /// metadata header lines.
    pub fn to_csv(&self, metadata: &[(&str, String)]) -> String {
        let mut out = String::new();
        for (key, value) in metadata {
            out.push_str(&format!("# {key}={value}\n"));
        }
        out.push_str(&format!("# n_points={}\n", self.n_points));
        out.push_str(&format!("# hom_dim={}\n", self.hom_dim));
        out.push_str(&format!("# rescale_exponent={}\n", self.rescale_exponent));
        out.push_str("value,cumulative_probability\n");
        let count = self.values.len() as f64;
        for (i, v) in self.values.iter().enumerate() {
            out.push_str(&format!("{},{}\n", v, (i + 1) as f64 / count));
        }
        out
    }
}

/// Anything a Kolmogorov-Smirnov distance can be taken against.
pub trait CumulativeDistribution {
    fn eval(&self, t: f64) -> f64;

    /// Left limit; continuous distributions inherit `eval`.
    fn eval_left(&self, t: f64) -> f64 {
        self.eval(t)
    }

    /// Jump points of a step CDF; empty for continuous distributions.
    fn jump_points(&self) -> &[f64] {
        &[]
    }

    /// Rescaling exponent, when the notion applies.
    fn rescale_exponent(&self) -> Option<f64> {
        None
    }

    fn is_defined(&self) -> bool {
        true
    }
}

impl CumulativeDistribution for EmpiricalCDF {
    fn eval(&self, t: f64) -> f64 {
        EmpiricalCDF::eval(self, t)
    }

    fn eval_left(&self, t: f64) -> f64 {
        EmpiricalCDF::eval_left(self, t)
    }

    fn jump_points(&self) -> &[f64] {
        &self.values
    }

    fn rescale_exponent(&self) -> Option<f64> {
        Some(self.rescale_exponent)
    }

    fn is_defined(&self) -> bool {
        EmpiricalCDF::is_defined(self)
    }
}

/// `F(t) = 1 - (1 - t)^n`, the law of one H0 interval length for `n` uniform
/// points on the unit interval, clamped to [0, 1] outside the unit range.
pub fn closed_form_interval_cdf(n: u64, t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else if t >= 1.0 {
        1.0
    } else if n <= i32::MAX as u64 {
        1.0 - (1.0 - t).powi(n as i32)
    } else {
        1.0 - (1.0 - t).powf(n as f64)
    }
}

/// The rate-one exponential CDF `max(0, 1 - e^(-t))`, the `t/n` rescaling
/// limit of [`closed_form_interval_cdf`].
pub fn exponential_limit_cdf(t: f64) -> f64 {
    (1.0 - (-t).exp()).max(0.0)
}

/// [`closed_form_interval_cdf`] as a comparable distribution.
#[derive(Debug, Clone, Copy)]
pub struct ClosedFormIntervalCdf {
    pub n: u64,
}

impl CumulativeDistribution for ClosedFormIntervalCdf {
    fn eval(&self, t: f64) -> f64 {
        closed_form_interval_cdf(self.n, t)
    }
}

/// [`exponential_limit_cdf`] as a comparable distribution.
#[derive(Debug, Clone, Copy)]
pub struct ExponentialLimitCdf;

impl CumulativeDistribution for ExponentialLimitCdf {
    fn eval(&self, t: f64) -> f64 {
        exponential_limit_cdf(t)
    }
}

/// Sup-norm distance between two CDFs, evaluated at every jump point of
/// both (and at their left limits), which attains the supremum when at
/// least one side is a step function.
pub fn ks_distance<A, B>(a: &A, b: &B) -> Result<f64>
where
    A: CumulativeDistribution + ?Sized,
    B: CumulativeDistribution + ?Sized,
{
    if !a.is_defined() || !b.is_defined() {
        return Err(Error::UndefinedCdf);
    }
    if let (Some(ra), Some(rb)) = (a.rescale_exponent(), b.rescale_exponent()) {
        if ra != rb {
            return Err(Error::IncompatibleRescale(ra, rb));
        }
    }
    if a.jump_points().is_empty() && b.jump_points().is_empty() {
        return Err(Error::Parameter(
            "KS distance needs at least one empirical (step) CDF".into(),
        ));
    }
    let mut sup: f64 = 0.0;
    for &t in a.jump_points().iter().chain(b.jump_points()) {
        sup = sup.max((a.eval(t) - b.eval(t)).abs());
        sup = sup.max((a.eval_left(t) - b.eval_left(t)).abs());
    }
    Ok(sup)
}

/// Half-width of the level-`confidence` Dvoretzky-Kiefer-Wolfowitz band for
/// an empirical CDF over `count` observations.
pub fn dkw_bound(count: usize, confidence: f64) -> Result<f64> {
    if count == 0 {
        return Err(Error::Parameter("DKW bound needs observations".into()));
    }
    if !(confidence > 0.0 && confidence < 1.0) {
        return Err(Error::Parameter(format!(
            "confidence must lie strictly between 0 and 1, got {confidence}"
        )));
    }
    Ok(((2.0 / (1.0 - confidence)).ln() / (2.0 * count as f64)).sqrt())
}

/// One member of a rescaled CDF family over sample sizes `k * 3^j`.
#[derive(Debug, Clone, PartialEq)]
pub struct CdfFamilySnapshot {
    pub k: u64,
    pub j: u32,
    pub cdf: EmpiricalCDF,
}

/// Rescaled interval-length CDFs of the separated Sierpinski triangle along
/// the sample sizes `n = k * 3^j` for each `k` in `k_list` and
/// `j = 0..=j_max`.
///
/// The rescaling exponent is the set's similarity dimension
/// `m = log_(2+separation)(3)`. Along `j` at fixed `k` the snapshots settle
/// toward a limit; different `k` (not related by a power of 3) settle toward
/// different limits. The probe reports the snapshots and leaves convergence
/// judgments to the caller.
pub fn periodic_family_probe(
    separation: f64,
    k_list: &[u64],
    j_max: u32,
    hom_dim: usize,
    rng: &SeededRng,
) -> Result<Vec<CdfFamilySnapshot>> {
    if !(separation > 0.0 && separation.is_finite()) {
        return Err(Error::Parameter(format!(
            "the periodic family needs separation > 0, got {separation}"
        )));
    }
    if k_list.is_empty() {
        return Err(Error::Parameter("empty k list".into()));
    }
    if k_list.contains(&0) {
        return Err(Error::Parameter("k values must be positive".into()));
    }
    // Validate every requested size before starting any sampling.
    for &k in k_list {
        for j in 0..=j_max {
            let n = 3u64.checked_pow(j).and_then(|p| k.checked_mul(p));
            match n {
                Some(n) if n <= PROBE_MAX_POINTS => {}
                _ => {
                    return Err(Error::Resource {
                        what: "family sample size",
                        needed: n.unwrap_or(u64::MAX),
                        budget: PROBE_MAX_POINTS,
                    })
                }
            }
        }
    }
    let cells: Vec<(u64, u32)> = k_list
        .iter()
        .flat_map(|&k| (0..=j_max).map(move |j| (k, j)))
        .collect();
    cells
        .par_iter()
        .map(|&(k, j)| periodic_family_snapshot(separation, k, j, hom_dim, rng))
        .collect()
}

/// One cell of the periodic family: the rescaled CDF at `n = k * 3^j`.
/// Derives the same stream the batch probe would, so computing cells one at
/// a time reproduces the batch bit for bit.
pub fn periodic_family_snapshot(
    separation: f64,
    k: u64,
    j: u32,
    hom_dim: usize,
    rng: &SeededRng,
) -> Result<CdfFamilySnapshot> {
    if !(separation > 0.0 && separation.is_finite()) {
        return Err(Error::Parameter(format!(
            "the periodic family needs separation > 0, got {separation}"
        )));
    }
    if k == 0 {
        return Err(Error::Parameter("k must be positive".into()));
    }
    let n = 3u64
        .checked_pow(j)
        .and_then(|p| k.checked_mul(p))
        .filter(|&n| n <= PROBE_MAX_POINTS)
        .ok_or(Error::Resource {
            what: "family sample size",
            needed: u64::MAX,
            budget: PROBE_MAX_POINTS,
        })? as usize;
    let m = 3f64.ln() / (2.0 + separation).ln();
    let spec = ShapeSpec::new(ShapeKind::Sierpinski { separation });
    let mut cell_rng = rng.derive(&[PROBE_STREAM_TAG, k, j as u64]);
    let cloud = sample(&spec, n, &mut cell_rng)?;
    let lengths = if hom_dim == 0 {
        mst_interval_lengths(&CloudDistances::new(&cloud))
    } else {
        let dist = distance_matrix(&cloud)?;
        vr_barcode(&dist, hom_dim)?[hom_dim].lengths()
    };
    let cdf = empirical_cdf(&lengths, n, hom_dim)?.rescale(m)?;
    Ok(CdfFamilySnapshot { k, j, cdf })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn simple_cdf_values() {
        let cdf = empirical_cdf(&[1.0, 2.0, 3.0], 4, 0).unwrap();
        assert_eq!(cdf.eval(2.0), 2.0 / 3.0);
        assert_eq!(cdf.eval(0.5), 0.0);
        assert_eq!(cdf.eval(3.0), 1.0);
        assert_eq!(cdf.eval_left(2.0), 1.0 / 3.0);

        let point = empirical_cdf(&[5.0], 2, 0).unwrap();
        assert_eq!(point.eval(4.999), 0.0);
        assert_eq!(point.eval(5.0), 1.0);
    }

    #[test]
    fn empty_lengths_rules() {
        assert!(empirical_cdf(&[], 10, 0).is_err());
        let undefined = empirical_cdf(&[], 10, 1).unwrap();
        assert!(!undefined.is_defined());
        let defined = empirical_cdf(&[0.5], 10, 1).unwrap();
        assert!(ks_distance(&undefined, &defined).is_err());
        // A single point has no intervals in any dimension.
        assert!(!empirical_cdf(&[], 1, 0).unwrap().is_defined());
    }

    #[test]
    fn rescale_examples() {
        let cdf = empirical_cdf(&[0.1], 100, 0).unwrap();
        let rescaled = cdf.rescale(2.0).unwrap();
        assert!((rescaled.values()[0] - 1.0).abs() < 1e-15);
        assert_eq!(rescaled.rescale_exponent(), 2.0);
        // Double rescaling violates the precondition.
        assert!(rescaled.rescale(2.0).is_err());
        assert!(cdf.rescale(0.0).is_err());
        assert!(cdf.rescale(-1.0).is_err());
    }

    #[test]
    fn rescaling_consistency_exact() {
        let lengths = [0.03, 0.007, 0.12, 0.0449];
        let cdf = empirical_cdf(&lengths, 50, 0).unwrap();
        let m = 2.0;
        let rescaled = cdf.rescale(m).unwrap();
        let factor = 50f64.powf(1.0 / m);
        for &t in &lengths {
            assert_eq!(rescaled.eval(factor * t), cdf.eval(t));
        }
    }

    #[test]
    fn closed_form_values() {
        assert_eq!(closed_form_interval_cdf(1, 0.5), 0.5);
        assert_eq!(closed_form_interval_cdf(7, 0.0), 0.0);
        assert_eq!(closed_form_interval_cdf(7, 1.0), 1.0);
        assert_eq!(closed_form_interval_cdf(7, -3.0), 0.0);
        assert_eq!(closed_form_interval_cdf(7, 2.0), 1.0);
        let expected = 1.0 - 0.9f64.powi(10);
        assert!((closed_form_interval_cdf(10, 0.1) - expected).abs() < 1e-15);
        assert!((expected - 0.6513).abs() < 5e-5);
    }

    #[test]
    fn exponential_values() {
        assert_eq!(exponential_limit_cdf(0.0), 0.0);
        assert_eq!(exponential_limit_cdf(-1.0), 0.0);
        assert!((exponential_limit_cdf(2f64.ln()) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn closed_form_converges_to_exponential() {
        // sup_t |F_n(t/n) - (1 - e^(-t))| shrinks with n, below 0.01 at 100.
        let sup = |n: u64| {
            let mut worst = 0.0f64;
            for i in 0..=4000 {
                let t = i as f64 * 0.005;
                let d =
                    (closed_form_interval_cdf(n, t / n as f64) - exponential_limit_cdf(t)).abs();
                worst = worst.max(d);
            }
            worst
        };
        let at_10 = sup(10);
        let at_100 = sup(100);
        let at_1000 = sup(1000);
        assert!(at_100 < at_10 && at_1000 < at_100);
        assert!(at_100 <= 0.01, "sup at n=100 is {at_100}");
    }

    #[test]
    fn ks_trivial_cases() {
        let a = empirical_cdf(&[0.0], 2, 0).unwrap();
        let b = empirical_cdf(&[1.0], 2, 0).unwrap();
        assert_eq!(ks_distance(&a, &a.clone()).unwrap(), 0.0);
        assert_eq!(ks_distance(&a, &b).unwrap(), 1.0);
    }

    #[test]
    fn ks_against_analytic() {
        // Empirical CDF exactly at the quartiles of Exp(1): the sup gap is
        // attained around a jump.
        let q = |p: f64| -(1.0 - p).ln();
        let values = [q(0.25), q(0.5), q(0.75)];
        let cdf = empirical_cdf(&values, 4, 0).unwrap();
        let d = ks_distance(&cdf, &ExponentialLimitCdf).unwrap();
        // F_emp jumps to 1/3 at the 25th percentile etc.; largest gap is
        // |3/3 - 0.75| = 0.25.
        assert!((d - 0.25).abs() < 1e-12, "ks {d}");
    }

    #[test]
    fn ks_rejects_incompatible_rescaling() {
        let a = empirical_cdf(&[0.1, 0.2], 10, 0)
            .unwrap()
            .rescale(1.0)
            .unwrap();
        let b = empirical_cdf(&[0.1, 0.2], 10, 0)
            .unwrap()
            .rescale(2.0)
            .unwrap();
        assert!(matches!(
            ks_distance(&a, &b),
            Err(Error::IncompatibleRescale(_, _))
        ));
        // Analytic comparisons carry no exponent and always compare.
        assert!(ks_distance(&a, &ExponentialLimitCdf).is_ok());
    }

    #[test]
    fn dkw_bound_values() {
        // sqrt(ln(2/0.001) / (2 * 10000))
        let eps = dkw_bound(10_000, 0.999).unwrap();
        assert!((eps - 0.019494).abs() < 1e-5, "eps {eps}");
        assert!(dkw_bound(0, 0.5).is_err());
        assert!(dkw_bound(10, 1.0).is_err());
    }

    #[test]
    fn probe_rejects_bad_parameters() {
        let rng = SeededRng::new(3, 0);
        assert!(periodic_family_probe(0.0, &[1], 2, 0, &rng).is_err());
        assert!(periodic_family_probe(2.0, &[], 2, 0, &rng).is_err());
        assert!(periodic_family_probe(2.0, &[0], 2, 0, &rng).is_err());
        assert!(matches!(
            periodic_family_probe(2.0, &[1], 40, 0, &rng),
            Err(Error::Resource { .. })
        ));
    }

    #[test]
    fn probe_snapshot_shape() {
        let rng = SeededRng::new(3, 1);
        let snaps = periodic_family_probe(2.0, &[1, 2], 3, 0, &rng).unwrap();
        assert_eq!(snaps.len(), 8);
        let m = 3f64.ln() / 4f64.ln();
        for s in &snaps {
            assert_eq!(s.cdf.rescale_exponent(), m);
            assert_eq!(s.cdf.n_points() as u64, s.k * 3u64.pow(s.j));
            // Only the single-point snapshot (k = 1, j = 0) lacks intervals.
            assert_eq!(s.cdf.is_defined(), s.cdf.n_points() > 1);
        }
        // Determinism.
        let again = periodic_family_probe(2.0, &[1, 2], 3, 0, &rng).unwrap();
        assert_eq!(snaps, again);
    }

    #[test]
    fn csv_has_metadata_and_rows() {
        let cdf = empirical_cdf(&[0.25, 0.5], 3, 0).unwrap();
        let csv = cdf.to_csv(&[("shape", "square".to_string())]);
        assert!(csv.starts_with("# shape=square\n"));
        assert!(csv.contains("# n_points=3\n"));
        assert!(csv.contains("value,cumulative_probability\n"));
        assert!(csv.ends_with("0.5,1\n"));
    }

    proptest! {
        #[test]
        fn cdf_axioms(mut lengths in proptest::collection::vec(0.0f64..100.0, 1..40)) {
            let cdf = empirical_cdf(&lengths, lengths.len() + 1, 0).unwrap();
            lengths.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
            // Monotone and right-continuous with limits 0 and 1.
            let lo = lengths[0];
            let hi = lengths[lengths.len() - 1];
            prop_assert_eq!(cdf.eval(lo - 1.0), 0.0);
            prop_assert_eq!(cdf.eval(hi), 1.0);
            let mut prev = 0.0;
            for i in 0..=50 {
                let t = lo + (hi - lo) * i as f64 / 50.0;
                let v = cdf.eval(t);
                prop_assert!(v >= prev - 1e-15);
                prop_assert!((0.0..=1.0).contains(&v));
                prev = v;
            }
            // Right continuity at each jump.
            for &t in cdf.values() {
                prop_assert_eq!(cdf.eval(t), cdf.eval(t + 1e-12 * t.abs().max(1.0)));
            }
        }
    }
}

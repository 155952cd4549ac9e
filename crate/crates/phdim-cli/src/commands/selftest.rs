//! `phdim selftest`: fast end-to-end checks of the computational core.
//! Prints one pass/fail line per check; exits nonzero on any failure.

use anyhow::{bail, Result};

use phdim::distributions::{
    closed_form_interval_cdf, dkw_bound, empirical_cdf, exponential_limit_cdf, ks_distance,
    ClosedFormIntervalCdf,
};
use phdim::geometry::{sample, ShapeKind, ShapeSpec};
use phdim::persistence::{
    brute_force_barcode, distance_matrix, mst_interval_lengths, vr_barcode, CloudDistances,
};
use phdim::rng::SeededRng;
use phdim::scaling::{asymptotic_alpha, global_loglog_fit, restrict_series, synthetic_test_series};

pub fn run(seed: u64) -> Result<()> {
    let mut failures = 0;
    let mut check = |name: &str, detail: String, ok: bool| {
        println!("{} {name}: {detail}", if ok { "PASS" } else { "FAIL" });
        if !ok {
            failures += 1;
        }
    };

    // Engine against the full-reduction oracle on random clouds.
    {
        let mut rng = SeededRng::new(seed, 101);
        let mut mismatches = 0;
        let trials = 200;
        for trial in 0..trials {
            let n = 2 + (trial * 7 + 3) % 13;
            let spec = if trial % 2 == 0 {
                ShapeSpec::new(ShapeKind::Cube)
            } else {
                ShapeSpec::new(ShapeKind::Square)
            };
            let cloud = sample(&spec, n, &mut rng)?;
            let dist = distance_matrix(&cloud)?;
            if vr_barcode(&dist, 2)? != brute_force_barcode(&dist, 2)? {
                mismatches += 1;
            }
        }
        check(
            "oracle equivalence",
            format!("{mismatches} mismatches over {trials} clouds, dims 0-2"),
            mismatches == 0,
        );
    }

    // H0 interval lengths against MST edge lengths at a larger n.
    {
        let mut rng = SeededRng::new(seed, 102);
        let spec = ShapeSpec::new(ShapeKind::Disk);
        let cloud = sample(&spec, 120, &mut rng)?;
        let dist = distance_matrix(&cloud)?;
        let mut h0 = vr_barcode(&dist, 1)?[0].lengths();
        h0.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
        let mst: Vec<f64> = mst_interval_lengths(&dist)
            .into_iter()
            .filter(|w| *w > 0.0)
            .collect();
        check(
            "MST equivalence",
            format!("n = 120, {} intervals", h0.len()),
            h0 == mst,
        );
    }

    // Interval law: pooled H0 lengths against 1 - (1 - t)^100.
    {
        let mut rng = SeededRng::new(seed, 103);
        let spec = ShapeSpec::new(ShapeKind::Interval);
        let mut pooled = Vec::new();
        while pooled.len() < 3000 {
            let cloud = sample(&spec, 100, &mut rng)?;
            pooled.extend(mst_interval_lengths(&CloudDistances::new(&cloud)));
        }
        let cdf = empirical_cdf(&pooled, 100, 0)?;
        let ks = ks_distance(&cdf, &ClosedFormIntervalCdf { n: 100 })?;
        let band = dkw_bound(pooled.len(), 0.999)?;
        check(
            "interval closed-form law",
            format!("KS {ks:.5} vs DKW band {band:.5}"),
            ks < band,
        );
    }

    // The closed form's t/n rescaling approaches the exponential limit.
    {
        let sup = (0..=4000)
            .map(|i| {
                let t = i as f64 * 0.005;
                (closed_form_interval_cdf(100, t / 100.0) - exponential_limit_cdf(t)).abs()
            })
            .fold(0.0f64, f64::max);
        check(
            "exponential limit",
            format!("sup deviation {sup:.5} at n = 100"),
            sup <= 0.01,
        );
    }

    // Synthetic curve: tail fit target and asymptotic consistency.
    {
        let grid: Vec<f64> = (0..=980).map(|k| 400.0 + 20.0 * k as f64).collect();
        let mut rng = SeededRng::new(seed, 104);
        let series = synthetic_test_series(&grid, 0.0, &mut rng)?;
        let tail = restrict_series(&series, 19000.0, 20000.0)?;
        let alpha = global_loglog_fit(&tail)?.alpha;
        check(
            "synthetic tail fit",
            format!("alpha {alpha:.4} vs 1.9393 +/- 0.02"),
            (alpha - 1.9393).abs() <= 0.02,
        );

        let wide: Vec<f64> = (0..1000).map(|k| 400.0 + 1000.0 * k as f64).collect();
        let series = synthetic_test_series(&wide, 0.0, &mut rng)?;
        let alpha = asymptotic_alpha(&series)?.alpha;
        check(
            "synthetic asymptotic fit",
            format!("alpha {alpha:.4} vs 2 +/- 0.03"),
            (alpha - 2.0).abs() <= 0.03,
        );
    }

    if failures > 0 {
        bail!("{failures} selftest check(s) failed");
    }
    println!("all selftest checks passed");
    Ok(())
}

//! Acceptance suite: one test per release criterion, each printing a
//! PASS line with the measured values. Every tolerance is pinned here.
//!
//! Seeds are fixed, so these tests are deterministic; the statistical
//! margins were chosen so the checks sit well inside their bands.

use rand::Rng;

use phdim::distributions::{
    dkw_bound, empirical_cdf, ks_distance, periodic_family_probe, ClosedFormIntervalCdf,
    ExponentialLimitCdf,
};
use phdim::geometry::{
    arrowhead_intermediate_window, arrowhead_saturation_window, sample, PointCloud, ShapeKind,
    ShapeSpec,
};
use phdim::persistence::{
    brute_force_barcode, distance_matrix, mst_interval_lengths, vr_barcode, CloudDistances,
    Interval,
};
use phdim::rng::SeededRng;
use phdim::scaling::{
    asymptotic_alpha, collect_series, global_loglog_fit, restrict_series, synthetic_test_series,
    SlopeEstimate,
};

const MASTER_SEED: u64 = 20260808;

fn pass(criterion: &str, detail: String) {
    println!("ACCEPTANCE {criterion}: PASS - {detail}");
}

fn spec(kind: ShapeKind) -> ShapeSpec {
    ShapeSpec::new(kind)
}

fn slopes(
    shape: ShapeKind,
    schedule: &[usize],
    trials: usize,
    stream: u64,
) -> (SlopeEstimate, SlopeEstimate) {
    let rng = SeededRng::new(MASTER_SEED, stream);
    let series = collect_series(&spec(shape), 0, schedule, trials, &rng).unwrap();
    (
        global_loglog_fit(&series).unwrap(),
        asymptotic_alpha(&series).unwrap(),
    )
}

fn pow2_schedule(lo: u32, hi: u32) -> Vec<usize> {
    (lo..=hi).map(|k| 1usize << k).collect()
}

/// Criterion 1: the engine agrees exactly with the full-reduction oracle on
/// 1000 seeded clouds (n <= 20, dims 0..=2), and H0 interval lengths equal
/// MST edge lengths up to n = 200.
#[test]
fn criterion_01_oracle_and_mst_equivalence() {
    let mut rng = SeededRng::new(MASTER_SEED, 1);
    for trial in 0..1000u32 {
        let n = 2 + (rng.gen::<u64>() % 19) as usize;
        let shape = if trial % 2 == 0 {
            ShapeKind::Cube
        } else {
            ShapeKind::Square
        };
        let cloud = sample(&spec(shape), n, &mut rng).unwrap();
        let dist = distance_matrix(&cloud).unwrap();
        let fast = vr_barcode(&dist, 2).unwrap();
        let slow = brute_force_barcode(&dist, 2).unwrap();
        assert_eq!(fast, slow, "engine/oracle mismatch at trial {trial}, n {n}");
    }

    let mut checked_ns = Vec::new();
    for trial in 0..60u64 {
        let n = 2 + (rng.gen::<u64>() % 199) as usize;
        let shape = match trial % 3 {
            0 => ShapeKind::Disk,
            1 => ShapeKind::Cube,
            _ => ShapeKind::CantorDust2d,
        };
        let cloud = sample(&spec(shape), n, &mut rng).unwrap();
        let dist = distance_matrix(&cloud).unwrap();
        let mut h0 = vr_barcode(&dist, 0).unwrap()[0].lengths();
        h0.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
        let mst: Vec<f64> = mst_interval_lengths(&dist)
            .into_iter()
            .filter(|w| *w > 0.0)
            .collect();
        assert_eq!(h0, mst, "H0/MST mismatch at n {n}");
        checked_ns.push(n);
    }
    let max_n = checked_ns.iter().max().unwrap();
    pass(
        "1 (oracle equivalence)",
        format!("1000 clouds exact in dims 0-2; H0 = MST on 60 clouds up to n = {max_n}"),
    );
}

/// Criterion 2: the four corners of the unit square carry exactly one
/// 1-dimensional interval, [1, sqrt(2)].
#[test]
fn criterion_02_unit_square_corners() {
    let cloud = PointCloud::new(vec![0.0, 0.0, 1.0, 0.0, 0.0, 1.0, 1.0, 1.0], 2).unwrap();
    let dist = distance_matrix(&cloud).unwrap();
    let barcodes = vr_barcode(&dist, 1).unwrap();
    assert_eq!(barcodes[1].intervals(), &[Interval::new(1.0, 2f64.sqrt())]);
    assert_eq!(barcodes[0].lengths(), vec![1.0, 1.0, 1.0]);
    pass(
        "2 (unit-square corners)",
        format!("H1 = {{[1, {}]}}", 2f64.sqrt()),
    );
}

/// Criterion 3: pooled H0 lengths of 100-point uniform-interval samples
/// follow 1 - (1 - t)^100 within the 99.9% DKW band over 10^4 lengths, and
/// the n = 5000 empirical CDF rescaled with m = 1 sits within 0.05 of the
/// rate-one exponential.
#[test]
fn criterion_03_interval_law() {
    let mut rng = SeededRng::new(MASTER_SEED, 3);
    let interval = spec(ShapeKind::Interval);
    let mut pooled = Vec::new();
    while pooled.len() < 10_000 {
        let cloud = sample(&interval, 100, &mut rng).unwrap();
        pooled.extend(mst_interval_lengths(&CloudDistances::new(&cloud)));
    }
    let cdf = empirical_cdf(&pooled, 100, 0).unwrap();
    let ks = ks_distance(&cdf, &ClosedFormIntervalCdf { n: 100 }).unwrap();
    let band = dkw_bound(pooled.len(), 0.999).unwrap();
    assert!(ks < band, "KS {ks} not below DKW band {band}");

    let cloud = sample(&interval, 5000, &mut rng).unwrap();
    let lengths = mst_interval_lengths(&CloudDistances::new(&cloud));
    let rescaled = empirical_cdf(&lengths, 5000, 0)
        .unwrap()
        .rescale(1.0)
        .unwrap();
    let sup = ks_distance(&rescaled, &ExponentialLimitCdf).unwrap();
    assert!(sup < 0.05, "sup distance {sup} >= 0.05");
    pass(
        "3 (interval law)",
        format!(
            "pooled KS {ks:.5} < DKW {band:.5} on {} lengths; rescaled sup {sup:.5} < 0.05",
            pooled.len()
        ),
    );
}

/// Criterion 4: disk, square and triangle H0 slopes land in [0.45, 0.55]
/// for both estimators (n up to 2^13, 10 trials).
#[test]
fn criterion_04_planar_bodies() {
    let schedule = pow2_schedule(6, 13);
    let mut details = Vec::new();
    for (name, shape) in [
        ("disk", ShapeKind::Disk),
        ("square", ShapeKind::Square),
        ("triangle", ShapeKind::Triangle),
    ] {
        let (global, asym) = slopes(shape, &schedule, 10, 999);
        for (method, alpha) in [("global", global.alpha), ("asymptotic", asym.alpha)] {
            assert!(
                (0.45..=0.55).contains(&alpha),
                "{name} {method} slope {alpha} outside [0.45, 0.55]"
            );
        }
        details.push(format!("{name} {:.3}/{:.3}", global.alpha, asym.alpha));
    }
    pass(
        "4 (planar bodies)",
        format!(
            "global/asymptotic slopes in [0.45, 0.55]: {}",
            details.join(", ")
        ),
    );
}

/// Criterion 5: cube H0 slope in [0.60, 0.70].
#[test]
fn criterion_05_cube() {
    let schedule = pow2_schedule(6, 13);
    let (global, asym) = slopes(ShapeKind::Cube, &schedule, 10, 999);
    for alpha in [global.alpha, asym.alpha] {
        assert!(
            (0.60..=0.70).contains(&alpha),
            "cube slope {alpha} outside [0.60, 0.70]"
        );
    }
    pass(
        "5 (cube)",
        format!(
            "slopes {:.4}/{:.4} in [0.60, 0.70]",
            global.alpha, asym.alpha
        ),
    );
}

/// Criterion 6: fractal H0 slopes. Sierpinski within 0.37 +/- 0.03; Cantor
/// dust in the plane within 0.05 of 0.25; Cantor dust in space within 0.05
/// of 0.49; Cantor set cross interval linear fit within 0.03 of 0.3799.
#[test]
fn criterion_06_fractal_slopes() {
    let schedule = pow2_schedule(6, 13);
    let mut details = Vec::new();

    let (global, asym) = slopes(
        ShapeKind::Sierpinski { separation: 0.0 },
        &schedule,
        10,
        999,
    );
    for alpha in [global.alpha, asym.alpha] {
        assert!(
            (alpha - 0.37).abs() <= 0.03,
            "sierpinski slope {alpha} outside 0.37 +/- 0.03"
        );
    }
    details.push(format!("sierpinski {:.4}/{:.4}", global.alpha, asym.alpha));

    let (global, asym) = slopes(ShapeKind::CantorDust2d, &schedule, 10, 999);
    for alpha in [global.alpha, asym.alpha] {
        assert!(
            (alpha - 0.25).abs() <= 0.05,
            "planar dust slope {alpha} outside 0.25 +/- 0.05"
        );
    }
    details.push(format!("dust2d {:.4}/{:.4}", global.alpha, asym.alpha));

    let (global, asym) = slopes(ShapeKind::CantorDust3d, &schedule, 10, 999);
    for alpha in [global.alpha, asym.alpha] {
        assert!(
            (alpha - 0.49).abs() <= 0.05,
            "spatial dust slope {alpha} outside 0.49 +/- 0.05"
        );
    }
    details.push(format!("dust3d {:.4}/{:.4}", global.alpha, asym.alpha));

    let (global, _) = slopes(ShapeKind::CantorCrossInterval, &schedule, 10, 999);
    assert!(
        (global.alpha - 0.3799).abs() <= 0.03,
        "cantor-cross-interval linear fit {} outside 0.3799 +/- 0.03",
        global.alpha
    );
    details.push(format!("cantor_x_interval {:.4}", global.alpha));

    pass("6 (fractal slopes)", details.join(", "));
}

/// Criterion 7: the Cantor set's total H0 length sits in [0.97, 1) at
/// n = 2000 and its per-n mean increases toward 1.
#[test]
fn criterion_07_cantor_sanity() {
    let rng = SeededRng::new(MASTER_SEED, 777);
    let series = collect_series(
        &spec(ShapeKind::CantorSet),
        0,
        &[125, 250, 500, 1000, 2000],
        10,
        &rng,
    )
    .unwrap();
    for s in series.samples().iter().filter(|s| s.n == 2000.0) {
        assert!(
            (0.97..1.0).contains(&s.ell),
            "L0 at n=2000 is {} (outside [0.97, 1))",
            s.ell
        );
    }
    let means = series.mean_ell_per_n();
    for pair in means.windows(2) {
        assert!(pair[1].1 > pair[0].1, "mean L0 not increasing: {pair:?}");
        assert!(pair[1].1 < 1.0);
    }
    pass(
        "7 (cantor sanity)",
        format!(
            "means rise {:.5} -> {:.5} toward 1; all n=2000 trials in [0.97, 1)",
            means.first().unwrap().1,
            means.last().unwrap().1
        ),
    );
}

/// Criterion 8: torus H0 slope in [0.45, 0.55] with n up to 2^12.
#[test]
fn criterion_08_torus() {
    let schedule = pow2_schedule(6, 12);
    let (global, asym) = slopes(
        ShapeKind::Torus {
            major_radius: 5.0,
            minor_radius: 3.0,
        },
        &schedule,
        10,
        999,
    );
    for alpha in [global.alpha, asym.alpha] {
        assert!(
            (0.45..=0.55).contains(&alpha),
            "torus slope {alpha} outside [0.45, 0.55]"
        );
    }
    pass(
        "8 (torus)",
        format!(
            "slopes {:.4}/{:.4} in [0.45, 0.55]",
            global.alpha, asym.alpha
        ),
    );
}

/// Criterion 9: the synthetic validation curve. Noiseless tail fit on
/// x in [19000, 20000] (regular step-20 grid from 400) recovers
/// 1.9393 +/- 0.02; the asymptotic extrapolation over a regular step-1000
/// grid to 10^6 (two decades past the curve's regime transition) lands
/// within 0.03 of the true exponent 2; with amplitude-0.1 noise the
/// 30-seed median stays within 0.05 of 2.
#[test]
fn criterion_09_synthetic_curve() {
    let narrow_grid: Vec<f64> = (0..=980).map(|k| 400.0 + 20.0 * k as f64).collect();
    let mut rng = SeededRng::new(MASTER_SEED, 9);
    let series = synthetic_test_series(&narrow_grid, 0.0, &mut rng).unwrap();
    let tail = restrict_series(&series, 19000.0, 20000.0).unwrap();
    let tail_alpha = global_loglog_fit(&tail).unwrap().alpha;
    assert!(
        (tail_alpha - 1.9393).abs() <= 0.02,
        "tail fit {tail_alpha} outside 1.9393 +/- 0.02"
    );

    let wide_grid: Vec<f64> = (0..1000).map(|k| 400.0 + 1000.0 * k as f64).collect();
    let series = synthetic_test_series(&wide_grid, 0.0, &mut rng).unwrap();
    let wide_alpha = asymptotic_alpha(&series).unwrap().alpha;
    assert!(
        (wide_alpha - 2.0).abs() <= 0.03,
        "asymptotic fit {wide_alpha} outside 2 +/- 0.03"
    );

    let mut alphas: Vec<f64> = (0..30)
        .map(|s| {
            let mut rng = SeededRng::new(MASTER_SEED, s);
            let series = synthetic_test_series(&wide_grid, 0.1, &mut rng).unwrap();
            asymptotic_alpha(&series).unwrap().alpha
        })
        .collect();
    alphas.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
    let median = alphas[15];
    assert!(
        (median - 2.0).abs() <= 0.05,
        "noisy median {median} outside 2 +/- 0.05"
    );
    pass(
        "9 (synthetic curve)",
        format!(
            "tail {tail_alpha:.4} vs 1.9393; asymptotic {wide_alpha:.4} vs 2; noisy median {median:.4}"
        ),
    );
}

/// Criterion 10: for the separated triangle at delta = 2, rescaled CDFs
/// along n = 3^j converge (KS between consecutive j decreases), while the
/// k = 1 and k = 2 families stay apart by more than twice the within-family
/// convergence gap.
#[test]
fn criterion_10_periodic_family() {
    let rng = SeededRng::new(MASTER_SEED, 777);
    let snaps = periodic_family_probe(2.0, &[1, 2], 7, 0, &rng).unwrap();
    let get = |k: u64, j: u32| {
        &snaps
            .iter()
            .find(|s| s.k == k && s.j == j)
            .expect("snapshot")
            .cdf
    };
    let mut gaps = Vec::new();
    for j in 3..7 {
        gaps.push(ks_distance(get(1, j), get(1, j + 1)).unwrap());
    }
    for pair in gaps.windows(2) {
        assert!(
            pair[1] < pair[0],
            "within-family KS not decreasing: {gaps:?}"
        );
    }
    let within = *gaps.last().unwrap();
    let cross = ks_distance(get(1, 7), get(2, 7)).unwrap();
    assert!(
        cross > 2.0 * within,
        "cross-family KS {cross} not above twice the convergence gap {within}"
    );
    pass(
        "10 (periodic family)",
        format!(
            "KS(j, j+1) falls {:.4} -> {:.4}; cross-family {cross:.4} > 2 x {within:.4}",
            gaps[0], within
        ),
    );
}

/// Criterion 11: level-6 arrowhead curve. Over the saturation window the H0
/// slope is below 0.1 (dimension-one regime); over the intermediate window
/// it lies within 0.06 of 0.3691.
#[test]
fn criterion_11_arrowhead_regimes() {
    let level = 6;
    let rng = SeededRng::new(MASTER_SEED, 777);
    let schedule = pow2_schedule(5, 14);
    let series =
        collect_series(&spec(ShapeKind::Arrowhead { level }), 0, &schedule, 5, &rng).unwrap();

    let (lo, hi) = arrowhead_intermediate_window(level);
    let mid = restrict_series(&series, lo, hi).unwrap();
    let mid_alpha = global_loglog_fit(&mid).unwrap().alpha;
    assert!(
        (mid_alpha - 0.3691).abs() <= 0.06,
        "intermediate slope {mid_alpha} outside 0.3691 +/- 0.06"
    );

    let (lo, hi) = arrowhead_saturation_window(level);
    let tail = restrict_series(&series, lo, hi).unwrap();
    let tail_alpha = global_loglog_fit(&tail).unwrap().alpha;
    assert!(
        tail_alpha < 0.1,
        "saturation slope {tail_alpha} not below 0.1"
    );
    pass(
        "11 (arrowhead regimes)",
        format!("intermediate {mid_alpha:.4} vs 0.3691; saturation {tail_alpha:.4} < 0.1"),
    );
}

//! Random sampling from the measures used throughout the crate: uniform
//! measures on convex bodies and an embedded torus, self-similar fractal
//! measures built from digit expansions, and uniform (arc-length) measure on
//! Sierpinski arrowhead curves.

use rand::distributions::Distribution;
use rand::Rng;
use rand_distr::Beta;

use crate::error::{Error, Result};
use crate::rng::SeededRng;

/// Radius of the disk of unit area.
pub const UNIT_AREA_DISK_RADIUS: f64 = 0.5641895835477563; // 1 / sqrt(pi)

/// Side length of the equilateral triangle of unit area, `2 / 3^(1/4)`.
pub const UNIT_AREA_TRIANGLE_SIDE: f64 = 1.5196713713031853;

/// Default number of digits kept in digit-expansion fractal samples.
///
/// Base-3 contributions beyond index ~40 fall below double-precision
/// resolution relative to the leading digits, so truncating at 64 digits
/// produces the same `f64` values as any deeper expansion.
pub const DEFAULT_DIGIT_DEPTH: u32 = 64;

/// Largest arrowhead curve level accepted; level `l` has `3^l` segments.
pub const MAX_ARROWHEAD_LEVEL: u32 = 13;

/// A finite list of points in `R^m`, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    coords: Vec<f64>,
    ambient_dim: usize,
}

impl PointCloud {
    /// Build a cloud from a flat row-major coordinate buffer.
    pub fn new(coords: Vec<f64>, ambient_dim: usize) -> Result<Self> {
        if ambient_dim == 0 {
            return Err(Error::Parameter(
                "ambient dimension must be positive".into(),
            ));
        }
        if !coords.len().is_multiple_of(ambient_dim) {
            return Err(Error::Parameter(format!(
                "coordinate buffer length {} is not a multiple of ambient dimension {}",
                coords.len(),
                ambient_dim
            )));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::Parameter("coordinates must be finite".into()));
        }
        Ok(PointCloud {
            coords,
            ambient_dim,
        })
    }

    pub fn from_points(points: &[Vec<f64>]) -> Result<Self> {
        let dim = points.first().map(|p| p.len()).unwrap_or(1);
        if points.iter().any(|p| p.len() != dim) {
            return Err(Error::Parameter("points have mixed dimensions".into()));
        }
        let coords = points.iter().flatten().copied().collect();
        PointCloud::new(coords, dim.max(1))
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.ambient_dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.ambient_dim..(i + 1) * self.ambient_dim]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[f64]> {
        self.coords.chunks_exact(self.ambient_dim)
    }
}

/// The supported measures.
#[derive(Debug, Clone, PartialEq)]
pub enum ShapeKind {
    /// Uniform measure on the disk of unit area, centred at the origin.
    Disk,
    /// Uniform measure on the unit square `[0,1]^2`.
    Square,
    /// Uniform measure on the equilateral triangle of unit area.
    Triangle,
    /// Uniform measure on the unit cube `[0,1]^3`.
    Cube,
    /// Surface-area-uniform measure on a torus embedded in `R^3`.
    Torus {
        major_radius: f64,
        minor_radius: f64,
    },
    /// Uniform measure on the unit interval `[0,1]`.
    Interval,
    /// Independent `Beta(alpha, beta)` marginals on each coordinate of the unit square.
    BetaSquare { alpha: f64, beta: f64 },
    /// Middle-thirds Cantor set on `[0,1]` via truncated digit expansions:
    /// uniform over the left endpoints of the level-`digit_depth` intervals,
    /// which at the default depth is indistinguishable in `f64` from the
    /// Cantor law itself.
    CantorSet,
    /// Cantor measure on the x axis crossed with the uniform unit interval.
    CantorCrossInterval,
    /// Product of two Cantor measures in the plane.
    CantorDust2d,
    /// Product of three Cantor measures in space.
    CantorDust3d,
    /// Separated Sierpinski triangle with contraction ratio `1/(2 + separation)`.
    Sierpinski { separation: f64 },
    /// Arc-length uniform measure on the level-`level` Sierpinski arrowhead curve.
    Arrowhead { level: u32 },
}

/// A sampling target: a shape plus the digit depth used by the
/// digit-expansion fractals.
#[derive(Debug, Clone, PartialEq)]
pub struct ShapeSpec {
    pub kind: ShapeKind,
    pub digit_depth: u32,
}

impl ShapeSpec {
    pub fn new(kind: ShapeKind) -> Self {
        ShapeSpec {
            kind,
            digit_depth: DEFAULT_DIGIT_DEPTH,
        }
    }

    pub fn with_digit_depth(mut self, depth: u32) -> Self {
        self.digit_depth = depth;
        self
    }

    /// Torus with the default embedding radii 5 and 3.
    pub fn torus() -> Self {
        ShapeSpec::new(ShapeKind::Torus {
            major_radius: 5.0,
            minor_radius: 3.0,
        })
    }

    /// Beta-square with both shape parameters set to 2.
    pub fn beta_square() -> Self {
        ShapeSpec::new(ShapeKind::BetaSquare {
            alpha: 2.0,
            beta: 2.0,
        })
    }

    pub fn validate(&self) -> Result<()> {
        if self.digit_depth == 0 {
            return Err(Error::Parameter("digit depth must be positive".into()));
        }
        match self.kind {
            ShapeKind::Torus {
                major_radius,
                minor_radius,
            } => {
                if !(major_radius > minor_radius && minor_radius > 0.0) {
                    return Err(Error::Parameter(format!(
                        "torus radii must satisfy major > minor > 0, got ({major_radius}, {minor_radius})"
                    )));
                }
            }
            ShapeKind::BetaSquare { alpha, beta } => {
                if !(alpha > 0.0 && beta > 0.0) {
                    return Err(Error::Parameter(format!(
                        "beta shape parameters must be positive, got ({alpha}, {beta})"
                    )));
                }
            }
            ShapeKind::Sierpinski { separation } => {
                if !(separation >= 0.0 && separation.is_finite()) {
                    return Err(Error::Parameter(format!(
                        "separation must be a finite value >= 0, got {separation}"
                    )));
                }
            }
            ShapeKind::Arrowhead { level } if level > MAX_ARROWHEAD_LEVEL => {
                return Err(Error::Resource {
                    what: "arrowhead segments",
                    needed: 3u64.saturating_pow(level),
                    budget: 3u64.pow(MAX_ARROWHEAD_LEVEL),
                });
            }
            _ => {}
        }
        Ok(())
    }

    /// Dimension of the space the samples live in.
    pub fn ambient_dim(&self) -> usize {
        match self.kind {
            ShapeKind::Interval | ShapeKind::CantorSet => 1,
            ShapeKind::Disk
            | ShapeKind::Square
            | ShapeKind::Triangle
            | ShapeKind::BetaSquare { .. }
            | ShapeKind::CantorCrossInterval
            | ShapeKind::CantorDust2d
            | ShapeKind::Sierpinski { .. }
            | ShapeKind::Arrowhead { .. } => 2,
            ShapeKind::Cube | ShapeKind::Torus { .. } | ShapeKind::CantorDust3d => 3,
        }
    }
}

/// Draw `n` i.i.d. points from the measure named by `spec`.
pub fn sample(spec: &ShapeSpec, n: usize, rng: &mut SeededRng) -> Result<PointCloud> {
    spec.validate()?;
    if n == 0 {
        return Err(Error::Parameter("sample size must be at least 1".into()));
    }
    let dim = spec.ambient_dim();
    let mut coords = Vec::with_capacity(n * dim);
    match spec.kind {
        ShapeKind::Disk => {
            for _ in 0..n {
                let r = UNIT_AREA_DISK_RADIUS * rng.gen::<f64>().sqrt();
                let theta = rng.gen_range(0.0..std::f64::consts::TAU);
                coords.push(r * theta.cos());
                coords.push(r * theta.sin());
            }
        }
        ShapeKind::Square => {
            for _ in 0..n {
                coords.push(rng.gen::<f64>());
                coords.push(rng.gen::<f64>());
            }
        }
        ShapeKind::Triangle => {
            let s = UNIT_AREA_TRIANGLE_SIDE;
            // Vertices (0,0), (s,0), (s/2, s*sqrt(3)/2); fold (a,b) back into
            // the lower-left half so the barycentric pair stays uniform.
            let (bx, by) = (s, 0.0);
            let (cx, cy) = (s / 2.0, s * 3f64.sqrt() / 2.0);
            for _ in 0..n {
                let mut a = rng.gen::<f64>();
                let mut b = rng.gen::<f64>();
                if a + b > 1.0 {
                    a = 1.0 - a;
                    b = 1.0 - b;
                }
                coords.push(a * bx + b * cx);
                coords.push(a * by + b * cy);
            }
        }
        ShapeKind::Cube => {
            for _ in 0..n {
                coords.push(rng.gen::<f64>());
                coords.push(rng.gen::<f64>());
                coords.push(rng.gen::<f64>());
            }
        }
        ShapeKind::Torus {
            major_radius: big_r,
            minor_radius: little_r,
        } => {
            // Area-uniform: the minor angle has density proportional to
            // R + r cos(theta); sample it by rejection, then the major angle
            // is uniform.
            for _ in 0..n {
                let theta = loop {
                    let candidate = rng.gen_range(0.0..std::f64::consts::TAU);
                    let accept = (big_r + little_r * candidate.cos()) / (big_r + little_r);
                    if rng.gen::<f64>() < accept {
                        break candidate;
                    }
                };
                let phi = rng.gen_range(0.0..std::f64::consts::TAU);
                let ring = big_r + little_r * theta.cos();
                coords.push(ring * phi.cos());
                coords.push(ring * phi.sin());
                coords.push(little_r * theta.sin());
            }
        }
        ShapeKind::Interval => {
            for _ in 0..n {
                coords.push(rng.gen::<f64>());
            }
        }
        ShapeKind::BetaSquare { alpha, beta } => {
            let marginal = Beta::new(alpha, beta)
                .map_err(|e| Error::Parameter(format!("beta distribution: {e}")))?;
            for _ in 0..n {
                coords.push(marginal.sample(rng));
                coords.push(marginal.sample(rng));
            }
        }
        ShapeKind::CantorSet => {
            for _ in 0..n {
                coords.push(random_cantor_value(spec.digit_depth, rng));
            }
        }
        ShapeKind::CantorCrossInterval => {
            for _ in 0..n {
                coords.push(random_cantor_value(spec.digit_depth, rng));
                coords.push(rng.gen::<f64>());
            }
        }
        ShapeKind::CantorDust2d => {
            for _ in 0..n {
                coords.push(random_cantor_value(spec.digit_depth, rng));
                coords.push(random_cantor_value(spec.digit_depth, rng));
            }
        }
        ShapeKind::CantorDust3d => {
            for _ in 0..n {
                coords.push(random_cantor_value(spec.digit_depth, rng));
                coords.push(random_cantor_value(spec.digit_depth, rng));
                coords.push(random_cantor_value(spec.digit_depth, rng));
            }
        }
        ShapeKind::Sierpinski { separation } => {
            let mut digits = vec![0u8; spec.digit_depth as usize];
            for _ in 0..n {
                for d in digits.iter_mut() {
                    *d = rng.gen_range(0..3u8);
                }
                let p = sierpinski_digit_point(&digits, separation)?;
                coords.push(p[0]);
                coords.push(p[1]);
            }
        }
        ShapeKind::Arrowhead { level } => {
            let polyline = arrowhead_polyline(level)?;
            return sample_polyline_uniform(&polyline, n, rng);
        }
    }
    PointCloud::new(coords, dim)
}

/// One Cantor-measure draw: a base-3 expansion with random digits in {0, 2}.
fn random_cantor_value(depth: u32, rng: &mut SeededRng) -> f64 {
    let mut value = 0.0;
    let mut scale = 1.0;
    for _ in 0..depth {
        scale /= 3.0;
        if rng.gen_range(0..2u8) == 1 {
            value += 2.0 * scale;
        }
    }
    value
}

/// Value of the truncated Cantor digit expansion `sum 2 a_i / 3^i`.
///
/// Digits must be 0 or 1; digit `a_i` selects the left or right third at
/// level `i`.
pub fn cantor_digit_value(digits: &[u8]) -> Result<f64> {
    let mut value = 0.0;
    let mut scale = 1.0;
    for (i, &d) in digits.iter().enumerate() {
        if d > 1 {
            return Err(Error::Parameter(format!(
                "cantor digit at index {i} must be 0 or 1, got {d}"
            )));
        }
        scale /= 3.0;
        value += 2.0 * f64::from(d) * scale;
    }
    Ok(value)
}

/// Point of the separated Sierpinski triangle addressed by a ternary digit
/// sequence: `sum_i (1/(2+separation))^i * v_i` with `v_i` one of `(0,0)`,
/// `(1,0)`, `(1/2, sqrt(3)/2)`.
pub fn sierpinski_digit_point(digits: &[u8], separation: f64) -> Result<[f64; 2]> {
    if !(separation >= 0.0 && separation.is_finite()) {
        return Err(Error::Parameter(format!(
            "separation must be a finite value >= 0, got {separation}"
        )));
    }
    let contraction = 1.0 / (2.0 + separation);
    let half = 0.5;
    let apex_y = 3f64.sqrt() / 2.0;
    let mut x = 0.0;
    let mut y = 0.0;
    let mut scale = 1.0;
    for (i, &d) in digits.iter().enumerate() {
        scale *= contraction;
        match d {
            0 => {}
            1 => x += scale,
            2 => {
                x += scale * half;
                y += scale * apex_y;
            }
            _ => {
                return Err(Error::Parameter(format!(
                    "ternary digit at index {i} must be 0, 1 or 2, got {d}"
                )))
            }
        }
    }
    Ok([x, y])
}

/// A connected polygonal curve in the plane.
#[derive(Debug, Clone, PartialEq)]
pub struct Polyline {
    vertices: Vec<[f64; 2]>,
}

impl Polyline {
    pub fn new(vertices: Vec<[f64; 2]>) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::Parameter(
                "a polyline needs at least two vertices".into(),
            ));
        }
        Ok(Polyline { vertices })
    }

    pub fn vertices(&self) -> &[[f64; 2]] {
        &self.vertices
    }

    pub fn segment_count(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn segment_length(&self, i: usize) -> f64 {
        let a = self.vertices[i];
        let b = self.vertices[i + 1];
        ((b[0] - a[0]).powi(2) + (b[1] - a[1]).powi(2)).sqrt()
    }

    pub fn total_length(&self) -> f64 {
        (0..self.segment_count())
            .map(|i| self.segment_length(i))
            .sum()
    }
}

/// The level-`level` Sierpinski arrowhead curve.
///
/// Generated by rewriting `A -> B-A-B`, `B -> A+B+A` with 60-degree turns,
/// where both symbols draw a segment. The result is a connected polyline of
/// `3^level` equal segments of length `2^-level`, from `(0,0)` to `(1,0)`.
pub fn arrowhead_polyline(level: u32) -> Result<Polyline> {
    if level > MAX_ARROWHEAD_LEVEL {
        return Err(Error::Resource {
            what: "arrowhead segments",
            needed: 3u64.saturating_pow(level),
            budget: 3u64.pow(MAX_ARROWHEAD_LEVEL),
        });
    }
    let segments = 3usize.pow(level);
    let step = 0.5f64.powi(level as i32);
    // Headings are multiples of 60 degrees; keeping them as an index into a
    // fixed table avoids accumulating rounding in the turtle state.
    let dirs: [[f64; 2]; 6] = {
        let c = 0.5;
        let s = 3f64.sqrt() / 2.0;
        [[1.0, 0.0], [c, s], [-c, s], [-1.0, 0.0], [-c, -s], [c, -s]]
    };
    let mut vertices = Vec::with_capacity(segments + 1);
    vertices.push([0.0, 0.0]);
    // Odd levels start at 60 degrees so the curve ends at (1, 0).
    let mut heading = (level % 2) as i32;
    let mut pos = [0.0f64, 0.0f64];

    // Expand the rewriting system without materialising the symbol string.
    fn walk(
        symbol_a: bool,
        level: u32,
        heading: &mut i32,
        pos: &mut [f64; 2],
        vertices: &mut Vec<[f64; 2]>,
        dirs: &[[f64; 2]; 6],
        step: f64,
    ) {
        if level == 0 {
            let d = dirs[(heading.rem_euclid(6)) as usize];
            pos[0] += step * d[0];
            pos[1] += step * d[1];
            vertices.push(*pos);
            return;
        }
        if symbol_a {
            // A -> B - A - B
            walk(false, level - 1, heading, pos, vertices, dirs, step);
            *heading -= 1;
            walk(true, level - 1, heading, pos, vertices, dirs, step);
            *heading -= 1;
            walk(false, level - 1, heading, pos, vertices, dirs, step);
        } else {
            // B -> A + B + A
            walk(true, level - 1, heading, pos, vertices, dirs, step);
            *heading += 1;
            walk(false, level - 1, heading, pos, vertices, dirs, step);
            *heading += 1;
            walk(true, level - 1, heading, pos, vertices, dirs, step);
        }
    }

    walk(
        true,
        level,
        &mut heading,
        &mut pos,
        &mut vertices,
        &dirs,
        step,
    );
    Polyline::new(vertices)
}

/// Sample-size window where a level-`level` arrowhead curve still scales
/// like the fractal it approximates: comfortably past `3^(level/2)` points
/// but clearly below the `3^level` segment count.
pub fn arrowhead_intermediate_window(level: u32) -> (f64, f64) {
    let half = 3f64.powf(level as f64 / 2.0);
    let full = 3f64.powi(level as i32);
    (2.0 * half, 0.75 * full)
}

/// Sample-size window where the curve's one-dimensionality dominates and
/// the total MST length saturates at the curve length `(3/2)^level`.
pub fn arrowhead_saturation_window(level: u32) -> (f64, f64) {
    (4.0 * 3f64.powi(level as i32), f64::INFINITY)
}

/// Draw `n` points uniformly with respect to arc length.
pub fn sample_polyline_uniform(
    polyline: &Polyline,
    n: usize,
    rng: &mut SeededRng,
) -> Result<PointCloud> {
    if n == 0 {
        return Err(Error::Parameter("sample size must be at least 1".into()));
    }
    let segments = polyline.segment_count();
    let mut cumulative = Vec::with_capacity(segments + 1);
    cumulative.push(0.0);
    for i in 0..segments {
        let last = *cumulative.last().unwrap();
        cumulative.push(last + polyline.segment_length(i));
    }
    let total = *cumulative.last().unwrap();
    if total <= 0.0 {
        return Err(Error::Parameter("polyline has zero length".into()));
    }
    let mut coords = Vec::with_capacity(2 * n);
    for _ in 0..n {
        let r = rng.gen::<f64>() * total;
        // Index of the segment whose cumulative range contains r.
        let seg = cumulative.partition_point(|&c| c <= r).min(segments) - 1;
        let local = (r - cumulative[seg]) / (cumulative[seg + 1] - cumulative[seg]);
        let a = polyline.vertices()[seg];
        let b = polyline.vertices()[seg + 1];
        coords.push(a[0] + local * (b[0] - a[0]));
        coords.push(a[1] + local * (b[1] - a[1]));
    }
    PointCloud::new(coords, 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::Rng;

    fn rng(stream: u64) -> SeededRng {
        SeededRng::new(0x5eed, stream)
    }

    #[test]
    fn sample_rejects_zero_points() {
        let spec = ShapeSpec::new(ShapeKind::Square);
        assert!(matches!(
            sample(&spec, 0, &mut rng(0)),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn sample_rejects_bad_torus() {
        let spec = ShapeSpec::new(ShapeKind::Torus {
            major_radius: 1.0,
            minor_radius: 2.0,
        });
        assert!(sample(&spec, 4, &mut rng(0)).is_err());
    }

    #[test]
    fn ambient_dims_match() {
        let cases = [
            (ShapeKind::Interval, 1),
            (ShapeKind::CantorSet, 1),
            (ShapeKind::Disk, 2),
            (ShapeKind::Square, 2),
            (ShapeKind::Triangle, 2),
            (ShapeKind::CantorCrossInterval, 2),
            (ShapeKind::CantorDust2d, 2),
            (ShapeKind::Sierpinski { separation: 0.0 }, 2),
            (ShapeKind::Arrowhead { level: 2 }, 2),
            (ShapeKind::Cube, 3),
            (ShapeKind::CantorDust3d, 3),
        ];
        for (kind, dim) in cases {
            let spec = ShapeSpec::new(kind);
            let cloud = sample(&spec, 5, &mut rng(1)).unwrap();
            assert_eq!(cloud.ambient_dim(), dim);
            assert_eq!(cloud.len(), 5);
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        let spec = ShapeSpec::new(ShapeKind::Sierpinski { separation: 2.0 });
        let a = sample(&spec, 100, &mut rng(9)).unwrap();
        let b = sample(&spec, 100, &mut rng(9)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn cantor_samples_lie_in_level_sets() {
        // Every sample avoids the open middle-third gaps down to level 8;
        // the tolerance absorbs the f64 rounding of the digit sum, which
        // grows by a factor 3 per level.
        let spec = ShapeSpec::new(ShapeKind::CantorSet);
        let cloud = sample(&spec, 500, &mut rng(2)).unwrap();
        let tol = 1e-9;
        for p in cloud.iter() {
            let x = p[0];
            assert!((0.0..=1.0).contains(&x));
            let mut y = x;
            for level in 1..=8 {
                y *= 3.0;
                let digit = y.floor();
                y -= digit;
                if digit as i64 == 1 {
                    let in_gap = y > tol && y < 1.0 - tol;
                    assert!(!in_gap, "sample {x} in a middle-third gap at level {level}");
                    // A boundary hit means rounding has used up the digit
                    // precision for this sample.
                    break;
                }
            }
        }
    }

    #[test]
    fn square_coordinate_means_near_half() {
        // Law of large numbers; the Monte-Carlo check uses an independent
        // stream from the one under test.
        let spec = ShapeSpec::new(ShapeKind::Square);
        let cloud = sample(&spec, 10_000, &mut rng(3)).unwrap();
        for axis in 0..2 {
            let mean: f64 = cloud.iter().map(|p| p[axis]).sum::<f64>() / cloud.len() as f64;
            assert!((0.48..=0.52).contains(&mean), "axis {axis} mean {mean}");
        }
    }

    #[test]
    fn sierpinski_digit_point_examples() {
        assert_eq!(sierpinski_digit_point(&[1], 0.0).unwrap(), [0.5, 0.0]);
        assert_eq!(sierpinski_digit_point(&[1], 2.0).unwrap(), [0.25, 0.0]);
        let all_zero = sierpinski_digit_point(&[0; 40], 0.0).unwrap();
        assert_eq!(all_zero, [0.0, 0.0]);
        let all_two = sierpinski_digit_point(&[2; 50], 0.0).unwrap();
        let expect = [0.5, 3f64.sqrt() / 2.0];
        assert!((all_two[0] - expect[0]).abs() < 2f64.powi(-50));
        assert!((all_two[1] - expect[1]).abs() < 2f64.powi(-50));
        assert!(sierpinski_digit_point(&[3], 0.0).is_err());
    }

    #[test]
    fn cantor_digit_value_examples() {
        assert_eq!(cantor_digit_value(&[0]).unwrap(), 0.0);
        assert_eq!(cantor_digit_value(&[1]).unwrap(), 2.0 / 3.0);
        assert_eq!(cantor_digit_value(&[0, 1]).unwrap(), 2.0 / 9.0);
        assert!(cantor_digit_value(&[2]).is_err());
    }

    #[test]
    fn digit_depth_64_saturates_doubles() {
        // Extending a 64-digit expansion leaves the value numerically
        // unchanged: base-3 tails vanish exactly in f64; the base-2
        // Sierpinski tails can still nudge a late-starting coordinate, but
        // only below 2^-64 in absolute terms.
        let mut r = rng(4);
        for _ in 0..200 {
            let digits: Vec<u8> = (0..128).map(|_| r.gen_range(0..2u8)).collect();
            let short = cantor_digit_value(&digits[..64]).unwrap();
            let long = cantor_digit_value(&digits).unwrap();
            assert_eq!(short, long);

            let tdigits: Vec<u8> = (0..128).map(|_| r.gen_range(0..3u8)).collect();
            let short = sierpinski_digit_point(&tdigits[..64], 0.0).unwrap();
            let long = sierpinski_digit_point(&tdigits, 0.0).unwrap();
            for axis in 0..2 {
                assert!(
                    (short[axis] - long[axis]).abs() <= 2f64.powi(-64),
                    "axis {axis}: {} vs {}",
                    short[axis],
                    long[axis]
                );
            }
        }
    }

    #[test]
    fn arrowhead_base_cases() {
        let level0 = arrowhead_polyline(0).unwrap();
        assert_eq!(level0.vertices(), &[[0.0, 0.0], [1.0, 0.0]]);

        let level1 = arrowhead_polyline(1).unwrap();
        assert_eq!(level1.segment_count(), 3);
        for i in 0..3 {
            assert!((level1.segment_length(i) - 0.5).abs() < 1e-15);
        }
        assert!((level1.total_length() - 1.5).abs() < 1e-12);
    }

    #[test]
    fn arrowhead_structure_all_levels() {
        for level in 0..=8u32 {
            let poly = arrowhead_polyline(level).unwrap();
            assert_eq!(poly.segment_count(), 3usize.pow(level));
            let step = 0.5f64.powi(level as i32);
            for i in 0..poly.segment_count() {
                assert!((poly.segment_length(i) - step).abs() < 1e-12);
            }
            assert!((poly.total_length() - 1.5f64.powi(level as i32)).abs() < 1e-9);
            let last = poly.vertices().last().unwrap();
            assert!((last[0] - 1.0).abs() < 1e-12 && last[1].abs() < 1e-12);
            // Stays inside the unit-side triangle hull.
            for v in poly.vertices() {
                assert!(v[1] >= -1e-12 && v[0] >= -1e-12 && v[0] <= 1.0 + 1e-12);
                assert!(v[1] <= 3f64.sqrt() / 2.0 + 1e-12);
            }
        }
        assert!(arrowhead_polyline(MAX_ARROWHEAD_LEVEL + 1).is_err());
    }

    #[test]
    fn polyline_sampling_single_segment() {
        let poly = Polyline::new(vec![[0.0, 0.0], [1.0, 0.0]]).unwrap();
        let cloud = sample_polyline_uniform(&poly, 50, &mut rng(5)).unwrap();
        for p in cloud.iter() {
            assert_eq!(p[1], 0.0);
            assert!((0.0..=1.0).contains(&p[0]));
        }
    }

    #[test]
    fn polyline_sampling_proportional_to_length() {
        // Segments of length 1 and 3: the long one should get ~3/4 of the
        // points. 5 sigma of a Binomial(1e5, 3/4) is ~685.
        let poly = Polyline::new(vec![[0.0, 0.0], [1.0, 0.0], [4.0, 0.0]]).unwrap();
        let n = 100_000;
        let cloud = sample_polyline_uniform(&poly, n, &mut rng(6)).unwrap();
        let on_long = cloud.iter().filter(|p| p[0] > 1.0).count();
        let expected = 3.0 * n as f64 / 4.0;
        assert!((on_long as f64 - expected).abs() < 685.0, "count {on_long}");
    }

    #[test]
    fn arrowhead_level1_equal_allocation() {
        let poly = arrowhead_polyline(1).unwrap();
        let n = 30_000;
        let cloud = sample_polyline_uniform(&poly, n, &mut rng(7)).unwrap();
        // Classify by nearest segment midpoint.
        let mids: Vec<[f64; 2]> = (0..3)
            .map(|i| {
                let a = poly.vertices()[i];
                let b = poly.vertices()[i + 1];
                [(a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0]
            })
            .collect();
        let mut counts = [0usize; 3];
        for p in cloud.iter() {
            let closest = (0..3)
                .min_by(|&i, &j| {
                    let di = (p[0] - mids[i][0]).powi(2) + (p[1] - mids[i][1]).powi(2);
                    let dj = (p[0] - mids[j][0]).powi(2) + (p[1] - mids[j][1]).powi(2);
                    di.partial_cmp(&dj).unwrap()
                })
                .unwrap();
            counts[closest] += 1;
        }
        let expected = n as f64 / 3.0;
        let three_sigma = 3.0 * (n as f64 * (1.0 / 3.0) * (2.0 / 3.0)).sqrt();
        for c in counts {
            assert!(
                (c as f64 - expected).abs() <= three_sigma,
                "counts {counts:?}"
            );
        }
    }

    #[test]
    fn sierpinski_self_similarity() {
        // Points whose first digit is 0 should look like the whole set
        // scaled by 1/2 (two-sample KS over both coordinates).
        let spec = ShapeSpec::new(ShapeKind::Sierpinski { separation: 0.0 });
        let n = 60_000;
        let cloud = sample(&spec, n, &mut rng(8)).unwrap();
        // First digit 0 <=> the point lies in the lower-left copy, i.e.
        // within the hull of the half-scaled triangle.
        let scaled: Vec<f64> = cloud.iter().map(|p| p[0] * 0.5).collect();
        let lower_left: Vec<f64> = cloud
            .iter()
            .filter(|p| p[1] < 3f64.sqrt() / 4.0 && p[0] + p[1] / 3f64.sqrt() < 0.5)
            .map(|p| p[0])
            .collect();
        assert!(lower_left.len() > n / 4);
        let ks = two_sample_ks(&scaled, &lower_left);
        assert!(ks < 0.02, "ks distance {ks}");
    }

    fn two_sample_ks(a: &[f64], b: &[f64]) -> f64 {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        a.sort_unstable_by(|x, y| x.partial_cmp(y).unwrap());
        b.sort_unstable_by(|x, y| x.partial_cmp(y).unwrap());
        let mut sup: f64 = 0.0;
        for &t in a.iter().chain(b.iter()) {
            let fa = a.partition_point(|&v| v <= t) as f64 / a.len() as f64;
            let fb = b.partition_point(|&v| v <= t) as f64 / b.len() as f64;
            sup = sup.max((fa - fb).abs());
        }
        sup
    }

    proptest! {
        #[test]
        fn sierpinski_support_containment(separation in 0.0f64..6.0, stream in 0u64..1000) {
            let spec = ShapeSpec::new(ShapeKind::Sierpinski { separation });
            let cloud = sample(&spec, 64, &mut rng(stream)).unwrap();
            let x_max = 1.0 / (1.0 + separation);
            let y_max = (3f64.sqrt() / 2.0) / (1.0 + separation);
            for p in cloud.iter() {
                prop_assert!(p[0] >= 0.0 && p[0] <= x_max + 1e-12);
                prop_assert!(p[1] >= 0.0 && p[1] <= y_max + 1e-12);
            }
        }

        #[test]
        fn unit_supports(stream in 0u64..500) {
            let square = sample(&ShapeSpec::new(ShapeKind::Square), 32, &mut rng(stream)).unwrap();
            for p in square.iter() {
                prop_assert!((0.0..=1.0).contains(&p[0]) && (0.0..=1.0).contains(&p[1]));
            }
            let disk = sample(&ShapeSpec::new(ShapeKind::Disk), 32, &mut rng(stream)).unwrap();
            for p in disk.iter() {
                prop_assert!(p[0].hypot(p[1]) <= UNIT_AREA_DISK_RADIUS + 1e-12);
            }
            let tri = sample(&ShapeSpec::new(ShapeKind::Triangle), 32, &mut rng(stream)).unwrap();
            let s = UNIT_AREA_TRIANGLE_SIDE;
            for p in tri.iter() {
                prop_assert!(p[1] >= -1e-12 && p[0] >= -1e-12 && p[0] <= s + 1e-12);
            }
        }

        #[test]
        fn torus_points_on_surface(stream in 0u64..500) {
            let spec = ShapeSpec::torus();
            let cloud = sample(&spec, 32, &mut rng(stream)).unwrap();
            for p in cloud.iter() {
                let ring = p[0].hypot(p[1]);
                let d = ((ring - 5.0).powi(2) + p[2].powi(2)).sqrt();
                prop_assert!((d - 3.0).abs() < 1e-9);
            }
        }
    }
}

//! Vietoris-Rips persistent homology of finite metric spaces over Z/2:
//! a union-find fast path for reduced H0, an implicit-coboundary reduction
//! engine with clearing for H1 and H2, and an unoptimised full-matrix
//! reduction kept as a testing oracle.

mod engine;
mod io;
mod mst;
mod oracle;

pub use engine::{vr_barcode, vr_barcode_with, VrOptions, DEFAULT_MAX_SIMPLICES};
pub use io::{
    barcodes_from_csv, barcodes_to_csv, distance_matrix_from_lower_text,
    distance_matrix_to_lower_text,
};
pub use mst::{mst_interval_lengths, CloudDistances, PointDistances};
pub use oracle::{brute_force_barcode, BRUTE_FORCE_MAX_POINTS};

use crate::error::{Error, Result};
use crate::geometry::PointCloud;

/// Euclidean distance between two coordinate slices.
pub fn euclidean_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Symmetric matrix of pairwise distances with zero diagonal, stored as the
/// packed strict lower triangle.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    // Row-major strict lower triangle: entry (i, j) with i > j sits at
    // i * (i - 1) / 2 + j.
    entries: Vec<f64>,
}

impl DistanceMatrix {
    /// Pairwise Euclidean distances of a point cloud.
    pub fn from_cloud(cloud: &PointCloud) -> Result<Self> {
        let n = cloud.len();
        if n == 0 {
            return Err(Error::Parameter("point cloud is empty".into()));
        }
        let mut entries = Vec::with_capacity(n * (n - 1) / 2);
        for i in 1..n {
            let pi = cloud.point(i);
            for j in 0..i {
                entries.push(euclidean_distance(pi, cloud.point(j)));
            }
        }
        Ok(DistanceMatrix { n, entries })
    }

    /// Build from a packed strict lower triangle (row `i` contributes `i`
    /// entries, `i = 1..n`).
    pub fn from_lower_triangle(n: usize, entries: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parameter("a distance matrix needs n >= 1".into()));
        }
        if entries.len() != n * (n - 1) / 2 {
            return Err(Error::Parameter(format!(
                "expected {} lower-triangular entries for n = {}, got {}",
                n * (n - 1) / 2,
                n,
                entries.len()
            )));
        }
        if entries.iter().any(|d| !(d.is_finite() && *d >= 0.0)) {
            return Err(Error::Parameter(
                "distances must be finite and nonnegative".into(),
            ));
        }
        Ok(DistanceMatrix { n, entries })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => 0.0,
            std::cmp::Ordering::Greater => self.entries[i * (i - 1) / 2 + j],
            std::cmp::Ordering::Less => self.entries[j * (j - 1) / 2 + i],
        }
    }

    pub(crate) fn lower_triangle(&self) -> &[f64] {
        &self.entries
    }

    /// Enclosing radius: `min_i max_j d(i, j)`. Beyond this scale the
    /// complex is a cone, so no homology in dimensions >= 1 survives.
    pub fn enclosing_radius(&self) -> f64 {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j)).fold(0.0f64, f64::max))
            .fold(f64::INFINITY, f64::min)
    }
}

/// Compute the Euclidean distance matrix of a cloud.
pub fn distance_matrix(cloud: &PointCloud) -> Result<DistanceMatrix> {
    DistanceMatrix::from_cloud(cloud)
}

/// A finite persistence interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub birth: f64,
    pub death: f64,
}

impl Interval {
    pub fn new(birth: f64, death: f64) -> Self {
        debug_assert!(death >= birth && birth >= 0.0);
        Interval { birth, death }
    }

    pub fn length(&self) -> f64 {
        self.death - self.birth
    }
}

/// The multiset of persistence intervals of one homological dimension.
///
/// Zero-length intervals are dropped on construction: they contribute
/// nothing to total lengths and would inflate CDF denominators. Intervals
/// are kept sorted by (birth, death) so equal barcodes compare equal.
#[derive(Debug, Clone, PartialEq)]
pub struct Barcode {
    pub hom_dim: usize,
    intervals: Vec<Interval>,
}

impl Barcode {
    pub fn new(hom_dim: usize, mut intervals: Vec<Interval>) -> Self {
        intervals.retain(|iv| iv.death > iv.birth);
        intervals.sort_unstable_by(|a, b| {
            (a.birth, a.death)
                .partial_cmp(&(b.birth, b.death))
                .expect("finite endpoints")
        });
        Barcode { hom_dim, intervals }
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Interval lengths in barcode order.
    pub fn lengths(&self) -> Vec<f64> {
        self.intervals.iter().map(Interval::length).collect()
    }

    /// Sum of interval lengths; zero for an empty barcode.
    pub fn total_length(&self) -> f64 {
        self.intervals.iter().map(Interval::length).sum()
    }
}

/// Sum of the interval lengths of a barcode.
pub fn total_length(barcode: &Barcode) -> f64 {
    barcode.total_length()
}

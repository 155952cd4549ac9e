//! Minimal spanning tree edge lengths via Kruskal with union-find.
//!
//! The edge lengths of a Euclidean MST equal the reduced H0 interval lengths
//! of the Vietoris-Rips filtration, which makes this the fast path for every
//! 0-dimensional quantity in the crate.

use crate::geometry::PointCloud;
use crate::persistence::{euclidean_distance, DistanceMatrix};

/// Read access to the pairwise distances of an implicit complete graph.
pub trait PointDistances {
    fn count(&self) -> usize;
    fn distance(&self, i: usize, j: usize) -> f64;
}

impl PointDistances for DistanceMatrix {
    fn count(&self) -> usize {
        self.len()
    }

    fn distance(&self, i: usize, j: usize) -> f64 {
        self.get(i, j)
    }
}

/// Distances computed on demand from a point cloud, so MSTs of large clouds
/// never materialise an n x n matrix.
pub struct CloudDistances<'a> {
    cloud: &'a PointCloud,
}

impl<'a> CloudDistances<'a> {
    pub fn new(cloud: &'a PointCloud) -> Self {
        CloudDistances { cloud }
    }
}

impl PointDistances for CloudDistances<'_> {
    fn count(&self) -> usize {
        self.cloud.len()
    }

    fn distance(&self, i: usize, j: usize) -> f64 {
        euclidean_distance(self.cloud.point(i), self.cloud.point(j))
    }
}

pub(crate) struct UnionFind {
    parent: Vec<u32>,
    rank: Vec<u8>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
            rank: vec![0; n],
        }
    }

    pub fn find(&mut self, mut x: u32) -> u32 {
        // Path halving.
        while self.parent[x as usize] != x {
            let grand = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = grand;
            x = grand;
        }
        x
    }

    /// Union by rank; returns false if the two were already connected.
    pub fn union(&mut self, a: u32, b: u32) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra as usize].cmp(&self.rank[rb as usize]) {
            std::cmp::Ordering::Less => self.parent[ra as usize] = rb,
            std::cmp::Ordering::Greater => self.parent[rb as usize] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb as usize] = ra;
                self.rank[ra as usize] += 1;
            }
        }
        true
    }
}

/// Edge lengths of a minimal spanning tree on the `n` points of `d`,
/// sorted ascending; `n - 1` values, empty for a single point.
///
/// Kruskal with union-find, run on the subgraph of edges no longer than a
/// threshold. If a spanning tree exists using only edges `<= t`, the MST of
/// the complete graph uses only such edges (the MST minimises its bottleneck
/// edge), so Kruskal restricted to them finds a true MST. The threshold
/// starts from a nearest-neighbour estimate and doubles until the subgraph
/// spans, which keeps the candidate set far below the full `n(n-1)/2`.
pub fn mst_interval_lengths<D: PointDistances + ?Sized>(d: &D) -> Vec<f64> {
    let n = d.count();
    if n <= 1 {
        return Vec::new();
    }
    let mut threshold = initial_threshold(d);
    let max_distance = f64::INFINITY;
    loop {
        let mut edges: Vec<(f64, u32, u32)> = Vec::new();
        let mut exceeded = false;
        for i in 1..n {
            for j in 0..i {
                let dist = d.distance(i, j);
                if dist <= threshold {
                    edges.push((dist, i as u32, j as u32));
                } else {
                    exceeded = true;
                }
            }
        }
        if edges.len() >= n - 1 {
            edges.sort_unstable_by(|a, b| a.partial_cmp(b).expect("finite distances"));
            let mut uf = UnionFind::new(n);
            let mut lengths = Vec::with_capacity(n - 1);
            for &(dist, i, j) in &edges {
                if uf.union(i, j) {
                    lengths.push(dist);
                    if lengths.len() == n - 1 {
                        return lengths;
                    }
                }
            }
        }
        if !exceeded {
            // All edges were already considered; the graph cannot span.
            // Unreachable for finite metrics, but avoid looping forever.
            return Vec::new();
        }
        threshold = if threshold > 0.0 {
            (threshold * 2.0).min(max_distance)
        } else {
            1.0
        };
    }
}

/// Starting threshold: four times the largest nearest-neighbour distance
/// among a deterministic subset of points. Always positive when any pair is
/// separated.
fn initial_threshold<D: PointDistances + ?Sized>(d: &D) -> f64 {
    let n = d.count();
    let probes = n.min(64);
    let mut worst = 0.0f64;
    for i in 0..probes {
        let mut nearest = f64::INFINITY;
        for j in 0..n {
            if i != j {
                nearest = nearest.min(d.distance(i, j));
            }
        }
        if nearest.is_finite() {
            worst = worst.max(nearest);
        }
    }
    if worst > 0.0 {
        worst * 4.0
    } else {
        // Degenerate probes (duplicate points): fall back to any positive
        // pairwise distance.
        let mut any = 0.0f64;
        'outer: for i in 1..n {
            for j in 0..i {
                let dist = d.distance(i, j);
                if dist > 0.0 {
                    any = dist;
                    break 'outer;
                }
            }
        }
        if any > 0.0 {
            any
        } else {
            1.0
        }
    }
}

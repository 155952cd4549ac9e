//! Vietoris-Rips barcode engine.
//!
//! Dimension 0 is solved by union-find over the edges in filtration order.
//! Dimensions 1 and 2 are solved by reducing the coboundary matrix column by
//! column in reverse filtration order, which pairs the same simplices as the
//! textbook boundary reduction but touches far fewer columns in practice:
//!
//! * columns killed by clearing (the pivots of the previous dimension) are
//!   never assembled;
//! * a column whose first same-diameter cofacet is unclaimed pairs
//!   immediately without materialising the rest of its coboundary;
//! * coboundaries are enumerated on demand from a combinatorial index, so the
//!   complex itself is never stored.
//!
//! The filtration orders simplices by (diameter, dimension) with a fixed
//! index tie-break inside each dimension; any such refinement produces the
//! same interval multiset.

use std::collections::hash_map::Entry;
use std::collections::{BinaryHeap, HashMap, HashSet};

use crate::error::{Error, Result};
use crate::persistence::mst::{mst_interval_lengths, UnionFind};
use crate::persistence::{Barcode, DistanceMatrix, Interval};

/// Default cap on `C(n, max_hom_dim + 2)`, the number of simplices of the
/// largest dimension a computation may touch.
pub const DEFAULT_MAX_SIMPLICES: u64 = 5_000_000_000;

/// Tunables for [`vr_barcode_with`].
#[derive(Debug, Clone)]
pub struct VrOptions {
    /// Budget on the simplex-count estimate `C(n, k + 2)` for homology up to
    /// dimension `k`; computations that would exceed it fail fast.
    pub max_simplices: u64,
}

impl Default for VrOptions {
    fn default() -> Self {
        VrOptions {
            max_simplices: DEFAULT_MAX_SIMPLICES,
        }
    }
}

/// Barcodes of the Vietoris-Rips filtration in homological dimensions
/// `0..=max_hom_dim` (at most 2), with default options.
pub fn vr_barcode(dist: &DistanceMatrix, max_hom_dim: usize) -> Result<Vec<Barcode>> {
    vr_barcode_with(dist, max_hom_dim, &VrOptions::default())
}

pub fn vr_barcode_with(
    dist: &DistanceMatrix,
    max_hom_dim: usize,
    options: &VrOptions,
) -> Result<Vec<Barcode>> {
    if max_hom_dim > 2 {
        return Err(Error::Unsupported(format!(
            "homological dimension {max_hom_dim} (supported: 0, 1, 2)"
        )));
    }
    let n = dist.len();
    for vertex_count in 2..=(max_hom_dim + 2) {
        let estimate = binomial_u128(n as u64, vertex_count as u64);
        if estimate > options.max_simplices as u128 {
            return Err(Error::Resource {
                what: "simplices",
                needed: estimate.min(u64::MAX as u128) as u64,
                budget: options.max_simplices,
            });
        }
    }

    // Reduced H0 bars are [0, w] for the MST edge weights w; the fast path
    // avoids materialising the edge list when nothing above H0 is wanted.
    if max_hom_dim == 0 {
        let intervals = mst_interval_lengths(dist)
            .into_iter()
            .map(|w| Interval::new(0.0, w))
            .collect();
        return Ok(vec![Barcode::new(0, intervals)]);
    }

    let ctx = Context::new(dist, max_hom_dim);
    let mut barcodes = Vec::with_capacity(max_hom_dim + 1);

    let (h0, mut columns) = ctx.zeroth_dimension();
    barcodes.push(Barcode::new(0, h0));

    for dim in 1..=max_hom_dim {
        let (intervals, pivots) = ctx.reduce_dimension(dim, &columns);
        barcodes.push(Barcode::new(dim, intervals));
        if dim < max_hom_dim {
            columns = ctx.assemble_triangle_columns(&pivots);
        }
    }
    Ok(barcodes)
}

/// A simplex addressed by its filtration diameter and combinatorial rank.
#[derive(Debug, Clone, Copy, PartialEq)]
struct DiamRank {
    diam: f64,
    rank: u64,
}

/// Heap entry ordered so the top is the filtration-minimal cofacet:
/// smallest diameter first, largest rank on ties.
#[derive(Debug, Clone, Copy, PartialEq)]
struct HeapEntry(DiamRank);

impl Eq for HeapEntry {}

impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        other
            .0
            .diam
            .partial_cmp(&self.0.diam)
            .expect("finite diameters")
            .then(self.0.rank.cmp(&other.0.rank))
    }
}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

struct Context<'a> {
    dist: &'a DistanceMatrix,
    n: usize,
    threshold: f64,
    binomial: Vec<Vec<u64>>, // binomial[v][k] = C(v, k), k <= max_hom_dim + 2
}

impl<'a> Context<'a> {
    fn new(dist: &'a DistanceMatrix, max_hom_dim: usize) -> Self {
        let n = dist.len();
        let k_max = max_hom_dim + 2;
        let mut binomial = vec![vec![0u64; k_max + 1]; n + 1];
        for row in binomial.iter_mut() {
            row[0] = 1;
        }
        for v in 1..=n {
            for k in 1..=k_max {
                let without = binomial[v - 1][k];
                let with = binomial[v - 1][k - 1];
                binomial[v][k] = without.saturating_add(with);
            }
        }
        Context {
            dist,
            n,
            threshold: dist.enclosing_radius(),
            binomial,
        }
    }

    #[inline]
    fn choose(&self, v: usize, k: usize) -> u64 {
        self.binomial[v][k]
    }

    /// Combinatorial rank of a simplex given by strictly decreasing vertices.
    fn rank(&self, vertices_desc: &[u32]) -> u64 {
        let k = vertices_desc.len();
        vertices_desc
            .iter()
            .enumerate()
            .map(|(i, &v)| self.choose(v as usize, k - i))
            .sum()
    }

    /// Inverse of [`Context::rank`]; writes strictly decreasing vertices.
    fn decode(&self, mut rank: u64, dim: usize, out: &mut Vec<u32>) {
        out.clear();
        let mut k = dim + 1;
        let mut upper = self.n;
        while k > 0 {
            // Largest v < upper with C(v, k) <= rank.
            let mut lo = k - 1;
            let mut hi = upper;
            while lo + 1 < hi {
                let mid = (lo + hi) / 2;
                if self.choose(mid, k) <= rank {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            out.push(lo as u32);
            rank -= self.choose(lo, k);
            upper = lo;
            k -= 1;
        }
    }

    /// H0 intervals and the dimension-1 columns left after clearing.
    ///
    /// Edges are processed in filtration order; merging edges are the deaths
    /// paired with vertices, all other edges survive as columns to reduce.
    fn zeroth_dimension(&self) -> (Vec<Interval>, Vec<DiamRank>) {
        let n = self.n;
        let mut edges: Vec<DiamRank> = Vec::with_capacity(n * (n - 1) / 2);
        for i in 1..n {
            for j in 0..i {
                let diam = self.dist.get(i, j);
                if diam <= self.threshold {
                    edges.push(DiamRank {
                        diam,
                        rank: self.choose(i, 2) + self.choose(j, 1),
                    });
                }
            }
        }
        // Ascending filtration order: diameter, then decreasing rank.
        edges.sort_unstable_by(|a, b| {
            a.diam
                .partial_cmp(&b.diam)
                .expect("finite diameters")
                .then(b.rank.cmp(&a.rank))
        });
        let mut uf = UnionFind::new(n);
        let mut intervals = Vec::with_capacity(n.saturating_sub(1));
        let mut columns = Vec::new();
        let mut buf = Vec::with_capacity(2);
        for e in edges {
            self.decode(e.rank, 1, &mut buf);
            if uf.union(buf[0], buf[1]) {
                intervals.push(Interval::new(0.0, e.diam));
            } else {
                columns.push(e);
            }
        }
        // Reverse filtration order for the cohomology pass.
        columns.reverse();
        (intervals, columns)
    }

    /// All 2-simplices below the threshold that were not pivots of the
    /// dimension-1 reduction, in reverse filtration order.
    fn assemble_triangle_columns(&self, cleared: &HashSet<u64>) -> Vec<DiamRank> {
        let n = self.n;
        let mut columns = Vec::new();
        for i in 2..n {
            let base_i = self.choose(i, 3);
            for j in 1..i {
                let d_ij = self.dist.get(i, j);
                if d_ij > self.threshold {
                    continue;
                }
                let base_j = base_i + self.choose(j, 2);
                for k in 0..j {
                    let diam = d_ij.max(self.dist.get(i, k)).max(self.dist.get(j, k));
                    if diam > self.threshold {
                        continue;
                    }
                    let rank = base_j + self.choose(k, 1);
                    if !cleared.contains(&rank) {
                        columns.push(DiamRank { diam, rank });
                    }
                }
            }
        }
        columns.sort_unstable_by(|a, b| {
            b.diam
                .partial_cmp(&a.diam)
                .expect("finite diameters")
                .then(a.rank.cmp(&b.rank))
        });
        columns
    }

    /// Push every cofacet of `simplex` (below the threshold) onto the heap.
    fn push_coboundary(
        &self,
        simplex: DiamRank,
        dim: usize,
        buf: &mut Vec<u32>,
        heap: &mut BinaryHeap<HeapEntry>,
    ) {
        self.decode(simplex.rank, dim, buf);
        let vertices = buf.clone();
        self.for_each_cofacet(&vertices, simplex.diam, dim, |cofacet| {
            heap.push(HeapEntry(cofacet));
            true
        });
    }

    /// Enumerate cofacets of a simplex in decreasing rank order; the visitor
    /// returns false to stop early. Cofacets above the threshold are skipped.
    fn for_each_cofacet<F: FnMut(DiamRank) -> bool>(
        &self,
        vertices_desc: &[u32],
        diam: f64,
        dim: usize,
        mut visit: F,
    ) {
        let mut merged: Vec<u32> = Vec::with_capacity(dim + 2);
        for w in (0..self.n as u32).rev() {
            if vertices_desc.contains(&w) {
                continue;
            }
            let mut cofacet_diam = diam;
            for &v in vertices_desc {
                cofacet_diam = cofacet_diam.max(self.dist.get(w as usize, v as usize));
            }
            if cofacet_diam > self.threshold {
                continue;
            }
            merged.clear();
            merged.extend_from_slice(vertices_desc);
            let pos = merged.partition_point(|&v| v > w);
            merged.insert(pos, w);
            let rank = self.rank(&merged);
            if !visit(DiamRank {
                diam: cofacet_diam,
                rank,
            }) {
                return;
            }
        }
    }

    /// Reduce the coboundary matrix of one dimension. Returns the intervals
    /// of `dim`-dimensional homology and the set of `(dim + 1)`-simplex ranks
    /// that became pivots (cleared from the next dimension's columns).
    fn reduce_dimension(&self, dim: usize, columns: &[DiamRank]) -> (Vec<Interval>, HashSet<u64>) {
        let mut intervals = Vec::new();
        let mut pivot_index: HashMap<u64, usize> = HashMap::with_capacity(columns.len());
        let mut reduction: Vec<Vec<DiamRank>> = vec![Vec::new(); columns.len()];
        let mut heap: BinaryHeap<HeapEntry> = BinaryHeap::new();
        let mut buf: Vec<u32> = Vec::with_capacity(dim + 1);

        for (j, &column) in columns.iter().enumerate() {
            heap.clear();
            let mut v_entries = vec![column];

            // Build the coboundary, short-circuiting on an emergent pair: the
            // first same-diameter cofacet (ranks are enumerated downwards, so
            // it is the filtration-minimal one) pairs with this column if no
            // earlier column claimed it.
            self.decode(column.rank, dim, &mut buf);
            let vertices = buf.clone();
            let mut emergent: Option<DiamRank> = None;
            let mut shortcut_armed = true;
            self.for_each_cofacet(&vertices, column.diam, dim, |cofacet| {
                if shortcut_armed && cofacet.diam == column.diam {
                    if !pivot_index.contains_key(&cofacet.rank) {
                        emergent = Some(cofacet);
                        return false;
                    }
                    shortcut_armed = false;
                }
                heap.push(HeapEntry(cofacet));
                true
            });
            if let Some(pivot) = emergent {
                pivot_index.insert(pivot.rank, j);
                reduction[j] = v_entries;
                continue; // zero persistence, no interval
            }

            loop {
                match get_pivot(&mut heap) {
                    None => {
                        // A fully cancelled column would be an essential
                        // class; the enclosing-radius threshold rules those
                        // out in dimensions >= 1.
                        debug_assert!(false, "unexpected essential class in dim {dim}");
                        break;
                    }
                    Some(pivot) => match pivot_index.entry(pivot.0.rank) {
                        Entry::Occupied(owner) => {
                            let owner = *owner.get();
                            for &entry in &reduction[owner] {
                                v_entries.push(entry);
                                self.push_coboundary(entry, dim, &mut buf, &mut heap);
                            }
                        }
                        Entry::Vacant(slot) => {
                            slot.insert(j);
                            if pivot.0.diam > column.diam {
                                intervals.push(Interval::new(column.diam, pivot.0.diam));
                            }
                            compress(&mut v_entries);
                            reduction[j] = v_entries;
                            break;
                        }
                    },
                }
            }
        }
        (intervals, pivot_index.into_keys().collect())
    }
}

/// Top of the heap with duplicate (mod 2 cancelled) entries removed, without
/// removing the survivor.
fn get_pivot(heap: &mut BinaryHeap<HeapEntry>) -> Option<HeapEntry> {
    let pivot = pop_pivot(heap)?;
    heap.push(pivot);
    Some(pivot)
}

fn pop_pivot(heap: &mut BinaryHeap<HeapEntry>) -> Option<HeapEntry> {
    while let Some(top) = heap.pop() {
        match heap.peek() {
            Some(next) if next.0.rank == top.0.rank => {
                heap.pop();
            }
            _ => return Some(top),
        }
    }
    None
}

/// Mod-2 compression: drop entries appearing an even number of times.
fn compress(entries: &mut Vec<DiamRank>) {
    entries.sort_unstable_by_key(|e| e.rank);
    let mut out = Vec::with_capacity(entries.len());
    let mut i = 0;
    while i < entries.len() {
        let mut run = 1;
        while i + run < entries.len() && entries[i + run].rank == entries[i].rank {
            run += 1;
        }
        if run % 2 == 1 {
            out.push(entries[i]);
        }
        i += run;
    }
    *entries = out;
}

fn binomial_u128(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut result: u128 = 1;
    for i in 0..k {
        result = result * (n - i) as u128 / (i + 1) as u128;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::PointCloud;
    use crate::persistence::{distance_matrix, mst_interval_lengths};

    fn matrix(points: &[[f64; 2]]) -> DistanceMatrix {
        let cloud = PointCloud::new(points.iter().flatten().copied().collect(), 2).unwrap();
        distance_matrix(&cloud).unwrap()
    }

    #[test]
    fn rejects_dim_three() {
        let d = matrix(&[[0.0, 0.0], [1.0, 0.0]]);
        assert!(matches!(vr_barcode(&d, 3), Err(Error::Unsupported(_))));
    }

    #[test]
    fn budget_produces_resource_error() {
        let d = matrix(&[[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [2.0, 2.0]]);
        let opts = VrOptions { max_simplices: 3 };
        match vr_barcode_with(&d, 2, &opts) {
            Err(Error::Resource { needed, budget, .. }) => {
                assert_eq!(budget, 3);
                assert!(needed > 3);
            }
            other => panic!("expected resource error, got {other:?}"),
        }
    }

    #[test]
    fn two_points() {
        let d = matrix(&[[0.0, 0.0], [1.0, 0.0]]);
        let barcodes = vr_barcode(&d, 1).unwrap();
        assert_eq!(barcodes[0].intervals(), &[Interval::new(0.0, 1.0)]);
        assert!(barcodes[1].is_empty());
    }

    #[test]
    fn single_point() {
        let d = matrix(&[[0.5, 0.5]]);
        let barcodes = vr_barcode(&d, 2).unwrap();
        assert!(barcodes.iter().all(Barcode::is_empty));
    }

    #[test]
    fn unit_square_h1() {
        let d = matrix(&[[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]]);
        let barcodes = vr_barcode(&d, 1).unwrap();
        let h0: Vec<f64> = barcodes[0].lengths();
        assert_eq!(h0, vec![1.0, 1.0, 1.0]);
        // One loop born when the last side closes at 1, killed at sqrt(2).
        assert_eq!(barcodes[1].intervals(), &[Interval::new(1.0, 2f64.sqrt())]);
        assert!((barcodes[1].total_length() - (2f64.sqrt() - 1.0)).abs() < 1e-15);
    }

    #[test]
    fn triangle_h1_is_empty() {
        // For any 3-point space with distances a <= b <= c the loop and its
        // filler both arrive at c.
        let d = DistanceMatrix::from_lower_triangle(3, vec![0.7, 1.1, 0.9]).unwrap();
        let barcodes = vr_barcode(&d, 1).unwrap();
        assert_eq!(barcodes[0].lengths(), vec![0.7, 0.9]);
        assert!(barcodes[1].is_empty());
    }

    #[test]
    fn h0_matches_mst() {
        let pts: Vec<[f64; 2]> = (0..40)
            .map(|i| {
                let t = i as f64 * 0.61;
                [(t * 1.7).sin() * 3.0, (t * 0.9).cos() * 2.0]
            })
            .collect();
        let d = matrix(&pts);
        let barcodes = vr_barcode(&d, 1).unwrap();
        let mut h0 = barcodes[0].lengths();
        h0.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
        let mst: Vec<f64> = mst_interval_lengths(&d)
            .into_iter()
            .filter(|w| *w > 0.0)
            .collect();
        assert_eq!(h0, mst);
    }

    #[test]
    fn duplicate_points_tolerated() {
        let d = matrix(&[[0.0, 0.0], [0.0, 0.0], [1.0, 0.0], [1.0, 1.0]]);
        let barcodes = vr_barcode(&d, 1).unwrap();
        // The zero-length bar between the duplicates is dropped.
        assert_eq!(barcodes[0].len(), 2);
    }

    #[test]
    fn rank_decode_roundtrip() {
        let d = matrix(&[[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0], [0.5, 0.5]]);
        let ctx = Context::new(&d, 2);
        let mut buf = Vec::new();
        for (dim, count) in [(0usize, 5u64), (1, 10), (2, 10), (3, 5)] {
            for rank in 0..count {
                ctx.decode(rank, dim, &mut buf);
                assert_eq!(buf.len(), dim + 1);
                assert!(buf.windows(2).all(|w| w[0] > w[1]));
                assert_eq!(ctx.rank(&buf), rank, "dim {dim} rank {rank}");
            }
        }
    }
}

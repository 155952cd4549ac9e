//! Testing oracle: persistence by the textbook left-to-right column
//! reduction of the full boundary matrix, with no clearing, no implicit
//! representation and no shortcuts. Deliberately slow and independent of the
//! engine's code path; everything it shares with the engine is the distance
//! matrix itself.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::persistence::{Barcode, DistanceMatrix, Interval};

/// Hard cap on the oracle's input size.
pub const BRUTE_FORCE_MAX_POINTS: usize = 25;

/// Same contract as [`crate::persistence::vr_barcode`], computed by full
/// standard reduction. Only for small inputs.
pub fn brute_force_barcode(dist: &DistanceMatrix, max_hom_dim: usize) -> Result<Vec<Barcode>> {
    if max_hom_dim > 2 {
        return Err(Error::Unsupported(format!(
            "homological dimension {max_hom_dim} (supported: 0, 1, 2)"
        )));
    }
    let n = dist.len();
    if n > BRUTE_FORCE_MAX_POINTS {
        return Err(Error::Resource {
            what: "oracle points",
            needed: n as u64,
            budget: BRUTE_FORCE_MAX_POINTS as u64,
        });
    }

    // Enumerate every simplex up to dimension max_hom_dim + 1 with its
    // diameter, then order the filtration by (diameter, dimension,
    // lexicographic vertex tuple).
    let mut simplices: Vec<(Vec<usize>, f64)> = Vec::new();
    for dim in 0..=(max_hom_dim + 1) {
        let mut vertices: Vec<usize> = (0..=dim).collect();
        if vertices.len() > n {
            break;
        }
        loop {
            let diam = diameter(dist, &vertices);
            simplices.push((vertices.clone(), diam));
            if !next_combination(&mut vertices, n) {
                break;
            }
        }
    }
    simplices.sort_by(|(va, da), (vb, db)| {
        da.partial_cmp(db)
            .expect("finite diameters")
            .then(va.len().cmp(&vb.len()))
            .then(va.cmp(vb))
    });

    let index_of: HashMap<&[usize], usize> = simplices
        .iter()
        .enumerate()
        .map(|(i, (v, _))| (v.as_slice(), i))
        .collect();

    // Boundary matrix over Z/2: column j lists the filtration indices of the
    // facets of simplex j, sorted ascending.
    let mut columns: Vec<Vec<usize>> = Vec::with_capacity(simplices.len());
    for (vertices, _) in &simplices {
        let mut column = Vec::new();
        if vertices.len() > 1 {
            let mut facet = Vec::with_capacity(vertices.len() - 1);
            for omit in 0..vertices.len() {
                facet.clear();
                facet.extend(vertices.iter().enumerate().filter_map(|(i, &v)| {
                    if i == omit {
                        None
                    } else {
                        Some(v)
                    }
                }));
                column.push(index_of[facet.as_slice()]);
            }
            column.sort_unstable();
        }
        columns.push(column);
    }

    // Standard reduction: repeatedly add the column with the same low.
    let mut low_owner: HashMap<usize, usize> = HashMap::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..columns.len() {
        while let Some(&low) = columns[j].last() {
            match low_owner.get(&low) {
                Some(&k) => {
                    let other = std::mem::take(&mut columns[k]);
                    columns[j] = symmetric_difference(&columns[j], &other);
                    columns[k] = other;
                }
                None => {
                    low_owner.insert(low, j);
                    pairs.push((low, j));
                    break;
                }
            }
        }
    }

    let mut intervals: Vec<Vec<Interval>> = vec![Vec::new(); max_hom_dim + 1];
    for (birth_idx, death_idx) in pairs {
        let (birth_simplex, birth) = &simplices[birth_idx];
        let dim = birth_simplex.len() - 1;
        if dim <= max_hom_dim {
            let death = simplices[death_idx].1;
            intervals[dim].push(Interval::new(*birth, death));
        }
    }

    // Unpaired positive simplices are essential classes. The full complex is
    // a cone, so the only one is the single infinite H0 bar, which reduced
    // homology removes; nothing to record.

    Ok(intervals
        .into_iter()
        .enumerate()
        .map(|(dim, ivs)| Barcode::new(dim, ivs))
        .collect())
}

fn diameter(dist: &DistanceMatrix, vertices: &[usize]) -> f64 {
    let mut diam = 0.0f64;
    for (i, &a) in vertices.iter().enumerate() {
        for &b in &vertices[i + 1..] {
            diam = diam.max(dist.get(a, b));
        }
    }
    diam
}

/// Advance `vertices` to the next k-combination of {0, .., n-1} in
/// lexicographic order; false once exhausted.
fn next_combination(vertices: &mut [usize], n: usize) -> bool {
    let k = vertices.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if vertices[i] < n - (k - i) {
            vertices[i] += 1;
            for j in i + 1..k {
                vertices[j] = vertices[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn symmetric_difference(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::PointCloud;
    use crate::persistence::distance_matrix;

    #[test]
    fn two_points_single_bar() {
        let d = DistanceMatrix::from_lower_triangle(2, vec![1.0]).unwrap();
        let barcodes = brute_force_barcode(&d, 1).unwrap();
        assert_eq!(barcodes[0].intervals(), &[Interval::new(0.0, 1.0)]);
        assert!(barcodes[1].is_empty());
    }

    #[test]
    fn unit_square_h1_by_reduction() {
        let cloud = PointCloud::new(vec![0.0, 0.0, 1.0, 0.0, 0.0, 1.0, 1.0, 1.0], 2).unwrap();
        let d = distance_matrix(&cloud).unwrap();
        let barcodes = brute_force_barcode(&d, 2).unwrap();
        assert_eq!(barcodes[0].lengths(), vec![1.0, 1.0, 1.0]);
        assert_eq!(barcodes[1].intervals(), &[Interval::new(1.0, 2f64.sqrt())]);
        assert!(barcodes[2].is_empty());
    }

    #[test]
    fn size_cap_enforced() {
        let n = BRUTE_FORCE_MAX_POINTS + 1;
        let entries = vec![1.0; n * (n - 1) / 2];
        let d = DistanceMatrix::from_lower_triangle(n, entries).unwrap();
        assert!(matches!(
            brute_force_barcode(&d, 0),
            Err(Error::Resource { .. })
        ));
    }

    #[test]
    fn combination_enumeration() {
        let mut v = vec![0, 1];
        let mut all = vec![v.clone()];
        while next_combination(&mut v, 4) {
            all.push(v.clone());
        }
        assert_eq!(
            all,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
    }
}

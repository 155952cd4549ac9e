//! Text formats for barcodes and distance matrices.

use crate::error::{Error, Result};
use crate::persistence::{Barcode, DistanceMatrix, Interval};

/// Serialize barcodes as CSV with columns `hom_dim,birth,death`.
pub fn barcodes_to_csv(barcodes: &[Barcode]) -> String {
    let mut out = String::from("hom_dim,birth,death\n");
    for barcode in barcodes {
        for interval in barcode.intervals() {
            out.push_str(&format!(
                "{},{},{}\n",
                barcode.hom_dim, interval.birth, interval.death
            ));
        }
    }
    out
}

/// Parse the output of [`barcodes_to_csv`]. Rows may arrive in any order;
/// dimensions absent from the input come back as empty barcodes up to the
/// largest dimension seen.
pub fn barcodes_from_csv(text: &str) -> Result<Vec<Barcode>> {
    let mut per_dim: Vec<Vec<Interval>> = Vec::new();
    for (line_no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with("hom_dim") {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 3 {
            return Err(Error::Parse(format!(
                "line {}: expected 3 comma-separated fields, got {}",
                line_no + 1,
                fields.len()
            )));
        }
        let dim: usize = fields[0]
            .trim()
            .parse()
            .map_err(|e| Error::Parse(format!("line {}: bad hom_dim: {e}", line_no + 1)))?;
        let birth: f64 = fields[1]
            .trim()
            .parse()
            .map_err(|e| Error::Parse(format!("line {}: bad birth: {e}", line_no + 1)))?;
        let death: f64 = fields[2]
            .trim()
            .parse()
            .map_err(|e| Error::Parse(format!("line {}: bad death: {e}", line_no + 1)))?;
        if !(birth.is_finite() && death.is_finite() && death >= birth && birth >= 0.0) {
            return Err(Error::Parse(format!(
                "line {}: invalid interval [{birth}, {death}]",
                line_no + 1
            )));
        }
        if per_dim.len() <= dim {
            per_dim.resize(dim + 1, Vec::new());
        }
        per_dim[dim].push(Interval::new(birth, death));
    }
    Ok(per_dim
        .into_iter()
        .enumerate()
        .map(|(dim, ivs)| Barcode::new(dim, ivs))
        .collect())
}

/// Parse a plain-text lower-triangular distance matrix: one row per line,
/// space-separated, row `i` holding the distances to the `i` earlier points.
/// A leading empty row for the first point is optional. Lines starting with
/// `#` are ignored.
pub fn distance_matrix_from_lower_text(text: &str) -> Result<DistanceMatrix> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (line_no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.starts_with('#') {
            continue;
        }
        if line.is_empty() {
            // Only the first point's row may be empty.
            if rows.is_empty() {
                rows.push(Vec::new());
                continue;
            }
            return Err(Error::Parse(format!(
                "line {}: unexpected empty row",
                line_no + 1
            )));
        }
        let row: Vec<f64> = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<f64>()
                    .map_err(|e| Error::Parse(format!("line {}: {e}", line_no + 1)))
            })
            .collect::<Result<_>>()?;
        rows.push(row);
    }
    if rows.first().map(|r| r.is_empty()) == Some(true) {
        rows.remove(0);
    }
    // After normalisation row k (0-based) belongs to point k + 1 and must
    // have k + 1 entries.
    for (k, row) in rows.iter().enumerate() {
        if row.len() != k + 1 {
            return Err(Error::Parse(format!(
                "row for point {} has {} entries, expected {}",
                k + 1,
                row.len(),
                k + 1
            )));
        }
    }
    let n = rows.len() + 1;
    DistanceMatrix::from_lower_triangle(n, rows.into_iter().flatten().collect())
}

/// Inverse of [`distance_matrix_from_lower_text`]; the single-point matrix
/// serializes to an empty string.
pub fn distance_matrix_to_lower_text(dist: &DistanceMatrix) -> String {
    let mut out = String::new();
    let entries = dist.lower_triangle();
    let mut offset = 0;
    for i in 1..dist.len() {
        let row = &entries[offset..offset + i];
        offset += i;
        let words: Vec<String> = row.iter().map(|d| format!("{d}")).collect();
        out.push_str(&words.join(" "));
        out.push('\n');
    }
    out
}

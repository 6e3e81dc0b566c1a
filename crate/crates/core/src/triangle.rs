//! Triangular integer arrays and the validators for Monotone Triangles and
//! Decreasing Monotone Triangles (DMTs).
//!
//! Rows are stored top to bottom: row `0` has one entry, row `n - 1` is the
//! bottom row with `n` entries. For an entry `rows[i][j]` the south-west
//! neighbour is `rows[i + 1][j]` and the south-east neighbour is
//! `rows[i + 1][j + 1]`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// A triangular array of integers; row `i` (0-based) has exactly `i + 1` entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TriangularArray {
    rows: Vec<Vec<i64>>,
}

impl TriangularArray {
    /// Builds a triangle from rows listed top first.
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::invalid("a triangle needs at least one row"));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != i + 1 {
                return Err(Error::invalid(format!(
                    "row {} has {} entries, expected {}",
                    i + 1,
                    row.len(),
                    i + 1
                )));
            }
        }
        Ok(TriangularArray { rows })
    }

    /// Number of rows.
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.rows[i]
    }

    pub fn bottom(&self) -> &[i64] {
        &self.rows[self.rows.len() - 1]
    }

    pub fn into_rows(self) -> Vec<Vec<i64>> {
        self.rows
    }
}

impl fmt::Display for TriangularArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.rows.len();
        for (i, row) in self.rows.iter().enumerate() {
            let pad = " ".repeat(2 * (n - 1 - i));
            let body: Vec<String> = row.iter().map(|v| format!("{v:>3}")).collect();
            writeln!(f, "{pad}{}", body.join(" "))?;
        }
        Ok(())
    }
}

/// The case split on a bottom row that decides how the polynomial is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RowSeqClass {
    StrictlyIncreasing,
    /// Weakly decreasing, every value at most twice.
    WeaklyDecreasingMult2,
    /// Weakly decreasing with some value three or more times.
    HasTriple,
    Other,
}

pub fn classify_row_sequence(k: &[i64]) -> Result<RowSeqClass> {
    if k.is_empty() {
        return Err(Error::invalid("empty row sequence"));
    }
    if k.windows(2).all(|w| w[0] < w[1]) {
        return Ok(RowSeqClass::StrictlyIncreasing);
    }
    if k.windows(2).all(|w| w[0] >= w[1]) {
        if k.windows(3).any(|w| w[0] == w[1] && w[1] == w[2]) {
            return Ok(RowSeqClass::HasTriple);
        }
        return Ok(RowSeqClass::WeaklyDecreasingMult2);
    }
    Ok(RowSeqClass::Other)
}

/// Multiplicity of every value in a row.
pub(crate) fn multiplicities(row: &[i64]) -> BTreeMap<i64, usize> {
    let mut counts = BTreeMap::new();
    for &v in row {
        *counts.entry(v).or_insert(0) += 1;
    }
    counts
}

/// Number of adjacent equal pairs in a row.
pub(crate) fn pair_count(row: &[i64]) -> usize {
    row.windows(2).filter(|w| w[0] == w[1]).count()
}

/// The values occurring as a pair (adjacent, equal) in a row.
pub(crate) fn pair_values(row: &[i64]) -> Vec<i64> {
    row.windows(2)
        .filter(|w| w[0] == w[1])
        .map(|w| w[0])
        .collect()
}

/// Strict increase along rows, weak increase along both diagonals.
pub fn validate_monotone(t: &TriangularArray) -> bool {
    let rows = t.rows();
    rows.iter().all(|r| r.windows(2).all(|w| w[0] < w[1]))
        && rows.windows(2).all(|pair| {
            let (upper, lower) = (&pair[0], &pair[1]);
            upper
                .iter()
                .enumerate()
                .all(|(j, &a)| lower[j] <= a && a <= lower[j + 1])
        })
}

/// DMT condition (1): both diagonals weakly decrease, i.e. every entry lies
/// between its south-east (below) and south-west (above) neighbours.
pub(crate) fn dmt_diagonals_ok(t: &TriangularArray) -> bool {
    t.rows().windows(2).all(|pair| {
        let (upper, lower) = (&pair[0], &pair[1]);
        upper
            .iter()
            .enumerate()
            .all(|(j, &a)| lower[j] >= a && a >= lower[j + 1])
    })
}

/// DMT condition (2): each value at most twice per row.
pub(crate) fn dmt_multiplicity_ok(t: &TriangularArray) -> bool {
    t.rows()
        .iter()
        .all(|r| multiplicities(r).values().all(|&c| c <= 2))
}

/// DMT condition (3): no value occurs exactly once in two consecutive rows.
pub(crate) fn dmt_no_single_descendant_ok(t: &TriangularArray) -> bool {
    t.rows()
        .windows(2)
        .all(|pair| no_single_descendant(&pair[1], &pair[0]))
}

/// True when no value occurs exactly once in both `lower` and `upper`.
pub(crate) fn no_single_descendant(lower: &[i64], upper: &[i64]) -> bool {
    let below = multiplicities(lower);
    multiplicities(upper)
        .iter()
        .all(|(v, &c)| c != 1 || below.get(v).copied() != Some(1))
}

pub fn validate_dmt(t: &TriangularArray) -> bool {
    dmt_diagonals_ok(t) && dmt_multiplicity_ok(t) && dmt_no_single_descendant_ok(t)
}

/// Evaluates the local reformulation of the no-single-descendant condition:
/// an entry equal to its south-east neighbour and smaller than its south-west
/// neighbour must equal its right neighbour, and symmetrically an entry equal
/// to its south-west neighbour and greater than its south-east neighbour must
/// equal its left neighbour.
///
/// Requires DMT conditions (1) and (2).
pub fn condition3_equivalent(t: &TriangularArray) -> Result<bool> {
    if !dmt_diagonals_ok(t) || !dmt_multiplicity_ok(t) {
        return Err(Error::invalid(
            "triangle violates the diagonal or multiplicity condition",
        ));
    }
    for pair in t.rows().windows(2) {
        let (upper, lower) = (&pair[0], &pair[1]);
        for (j, &a) in upper.iter().enumerate() {
            let (sw, se) = (lower[j], lower[j + 1]);
            if a == se && a < sw && upper.get(j + 1) != Some(&a) {
                return Ok(false);
            }
            if a == sw && a > se && (j == 0 || upper[j - 1] != a) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

//! Enumeration of Monotone Triangles, DMTs, ASMs, 2-ASMs and W-objects, and
//! signed counts of DMTs under the sign statistics.

mod matrices;
mod wni;

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::stats::{newcomer_count, sign_of};
use crate::triangle::{
    classify_row_sequence, no_single_descendant, pair_count, pair_values, validate_dmt,
    validate_monotone, RowSeqClass, TriangularArray,
};

pub use matrices::{enum_matrices, MatrixKind};
pub use wni::{enum_wni_objects, wni_object_sign, WniObject};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TriangleClass {
    MT,
    DMT,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Statistic {
    /// Number of objects.
    Plain,
    /// `sum (-1)^sc`
    Sc,
    /// `(-1)^C(n,2) sum (-1)^dd`
    DdWithPrefactor,
    /// `sum (-1)^dd_bar`
    DdBar,
}

/// Strictly increasing rows interlacing with `k` from above, lexicographically decreasing.
pub(crate) fn mt_rows_above(k: &[i64]) -> Vec<Vec<i64>> {
    fn fill(k: &[i64], row: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        let j = row.len();
        if j + 1 == k.len() {
            out.push(row.clone());
            return;
        }
        let floor = match row.last() {
            Some(&prev) => k[j].max(prev + 1),
            None => k[j],
        };
        for v in (floor..=k[j + 1]).rev() {
            row.push(v);
            fill(k, row, out);
            row.pop();
        }
    }
    let mut out = Vec::new();
    fill(k, &mut Vec::with_capacity(k.len()), &mut out);
    out
}

/// The rows `l` forming a two-row DMT fragment on top of `k`: interlacing,
/// each value at most twice, and no value exactly once in both rows.
/// Lexicographically decreasing.
pub(crate) fn dmt_rows_above(k: &[i64]) -> Vec<Vec<i64>> {
    fn fill(k: &[i64], row: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        let j = row.len();
        if j + 1 == k.len() {
            if no_single_descendant(k, row) {
                out.push(row.clone());
            }
            return;
        }
        for v in (k[j + 1]..=k[j]).rev() {
            if j >= 2 && row[j - 1] == v && row[j - 2] == v {
                continue;
            }
            row.push(v);
            fill(k, row, out);
            row.pop();
        }
    }
    let mut out = Vec::new();
    if k.windows(3).any(|w| w[0] == w[1] && w[1] == w[2]) {
        return out;
    }
    fill(k, &mut Vec::with_capacity(k.len()), &mut out);
    out
}

fn check_bottom(k: &[i64], class: TriangleClass) -> Result<()> {
    let c = classify_row_sequence(k)?;
    let ok = match class {
        TriangleClass::MT => c == RowSeqClass::StrictlyIncreasing,
        // a row with a triple is admitted; no DMT ends in it
        TriangleClass::DMT => k.windows(2).all(|w| w[0] >= w[1]),
    };
    if ok {
        Ok(())
    } else {
        Err(Error::invalid(format!(
            "{k:?} is not an admissible bottom row for class {class:?}"
        )))
    }
}

/// Admissible rows directly above `k` with their sign-change contribution.
pub fn predecessors(k: &[i64], class: TriangleClass) -> Result<Vec<(Vec<i64>, usize)>> {
    check_bottom(k, class)?;
    if k.len() < 2 {
        return Err(Error::invalid("a row of length 1 has no row above it"));
    }
    Ok(match class {
        TriangleClass::MT => mt_rows_above(k).into_iter().map(|l| (l, 0)).collect(),
        TriangleClass::DMT => dmt_rows_above(k)
            .into_iter()
            .map(|l| {
                let sc = pair_count(&l) + newcomer_count(k, &l);
                (l, sc)
            })
            .collect(),
    })
}

fn rows_above(k: &[i64], class: TriangleClass) -> Vec<Vec<i64>> {
    match class {
        TriangleClass::MT => mt_rows_above(k),
        TriangleClass::DMT => dmt_rows_above(k),
    }
}

/// Depth-first stream of all triangles of a class with a given bottom row.
pub struct TriangleStream {
    class: TriangleClass,
    /// Rows fixed so far, bottom first.
    chosen: Vec<Vec<i64>>,
    /// Candidate rows above each fixed row and the next index to try.
    frontier: Vec<(Vec<Vec<i64>>, usize)>,
    single: Option<TriangularArray>,
}

impl Iterator for TriangleStream {
    type Item = TriangularArray;

    fn next(&mut self) -> Option<TriangularArray> {
        if let Some(t) = self.single.take() {
            return Some(t);
        }
        loop {
            let (candidates, idx) = self.frontier.last_mut()?;
            if *idx == candidates.len() {
                self.frontier.pop();
                self.chosen.pop();
                continue;
            }
            let row = candidates[*idx].clone();
            *idx += 1;
            if row.len() == 1 {
                let mut rows: Vec<Vec<i64>> = vec![row];
                rows.extend(self.chosen.iter().rev().cloned());
                let t = TriangularArray::new(rows).expect("rows have triangular shape");
                debug_assert!(match self.class {
                    TriangleClass::MT => validate_monotone(&t),
                    TriangleClass::DMT => validate_dmt(&t),
                });
                return Some(t);
            }
            let above = rows_above(&row, self.class);
            self.chosen.push(row);
            self.frontier.push((above, 0));
        }
    }
}

pub fn enum_triangles(bottom: &[i64], class: TriangleClass) -> Result<TriangleStream> {
    check_bottom(bottom, class)?;
    let mut stream = TriangleStream {
        class,
        chosen: Vec::new(),
        frontier: Vec::new(),
        single: None,
    };
    if bottom.len() == 1 {
        stream.single = Some(TriangularArray::new(vec![bottom.to_vec()])?);
    } else {
        stream.chosen.push(bottom.to_vec());
        stream.frontier.push((rows_above(bottom, class), 0));
    }
    Ok(stream)
}

/// Pairs of `upper` that are also pairs of `lower`.
fn shared_pairs(lower: &[i64], upper: &[i64]) -> usize {
    let below = pair_values(lower);
    pair_values(upper).iter().filter(|v| below.contains(v)).count()
}

/// Signed count computed row by row, never materializing triangles.
pub fn signed_count(bottom: &[i64], class: TriangleClass, statistic: Statistic) -> Result<BigInt> {
    check_bottom(bottom, class)?;
    if class == TriangleClass::MT && !matches!(statistic, Statistic::Plain | Statistic::Sc) {
        return Err(Error::invalid("dd statistics are defined on DMTs only"));
    }
    let weight = |k: &[i64], l: &[i64]| -> i64 {
        match statistic {
            Statistic::Plain => 1,
            Statistic::Sc if class == TriangleClass::MT => 1,
            Statistic::Sc => sign_of(pair_count(l) + newcomer_count(k, l)),
            Statistic::DdWithPrefactor | Statistic::DdBar => sign_of(shared_pairs(k, l)),
        }
    };
    let mut memo: HashMap<Vec<i64>, BigInt> = HashMap::new();
    let inner = count_rec(bottom, class, &weight, &mut memo);
    Ok(match statistic {
        Statistic::DdWithPrefactor => {
            let n = bottom.len();
            inner * sign_of(n * (n - 1) / 2 + pair_count(bottom))
        }
        _ => inner,
    })
}

fn count_rec(
    k: &[i64],
    class: TriangleClass,
    weight: &dyn Fn(&[i64], &[i64]) -> i64,
    memo: &mut HashMap<Vec<i64>, BigInt>,
) -> BigInt {
    if k.len() == 1 {
        return BigInt::one();
    }
    if let Some(v) = memo.get(k) {
        return v.clone();
    }
    let mut total = BigInt::zero();
    for l in rows_above(k, class) {
        let w = weight(k, &l);
        total += count_rec(&l, class, weight, memo) * w;
    }
    memo.insert(k.to_vec(), total.clone());
    total
}

#[cfg(test)]
mod tests;

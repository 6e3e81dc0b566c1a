//! Sign statistics of Decreasing Monotone Triangles.
//!
//! A *pair* is two adjacent equal entries in a row. A pair is a
//! duplicate-descendant when it sits in the bottom row or when the row below
//! contains the same pair. A *newcomer* is an entry strictly between its two
//! lower neighbours; a *peak* is a value occurring once in a row and twice in
//! the row below; a *base-pair* is a pair in the bottom row or a pair whose
//! value occurs exactly once in the row below.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::triangle::{multiplicities, pair_count, pair_values, validate_dmt, TriangularArray};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatRecord {
    /// Pairs in each row, top row first (the bottom row included).
    pub pairs_per_row: Vec<usize>,
    pub newcomers: usize,
    pub peaks: usize,
    pub base_pairs: usize,
    pub dd: usize,
    pub dd_bar: usize,
    pub sc: usize,
}

/// Pairs and newcomers of the row `upper` placed directly above `lower`.
pub fn transition_stats(lower: &[i64], upper: &[i64]) -> Result<(usize, usize)> {
    if upper.len() + 1 != lower.len() {
        return Err(Error::invalid(format!(
            "row of length {} cannot sit above a row of length {}",
            upper.len(),
            lower.len()
        )));
    }
    if let Some(j) = (0..upper.len()).find(|&j| !(lower[j] >= upper[j] && upper[j] >= lower[j + 1])) {
        return Err(Error::invalid(format!(
            "entry {} at position {} does not interlace with the row below",
            upper[j],
            j + 1
        )));
    }
    Ok((pair_count(upper), newcomer_count(lower, upper)))
}

pub(crate) fn newcomer_count(lower: &[i64], upper: &[i64]) -> usize {
    upper
        .iter()
        .enumerate()
        .filter(|&(j, &v)| lower[j] > v && v > lower[j + 1])
        .count()
}

pub fn triangle_stats(t: &TriangularArray) -> Result<StatRecord> {
    if !validate_dmt(t) {
        return Err(Error::invalid("statistics are defined for DMTs only"));
    }
    let rows = t.rows();
    let n = rows.len();
    let pairs_per_row: Vec<usize> = rows.iter().map(|r| pair_count(r)).collect();
    let mut record = StatRecord {
        pairs_per_row,
        newcomers: 0,
        peaks: 0,
        base_pairs: pair_count(t.bottom()),
        dd: pair_count(t.bottom()),
        dd_bar: 0,
        sc: 0,
    };
    for i in 0..n - 1 {
        let (upper, lower) = (&rows[i], &rows[i + 1]);
        let (pairs, newcomers) = transition_stats(lower, upper)?;
        record.sc += pairs + newcomers;
        record.newcomers += newcomers;

        let below = multiplicities(lower);
        for (v, c) in multiplicities(upper) {
            if c == 1 && below.get(&v) == Some(&2) {
                record.peaks += 1;
            }
        }
        for v in pair_values(upper) {
            match below.get(&v) {
                Some(2) => record.dd_bar += 1,
                Some(1) => record.base_pairs += 1,
                _ => unreachable!("a pair always has its value in the row below"),
            }
        }
    }
    record.dd += record.dd_bar;
    Ok(record)
}

/// `(-1)^e` as an integer.
pub(crate) fn sign_of(e: usize) -> i64 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{dmts_63321, tri};

    #[test]
    fn transition_examples() {
        assert_eq!(transition_stats(&[6, 3, 3, 2, 1], &[3, 3, 2, 2]).unwrap(), (2, 0));
        assert_eq!(transition_stats(&[7, 2], &[4]).unwrap(), (0, 1));
        assert_eq!(transition_stats(&[5, 5], &[5]).unwrap(), (0, 0));
        assert!(transition_stats(&[5, 5], &[5, 5]).is_err());
        assert!(transition_stats(&[5, 4], &[6]).is_err());
    }

    #[test]
    fn dmts_63321_duplicate_descendants() {
        let dmts = dmts_63321();
        let first = triangle_stats(&dmts[0]).unwrap();
        assert_eq!(first.dd, 4);
        assert_eq!(first.sc, 4);
        assert_eq!(first.pairs_per_row, vec![0, 1, 1, 2, 1]);
        assert_eq!(triangle_stats(&dmts[3]).unwrap().dd, 3);
        let dds: Vec<usize> = dmts.iter().map(|t| triangle_stats(t).unwrap().dd).collect();
        assert_eq!(dds.iter().filter(|d| *d % 2 == 0).count(), 4);
    }

    #[test]
    fn single_row_is_degenerate() {
        let s = triangle_stats(&tri(&[&[9]])).unwrap();
        assert_eq!((s.dd, s.sc, s.dd_bar), (0, 0, 0));
        assert_eq!(s.pairs_per_row, vec![0]);
    }

    #[test]
    fn record_invariants_on_dmts_63321() {
        for t in dmts_63321() {
            let s = triangle_stats(&t).unwrap();
            let n = t.size();
            assert_eq!(s.sc, s.newcomers + s.pairs_per_row[..n - 1].iter().sum::<usize>());
            assert_eq!(s.peaks, s.base_pairs);
            assert_eq!(sign_of(s.sc), sign_of(n * (n - 1) / 2 + s.dd));
        }
    }

    #[test]
    fn rejects_non_dmt() {
        assert!(triangle_stats(&tri(&[&[1], &[1, 2]])).is_err());
    }
}

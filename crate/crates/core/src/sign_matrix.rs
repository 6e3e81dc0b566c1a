use std::fmt;

use crate::error::{Error, Result};

/// A rectangular matrix with entries in {-1, 0, 1}, stored row-major.
///
/// Zero columns are allowed: the single W-object of size (1, 1) is a 1x0 matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<i8>,
}

impl SignMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<i8>) -> Result<Self> {
        if rows == 0 {
            return Err(Error::invalid("a sign matrix needs at least one row"));
        }
        if entries.len() != rows * cols {
            return Err(Error::invalid(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|e| !(-1..=1).contains(*e)) {
            return Err(Error::invalid(format!("entry {bad} is not in {{-1, 0, 1}}")));
        }
        Ok(SignMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(rows: Vec<Vec<i8>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(i) = rows.iter().position(|r| r.len() != cols) {
            return Err(Error::invalid(format!(
                "row {} has {} entries, expected {cols}",
                i + 1,
                rows[i].len()
            )));
        }
        let n = rows.len();
        SignMatrix::new(n, cols, rows.into_iter().flatten().collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        SignMatrix {
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[i8] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.entries[i * self.cols + j]
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, v: i8) {
        debug_assert!((-1..=1).contains(&v));
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i8] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<i8> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<i8>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }
}

impl fmt::Display for SignMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|v| format!("{v:>2}")).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_entries_and_ragged_rows() {
        assert!(SignMatrix::from_rows(vec![vec![2]]).is_err());
        assert!(SignMatrix::from_rows(vec![vec![1, 0], vec![1]]).is_err());
        assert!(SignMatrix::from_rows(vec![]).is_err());
    }

    #[test]
    fn empty_columns_are_allowed() {
        let m = SignMatrix::from_rows(vec![vec![]]).unwrap();
        assert_eq!((m.rows(), m.cols()), (1, 0));
        assert!(m.row(0).is_empty());
    }

    #[test]
    fn accessors() {
        let m = SignMatrix::from_rows(vec![vec![0, 1, 0], vec![1, -1, 1], vec![0, 1, 0]]).unwrap();
        assert_eq!(m.get(1, 1), -1);
        assert_eq!(m.column(1), vec![1, -1, 1]);
        assert_eq!(m.row(2), &[0, 1, 0]);
    }
}

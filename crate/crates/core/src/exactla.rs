//! Exact integer matrices: the eigen-system matrix, its shifted and reduced
//! forms, the Behrend matrix, fraction-free determinants and rational rank.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::evaluate::binomial;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl ExactMatrix {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        ExactMatrix { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::invalid("rows of unequal length"));
        }
        let n = rows.len();
        Ok(ExactMatrix { rows: n, cols, entries: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { BigInt::one() } else { BigInt::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    /// The matrix without row `r` and column `c` (either may be omitted).
    pub fn without(&self, r: Option<usize>, c: Option<usize>) -> Self {
        let keep_rows: Vec<usize> = (0..self.rows).filter(|&i| Some(i) != r).collect();
        let keep_cols: Vec<usize> = (0..self.cols).filter(|&j| Some(j) != c).collect();
        Self::from_fn(keep_rows.len(), keep_cols.len(), |i, j| self.get(keep_rows[i], keep_cols[j]).clone())
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
        let (r0, c0) = (rows.start, cols.start);
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != other.rows {
            return Err(Error::invalid("inner dimensions differ"));
        }
        Ok(Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).map(|t| self.get(i, t) * other.get(t, j)).sum()
        }))
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if self.cols != v.len() {
            return Err(Error::invalid("vector length differs from the column count"));
        }
        Ok((0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum())
            .collect())
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MatrixKind {
    /// `(2n-1)^2`, entry `(i, k)` = `C(n-i, 2n-i-k) (-1)^(n+i)`, 1-based.
    EigenM,
    /// `EigenM - I`
    S,
    /// `S` without row `n` and without its last column.
    Sprime,
    /// `n x n`, entry `(i, j)` = `C(i+j, j) - [i = j+1]`, 0-based.
    Behrend,
}

impl FromStr for MatrixKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "eigenm" | "eigen" => Ok(MatrixKind::EigenM),
            "s" => Ok(MatrixKind::S),
            "sprime" => Ok(MatrixKind::Sprime),
            "behrend" => Ok(MatrixKind::Behrend),
            _ => Err(Error::invalid(format!("unknown matrix kind {s:?}"))),
        }
    }
}

fn parity_sign(e: i64) -> BigInt {
    if e.rem_euclid(2) == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

pub fn build_matrix(kind: MatrixKind, n: usize) -> Result<ExactMatrix> {
    if n == 0 {
        return Err(Error::invalid("matrix size parameter must be positive"));
    }
    let ni = n as i64;
    let eigen = |i: usize, k: usize| {
        let (i, k) = (i as i64 + 1, k as i64 + 1);
        binomial(ni - i, 2 * ni - i - k) * parity_sign(ni + i)
    };
    let size = 2 * n - 1;
    Ok(match kind {
        MatrixKind::EigenM => ExactMatrix::from_fn(size, size, eigen),
        MatrixKind::S => ExactMatrix::from_fn(size, size, |i, k| {
            eigen(i, k) - if i == k { BigInt::one() } else { BigInt::zero() }
        }),
        MatrixKind::Sprime => build_matrix(MatrixKind::S, n)?.without(Some(n - 1), Some(size - 1)),
        MatrixKind::Behrend => ExactMatrix::from_fn(n, n, |i, j| {
            binomial((i + j) as i64, j as i64) - if i == j + 1 { BigInt::one() } else { BigInt::zero() }
        }),
    })
}

/// Determinant by fraction-free (Bareiss) elimination with pivot search.
pub fn det_exact(m: &ExactMatrix) -> Result<BigInt> {
    if m.rows != m.cols {
        return Err(Error::invalid(format!("determinant of a {}x{} matrix", m.rows, m.cols)));
    }
    let n = m.rows;
    let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| (0..n).map(|j| m.get(i, j).clone()).collect()).collect();
    let mut sign = 1;
    let mut prev = BigInt::one();
    for k in 0..n {
        // smallest nonzero entry in the remaining block keeps intermediates small
        let pivot = (k..n)
            .flat_map(|i| (k..n).map(move |j| (i, j)))
            .filter(|&(i, j)| !a[i][j].is_zero())
            .min_by(|&(i1, j1), &(i2, j2)| a[i1][j1].abs().cmp(&a[i2][j2].abs()));
        let Some((pi, pj)) = pivot else {
            return Ok(BigInt::zero());
        };
        if pi != k {
            a.swap(pi, k);
            sign = -sign;
        }
        if pj != k {
            for row in a.iter_mut() {
                row.swap(pj, k);
            }
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    Ok(if n == 0 { BigInt::one() } else { prev * sign })
}

/// Rank over the rationals.
pub fn rank_exact(m: &ExactMatrix) -> usize {
    let mut a: Vec<Vec<BigRational>> = (0..m.rows)
        .map(|i| (0..m.cols).map(|j| BigRational::from_integer(m.get(i, j).clone())).collect())
        .collect();
    let mut rank = 0;
    for col in 0..m.cols {
        let Some(p) = (rank..m.rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for i in rank + 1..m.rows {
            if a[i][col].is_zero() {
                continue;
            }
            let factor = &a[i][col] / &a[rank][col];
            for j in col..m.cols {
                let delta = &factor * &a[rank][j];
                a[i][j] -= delta;
            }
        }
        rank += 1;
    }
    rank
}

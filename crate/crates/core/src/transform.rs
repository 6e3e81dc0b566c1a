//! Bijections between triangles and sign matrices, the S1 correspondence with
//! Monotone Triangles, and the row reflection of W-objects.
//!
//! Both triangle/matrix bijections use the same construction: with `b[i][j]`
//! the number of entries `j` in row `i` (and `b[0][j] = 0`), the matrix entry
//! is `b[i][j] - b[i-1][j]`.

use std::str::FromStr;

use crate::enumerate::WniObject;
use crate::error::{Error, Result};
use crate::machines::{accepts, MachineId};
use crate::sign_matrix::SignMatrix;
use crate::triangle::{validate_dmt, validate_monotone, TriangularArray};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BijectionKind {
    /// Monotone Triangles with bottom row `(1, ..., n)` and `n x n` ASMs.
    MtAsm,
    /// DMTs with bottom row `(n, n, ..., 1, 1)` and `2n x n` 2-ASMs.
    Dmt2Asm,
}

impl FromStr for BijectionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mt-asm" => Ok(BijectionKind::MtAsm),
            "dmt-2asm" => Ok(BijectionKind::Dmt2Asm),
            _ => Err(Error::invalid(format!("unknown bijection kind {s:?}"))),
        }
    }
}

/// `(n, n, n-1, n-1, ..., 1, 1)`
pub fn doubled_bottom(n: usize) -> Vec<i64> {
    (1..=n as i64).rev().flat_map(|v| [v, v]).collect()
}

fn increasing_bottom(n: usize) -> Vec<i64> {
    (1..=n as i64).collect()
}

pub fn triangle_to_matrix(t: &TriangularArray, kind: BijectionKind) -> Result<SignMatrix> {
    let size = t.size();
    let cols = match kind {
        BijectionKind::MtAsm => {
            if !validate_monotone(t) || t.bottom() != increasing_bottom(size) {
                return Err(Error::invalid(
                    "expected a Monotone Triangle with bottom row (1, ..., n)",
                ));
            }
            size
        }
        BijectionKind::Dmt2Asm => {
            if !size.is_multiple_of(2) || !validate_dmt(t) || t.bottom() != doubled_bottom(size / 2) {
                return Err(Error::invalid(
                    "expected a DMT with bottom row (n, n, ..., 1, 1)",
                ));
            }
            size / 2
        }
    };
    let mut m = SignMatrix::zeros(size, cols);
    let mut prev = vec![0i64; cols];
    for (i, row) in t.rows().iter().enumerate() {
        let mut counts = vec![0i64; cols];
        for &v in row {
            counts[(v - 1) as usize] += 1;
        }
        for j in 0..cols {
            m.set(i, j, (counts[j] - prev[j]) as i8);
        }
        prev = counts;
    }
    Ok(m)
}

pub fn matrix_to_triangle(m: &SignMatrix, kind: BijectionKind) -> Result<TriangularArray> {
    let cols = m.cols();
    let column_machine = match kind {
        BijectionKind::MtAsm if m.rows() == cols => MachineId::AsmWord,
        BijectionKind::Dmt2Asm if m.rows() == 2 * cols => MachineId::TwoAsmColumn,
        _ => {
            return Err(Error::invalid(format!(
                "a {}x{} matrix has the wrong shape for {kind:?}",
                m.rows(),
                cols
            )))
        }
    };
    for i in 0..m.rows() {
        if !accepts(MachineId::AsmWord, m.row(i))? {
            return Err(Error::invalid(format!("row {} is not an ASM word", i + 1)));
        }
    }
    for j in 0..cols {
        if !accepts(column_machine, &m.column(j))? {
            return Err(Error::invalid(format!("column {} is not a word of {column_machine}", j + 1)));
        }
    }
    let mut counts = vec![0i64; cols];
    let mut rows = Vec::with_capacity(m.rows());
    for i in 0..m.rows() {
        let mut row = Vec::with_capacity(i + 1);
        for (j, c) in counts.iter_mut().enumerate() {
            *c += m.get(i, j) as i64;
            row.extend(std::iter::repeat_n(j as i64 + 1, *c as usize));
        }
        if kind == BijectionKind::Dmt2Asm {
            row.reverse();
        }
        rows.push(row);
    }
    let t = TriangularArray::new(rows)?;
    let valid = match kind {
        BijectionKind::MtAsm => validate_monotone(&t),
        BijectionKind::Dmt2Asm => validate_dmt(&t),
    };
    if !valid {
        return Err(Error::Internal(format!("matrix produced an invalid triangle:\n{t}")));
    }
    Ok(t)
}

fn check_s1_domain(t: &TriangularArray) -> Result<()> {
    let size = t.size();
    if !size.is_multiple_of(2) || !validate_dmt(t) || t.bottom() != doubled_bottom(size / 2) {
        return Err(Error::invalid("expected a DMT with bottom row (n, n, ..., 1, 1)"));
    }
    Ok(())
}

fn all_pairs(row: &[i64]) -> bool {
    row.chunks(2).all(|c| c.len() == 2 && c[0] == c[1])
}

/// Whether every row with an even number of entries consists of pairs.
pub fn is_s1(t: &TriangularArray) -> Result<bool> {
    check_s1_domain(t)?;
    Ok(t.rows().iter().skip(1).step_by(2).all(|r| all_pairs(r)))
}

/// Collapses each pair of the even rows and reverses the result.
pub fn s1_to_mt(t: &TriangularArray) -> Result<TriangularArray> {
    if !is_s1(t)? {
        return Err(Error::invalid("triangle is not in S1"));
    }
    let rows: Vec<Vec<i64>> = t
        .rows()
        .iter()
        .skip(1)
        .step_by(2)
        .map(|r| r.iter().step_by(2).rev().copied().collect())
        .collect();
    let mt = TriangularArray::new(rows)?;
    if !validate_monotone(&mt) {
        return Err(Error::Internal(format!("S1 object collapsed to a non-monotone triangle:\n{mt}")));
    }
    Ok(mt)
}

/// Inverse of [`s1_to_mt`]. Entries of odd rows are forced by the diagonal
/// conditions against the even rows around them.
pub fn mt_to_s1(t: &TriangularArray) -> Result<TriangularArray> {
    let n = t.size();
    if !validate_monotone(t) || t.bottom() != increasing_bottom(n) {
        return Err(Error::invalid("expected a Monotone Triangle with bottom row (1, ..., n)"));
    }
    let even: Vec<Vec<i64>> = t
        .rows()
        .iter()
        .map(|r| r.iter().rev().flat_map(|&v| [v, v]).collect())
        .collect();
    let mut rows = Vec::with_capacity(2 * n);
    for i in 0..n {
        let below = &even[i];
        let above: &[i64] = if i == 0 { &[] } else { &even[i - 1] };
        let mut odd = Vec::with_capacity(2 * i + 1);
        for j in 0..2 * i + 1 {
            // below[j] >= x >= below[j+1], above[j-1] >= x >= above[j]
            let mut lo = below[j + 1];
            let mut hi = below[j];
            if let Some(&a) = above.get(j) {
                lo = lo.max(a);
            }
            if j >= 1 {
                hi = hi.min(above[j - 1]);
            }
            if lo != hi {
                return Err(Error::Ambiguity(format!(
                    "entry {} of row {} ranges over [{lo}, {hi}]",
                    j + 1,
                    2 * i + 1
                )));
            }
            odd.push(lo);
        }
        rows.push(odd);
        rows.push(even[i].clone());
    }
    let s1 = TriangularArray::new(rows)?;
    if !validate_dmt(&s1) || !is_s1(&s1)? {
        return Err(Error::Internal(format!("forced rows do not form an S1 object:\n{s1}")));
    }
    Ok(s1)
}

pub fn reflect_rows(m: &SignMatrix) -> SignMatrix {
    let mut rows = m.to_rows();
    rows.reverse();
    let entries = rows.into_iter().flatten().collect();
    SignMatrix::new(m.rows(), m.cols(), entries).expect("same shape and entries")
}

/// Reflects a W-object for `(n, i)` onto the one for `(n, 2n - i)`.
pub fn reflect_wni(o: &WniObject) -> Result<WniObject> {
    WniObject::new(o.n(), 2 * o.n() - o.i(), reflect_rows(o.matrix()))
}

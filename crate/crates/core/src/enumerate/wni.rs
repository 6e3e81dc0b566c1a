use super::matrices::enum_by_columns;
use crate::error::{Error, Result};
use crate::machines::{accepts, parse_steps, MachineId};
use crate::sign_matrix::SignMatrix;
use crate::stats::sign_of;

/// A `(2n-1) x (n-1)` matrix with 2-ASM columns, ASM-word rows, and one
/// modified row (index `2n-i`, counted from 1) whose entries sum to 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WniObject {
    n: usize,
    i: usize,
    matrix: SignMatrix,
}

fn check_index(n: usize, i: usize) -> Result<()> {
    if n < 1 || i < 1 || i > 2 * n - 1 {
        return Err(Error::invalid(format!(
            "W-objects need n >= 1 and 1 <= i <= 2n-1, got n={n}, i={i}"
        )));
    }
    Ok(())
}

fn row_machines(n: usize, i: usize) -> Vec<MachineId> {
    (1..=2 * n - 1)
        .map(|r| {
            if r == 2 * n - i {
                MachineId::ModifiedRow
            } else {
                MachineId::AsmWord
            }
        })
        .collect()
}

impl WniObject {
    /// Validates the matrix against the row and column machines.
    pub fn new(n: usize, i: usize, matrix: SignMatrix) -> Result<Self> {
        check_index(n, i)?;
        if matrix.rows() != 2 * n - 1 || matrix.cols() != n - 1 {
            return Err(Error::invalid(format!(
                "a W-object for n={n} is {}x{}, got {}x{}",
                2 * n - 1,
                n - 1,
                matrix.rows(),
                matrix.cols()
            )));
        }
        for (r, m) in row_machines(n, i).into_iter().enumerate() {
            if !accepts(m, matrix.row(r))? {
                return Err(Error::invalid(format!("row {} is not a word of {m}", r + 1)));
            }
        }
        for j in 0..matrix.cols() {
            if !accepts(MachineId::TwoAsmColumn, &matrix.column(j))? {
                return Err(Error::invalid(format!("column {} is not a 2-ASM column", j + 1)));
            }
        }
        Ok(WniObject { n, i, matrix })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn matrix(&self) -> &SignMatrix {
        &self.matrix
    }
}

pub fn enum_wni_objects(n: usize, i: usize) -> Result<Vec<WniObject>> {
    check_index(n, i)?;
    Ok(
        enum_by_columns(n - 1, MachineId::TwoAsmColumn, &row_machines(n, i))
            .into_iter()
            .map(|matrix| WniObject { n, i, matrix })
            .collect(),
    )
}

/// `(-1)^(i + n + E)` where `E` counts the column edges other than 0-loops at state 0.
pub fn wni_object_sign(o: &WniObject) -> Result<i64> {
    let mut edges = 0;
    for j in 0..o.matrix.cols() {
        edges += parse_steps(MachineId::TwoAsmColumn, &o.matrix.column(j))
            .map_err(|e| Error::invalid(format!("column {} does not parse: {e}", j + 1)))?
            .weighted_edges();
    }
    Ok(sign_of(o.i + o.n + edges))
}

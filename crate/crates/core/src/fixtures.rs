//! Helpers shared by unit tests.

pub(crate) use crate::reference::*;
use crate::sign_matrix::SignMatrix;
use crate::triangle::TriangularArray;

pub(crate) fn tri(rows: &[&[i64]]) -> TriangularArray {
    TriangularArray::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
}

pub(crate) fn mat(rows: &[&[i8]]) -> SignMatrix {
    SignMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
}

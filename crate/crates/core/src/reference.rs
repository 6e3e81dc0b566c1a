//! Worked reference objects: a Monotone Triangle, the DMT family with bottom
//! row (6,3,3,2,1), a 2-ASM of size 5 with its DMT, and a W-object of size (4, 3).

use crate::sign_matrix::SignMatrix;
use crate::triangle::TriangularArray;

fn tri(rows: &[&[i64]]) -> TriangularArray {
    TriangularArray::new(rows.iter().map(|r| r.to_vec()).collect()).expect("reference triangle")
}

fn mat(rows: &[&[i8]]) -> SignMatrix {
    SignMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).expect("reference matrix")
}

/// A Monotone Triangle with bottom row (2,4,5,8,9).
pub fn monotone_example() -> TriangularArray {
    tri(&[&[4], &[4, 5], &[3, 5, 7], &[2, 5, 6, 8], &[2, 4, 5, 8, 9]])
}

/// The five DMTs with bottom row (6,3,3,2,1).
pub fn dmts_63321() -> Vec<TriangularArray> {
    vec![
        tri(&[&[2], &[2, 2], &[3, 2, 2], &[3, 3, 2, 2], &[6, 3, 3, 2, 1]]),
        tri(&[&[3], &[3, 3], &[3, 3, 2], &[3, 3, 2, 2], &[6, 3, 3, 2, 1]]),
        tri(&[&[3], &[3, 3], &[3, 3, 2], &[4, 3, 2, 2], &[6, 3, 3, 2, 1]]),
        tri(&[&[2], &[2, 2], &[4, 2, 2], &[5, 3, 2, 2], &[6, 3, 3, 2, 1]]),
        tri(&[&[3], &[3, 3], &[3, 3, 2], &[5, 3, 2, 2], &[6, 3, 3, 2, 1]]),
    ]
}

/// A DMT with bottom row (5,5,4,4,3,3,2,2,1,1).
pub fn golden_dmt() -> TriangularArray {
    tri(&[
        &[3],
        &[3, 3],
        &[4, 3, 3],
        &[4, 4, 3, 2],
        &[4, 4, 3, 3, 1],
        &[5, 4, 4, 3, 1, 1],
        &[5, 5, 4, 4, 2, 1, 1],
        &[5, 5, 4, 4, 2, 2, 1, 1],
        &[5, 5, 4, 4, 3, 2, 2, 1, 1],
        &[5, 5, 4, 4, 3, 3, 2, 2, 1, 1],
    ])
}

/// The 2-ASM corresponding to [`golden_dmt`].
pub fn golden_two_asm() -> SignMatrix {
    mat(&[
        &[0, 0, 1, 0, 0],
        &[0, 0, 1, 0, 0],
        &[0, 0, 0, 1, 0],
        &[0, 1, -1, 1, 0],
        &[1, -1, 1, 0, 0],
        &[1, 0, -1, 0, 1],
        &[0, 1, -1, 0, 1],
        &[0, 1, 0, 0, 0],
        &[0, 0, 1, 0, 0],
        &[0, 0, 1, 0, 0],
    ])
}

/// A W-object of size (4, 3).
pub fn w_object_4_3() -> SignMatrix {
    mat(&[
        &[0, 1, 0],
        &[0, 1, 0],
        &[0, 0, 1],
        &[1, -1, 1],
        &[1, -1, 0],
        &[0, 1, 0],
        &[0, 1, 0],
    ])
}

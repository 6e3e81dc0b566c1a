//! Exact evaluation and verification toolkit for Monotone Triangles,
//! Decreasing Monotone Triangles (DMTs), alternating sign matrices and 2-ASMs.
//!
//! The polynomial `alpha(n; k_1, ..., k_n)` counts Monotone Triangles with a
//! strictly increasing bottom row; at weakly decreasing arguments it is a
//! signed count of DMTs. This crate evaluates it three independent ways,
//! enumerates the underlying objects, implements the bijections between
//! triangles and matrices, and checks the identities relating them.

pub mod enumerate;
pub mod error;
pub mod evaluate;
pub mod exactla;
pub mod machines;
pub mod reference;
pub mod serialize;
pub mod sign_matrix;
pub mod stats;
pub mod transform;
pub mod triangle;
pub mod verify;

#[cfg(test)]
pub(crate) mod fixtures;

pub use error::{Error, Result};
pub use sign_matrix::SignMatrix;
pub use stats::{transition_stats, triangle_stats, StatRecord};
pub use triangle::{
    classify_row_sequence, condition3_equivalent, validate_dmt, validate_monotone, RowSeqClass,
    TriangularArray,
};

/// Arbitrary-precision signed integer used for every count and determinant.
pub type ExactInt = num_bigint::BigInt;

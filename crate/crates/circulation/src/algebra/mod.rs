//! Exact arithmetic in the square-free quotient algebra and graded
//! dimensions of the subalgebra generated by the rows of a matrix.

mod hilbert;
mod matrix;
mod square_free;

pub use hilbert::{generators_from_matrix, graded_dimension, hilbert_function, HilbertFunction};
pub use matrix::{kernel_basis, matches_magnitudes, matrix_rank, parallel_vectors, ExactMatrix};
pub use square_free::SquareFreeElement;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    /// Two elements live over ground sets of different sizes.
    #[error("ground sets differ: {left} vs {right} edges")]
    DimensionMismatch { left: usize, right: usize },
    #[error("row {row} has {got} entries, expected {expected}")]
    RaggedRows {
        row: usize,
        expected: usize,
        got: usize,
    },
    #[error("matrix of {rows}x{cols} needs {expected} entries, got {got}")]
    EntryCount {
        rows: usize,
        cols: usize,
        expected: usize,
        got: usize,
    },
}

//! Exact Gaussian-rational arithmetic and sparse exact linear algebra.

mod matrix;
mod rat;
mod scalar;

pub use matrix::{
    axpy, dense_to_sparse, kernel_basis, normalize_row, rank, solve, span_rank, ExactMatrix,
    LinalgError, Rref, SparseRow,
};
pub use rat::{ParseRatError, Rat};
pub use scalar::GaussRat;

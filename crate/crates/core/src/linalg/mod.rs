//! Exact sparse linear algebra.

pub mod dense;
pub mod echelon;
pub mod space;
pub mod sparse;

pub use echelon::{
    annihilator, image_basis, kernel, kernel_basis, rank, rank_of_vectors, solve, span_subspace,
    Echelon, Quotient, Subspace,
};
pub use space::{BasedSpace, LinMap, LinMapRecord};
pub use sparse::{Accumulator, MatrixRecord, SparseMatrix, SparseVec};

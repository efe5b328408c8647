//! Exact linear algebra over small prime fields.
//!
//! Everything here is deterministic: pivots are chosen in column order and all
//! containers are ordered, so class representatives computed downstream are
//! reproducible bit for bit.

mod field;
mod matrix;
mod reduction;
mod subspace;
mod vector;

pub use field::{PrimeField, MAX_PRIME};
pub use matrix::{rank, rref, solve, MatrixFp, Rref};
pub use reduction::{CocycleQuotient, ColumnReduction};
pub use subspace::{image, kernel, quotient_coordinates, Quotient, SubspaceFp};
pub use vector::SparseVec;

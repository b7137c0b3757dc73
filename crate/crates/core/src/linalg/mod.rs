//! Exact linear algebra: dense integer matrices, Smith normal form with
//! unimodular transforms, dense elimination mod p and over `Q(zeta_l)`, and a
//! sparse fraction-free eliminator over `Z[zeta_l]` for the large twisted
//! complexes.

mod cyc_dense;
mod cyc_sparse;
mod fp;
mod int_matrix;
mod snf;

pub use cyc_dense::{cyc_nullspace, cyc_rank, CycMatrix};
pub use cyc_sparse::CycEliminator;
pub use fp::{fp_nullspace, fp_rank, FpEchelon, FpMatrix, FpSparseEliminator};
pub use int_matrix::IntMatrix;
pub use snf::{smith_normal_form, smith_with_options, Snf, SnfOptions};

//! Exact linear algebra over fields: rank, kernels, quotients, and the
//! determinant valuation check over GF(p)[[t]].

pub mod dense;
pub mod dvr;
pub mod matrix;
pub mod mtx;
pub mod quotient;
pub mod sparse;

pub use dvr::{dvr_degeneracy_check, DegeneracyCheck, PolyMatrix};
pub use matrix::{solve_homogeneous, ExactMatrix, Storage};
pub use mtx::write_matrix_market;
pub use quotient::{quotient_dims, Quotient};

//! Exact Koszul cohomology of canonical curves and rational normal scrolls
//! over prime fields, and bookkeeping of first Chern classes of the
//! pushforwards that define the odd-genus syzygy divisor.

pub mod arith;
pub mod classes;
pub mod error;
pub mod harness;
pub mod koszul;
pub mod linalg;
pub mod models;
pub mod rng;

pub use arith::{Field, Fp, PrimeField, Rationals, Series};
pub use error::{Error, Result};
pub use linalg::ExactMatrix;

/// Matrices over GF(p).
pub type FpMatrix = ExactMatrix<PrimeField>;
/// Matrices over the rationals.
pub type QMatrix = ExactMatrix<Rationals>;
/// Truncated series with rational coefficients.
pub type SeriesQ = Series<num_rational::BigRational>;
/// Truncated series with integer coefficients.
pub type SeriesZ = Series<num_bigint::BigInt>;

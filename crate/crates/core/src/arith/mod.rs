//! Exact scalars: prime fields, rationals, polynomials and truncated series.

pub mod binom;
pub mod field;
pub mod poly;
pub mod series;

pub use binom::{big_binom, factorial};
pub use field::{field_inverse, Field, Fp, PrimeField, Rationals, DEFAULT_PRIME};
pub use poly::{poly_roots_gfp, GFPoly};
pub use series::{series_coeff, series_expand, Series};

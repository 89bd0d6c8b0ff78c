//! First Chern class bookkeeping for the syzygy divisor in odd genus.

pub mod divisor;
pub mod kclass;

pub use divisor::{
    assemble_n_first_principles, assemble_n_with, check_series_identities, hm_class, mumford_coeff, n_binomial, n_bracket,
    n_closed, rank_expressions, rank_identity, verify_class, ClassResult, Reading, SeriesIdentities, VariantNote,
};
pub use kclass::KClassSeries;

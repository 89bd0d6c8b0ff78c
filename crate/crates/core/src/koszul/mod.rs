//! Koszul differentials built from a multiplication table, and the
//! linear-strand cohomology `K_{p,1}` that measures extra syzygies.

pub mod complex;
pub mod multable;
pub mod subset;

pub use complex::{
    build_delta1, build_delta2, complex_closes, extra_syzygies, kp1, linear_strand, linear_strand_dump, strand_entry,
    Dump, StrandEntry, StrandResult,
};
pub use multable::MulTable;
pub use subset::{binom, subset_rank, subset_unrank, ExteriorIndex};

//! Koszul differentials in the linear strand and their cohomology.
//!
//! With `n = dim V`, the strand at homological degree `p` is
//!
//! ```text
//! Λ^{p+1}V  --δ1-->  Λ^p V ⊗ V  --δ2-->  Λ^{p-1}V ⊗ W2
//! ```
//!
//! and `dim K_{p,1} = nullity(δ2) - rank(δ1)`. Signs are `(-1)^{j-1}` on the
//! deletion position `j` (1-based) of a colex-ordered index; the composite
//! `δ2 ∘ δ1` vanishes exactly because the multiplication is symmetric.
//! Tensor coordinates are exterior-major: `(I, a) -> rank(I) * dim + a`.

use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::PrimeField;
use crate::error::{Error, Result};
use crate::koszul::multable::MulTable;
use crate::koszul::subset::{binom, colex_rank, colex_subsets};
use crate::linalg::mtx::write_matrix_market;
use crate::FpMatrix;

/// `I` with its `j`-th element removed, ranked, and the sign `(-1)^j` (0-based `j`).
#[inline]
fn deletions(subset: &[usize]) -> impl Iterator<Item = (usize, usize, bool)> + '_ {
    (0..subset.len()).map(move |j| {
        let rest = subset.iter().enumerate().filter(|&(l, _)| l != j).map(|(_, &c)| c);
        (subset[j], colex_rank(rest), j % 2 == 1)
    })
}

/// `Λ^{p+1}V -> Λ^pV ⊗ V`, of size `C(n,p) n x C(n,p+1)`.
pub fn build_delta1(field: PrimeField, n: usize, p: usize) -> FpMatrix {
    assert!(p < n, "build_delta1 needs p + 1 <= n");
    let one = field.elem(1);
    let mut trips = Vec::with_capacity(binom(n, p + 1) * (p + 1));
    for (col, subset) in colex_subsets(n, p + 1).iter().enumerate() {
        for (removed, rest, negative) in deletions(subset) {
            trips.push((rest * n + removed, col, if negative { -one } else { one }));
        }
    }
    FpMatrix::sparse_from_triplets(field, binom(n, p) * n, binom(n, p + 1), trips)
}

/// `Λ^pV ⊗ V -> Λ^{p-1}V ⊗ W2`, of size `C(n,p-1) h0l2 x C(n,p) n`.
pub fn build_delta2(table: &MulTable, p: usize) -> FpMatrix {
    let n = table.h0l();
    let m = table.h0l2();
    assert!(p >= 1 && p <= n, "build_delta2 needs 1 <= p <= h0l");
    let mut trips = Vec::new();
    for (ext, subset) in colex_subsets(n, p).iter().enumerate() {
        for a in 0..n {
            let col = ext * n + a;
            for (removed, rest, negative) in deletions(subset) {
                for (w, &x) in table.mu(removed, a).iter().enumerate() {
                    if !x.is_zero() {
                        trips.push((rest * m + w, col, if negative { -x } else { x }));
                    }
                }
            }
        }
    }
    FpMatrix::sparse_from_triplets(table.field(), binom(n, p - 1) * m, binom(n, p) * n, trips)
}

/// One homological degree of the linear strand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrandEntry {
    pub p: usize,
    /// `dim K_{p,1}`.
    pub dim: usize,
    pub nullity_delta2: usize,
    pub rank_delta1: usize,
    pub rank_delta2: usize,
    pub delta1_shape: (usize, usize),
    pub delta2_shape: (usize, usize),
    /// Wall time; excluded from equality of strands.
    #[serde(default)]
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrandResult {
    pub h0l: usize,
    pub h0l2: usize,
    pub entries: Vec<StrandEntry>,
}

impl StrandResult {
    pub fn dims(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.dim).collect()
    }

    pub fn entry(&self, p: usize) -> Option<&StrandEntry> {
        self.entries.iter().find(|e| e.p == p)
    }

    /// `K_{p,1} = 0` forces `K_{p',1} = 0` for all `p' > p`.
    pub fn vanishing_propagates(&self) -> bool {
        let first_zero = self.entries.iter().position(|e| e.dim == 0);
        first_zero.is_none_or(|i| self.entries[i..].iter().all(|e| e.dim == 0))
    }

    /// Entrywise `>=` on the common range of `p`.
    pub fn dominates(&self, other: &StrandResult) -> bool {
        self.entries
            .iter()
            .all(|e| other.entry(e.p).is_none_or(|o| e.dim >= o.dim))
    }

    /// The strand with timings zeroed, for comparisons across routes.
    pub fn without_timing(&self) -> StrandResult {
        let mut s = self.clone();
        for e in &mut s.entries {
            e.elapsed_ms = 0;
        }
        s
    }
}

fn check_p(table: &MulTable, p: usize) -> Result<()> {
    let n = table.h0l();
    if n < 3 || p < 1 || p > n - 2 {
        return Err(Error::IndexOutOfRange {
            index: p,
            min: 1,
            max: n.saturating_sub(2),
        });
    }
    Ok(())
}

/// Where to write the differentials of a strand as MatrixMarket files.
#[derive(Clone, Copy, Debug)]
pub struct Dump<'a> {
    pub dir: &'a Path,
    pub prefix: &'a str,
}

/// Full strand entry at `p`, asserting that `δ1` is injective.
pub fn strand_entry(table: &MulTable, p: usize, dump: Option<Dump<'_>>) -> Result<StrandEntry> {
    check_p(table, p)?;
    let start = Instant::now();
    let n = table.h0l();
    let d1 = build_delta1(table.field(), n, p);
    let d2 = build_delta2(table, p);
    if let Some(d) = dump {
        for (name, m) in [("delta1", &d1), ("delta2", &d2)] {
            let path = d.dir.join(format!("{}{}_p{}.mtx", d.prefix, name, p));
            let file = std::fs::File::create(path)?;
            write_matrix_market(m, std::io::BufWriter::new(file))?;
        }
    }
    let rank_delta1 = d1.rank();
    if rank_delta1 != binom(n, p + 1) {
        return Err(Error::Invariant(format!(
            "rank of delta1 at p={p} is {rank_delta1}, expected C({n},{})={}",
            p + 1,
            binom(n, p + 1)
        )));
    }
    let rank_delta2 = d2.rank();
    let nullity_delta2 = d2.cols() - rank_delta2;
    let dim = nullity_delta2
        .checked_sub(rank_delta1)
        .ok_or_else(|| Error::Invariant(format!("nullity of delta2 below rank of delta1 at p={p}")))?;
    Ok(StrandEntry {
        p,
        dim,
        nullity_delta2,
        rank_delta1,
        rank_delta2,
        delta1_shape: d1.shape(),
        delta2_shape: d2.shape(),
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// `dim K_{p,1}` for `1 <= p <= h0l - 2`.
pub fn kp1(table: &MulTable, p: usize) -> Result<usize> {
    Ok(strand_entry(table, p, None)?.dim)
}

/// `h^0(Λ^j Q ⊗ I(1))` for the embedding by `V`, which equals
/// `K_{h0l - j, 1}`; defined for `2 <= j <= h0l - 1`.
pub fn extra_syzygies(table: &MulTable, j: usize) -> Result<usize> {
    let n = table.h0l();
    if j < 2 || j + 1 > n {
        return Err(Error::IndexOutOfRange {
            index: j,
            min: 2,
            max: n.saturating_sub(1),
        });
    }
    kp1(table, n - j)
}

/// The strand index `p` that [`extra_syzygies`] reads for a given `j`.
pub fn strand_index_for(table: &MulTable, j: usize) -> usize {
    table.h0l() - j
}

/// All of `K_{p,1}`, `p = 1 ..= h0l - 2`, computed in parallel.
pub fn linear_strand(table: &MulTable) -> Result<StrandResult> {
    linear_strand_dump(table, None)
}

pub fn linear_strand_dump(table: &MulTable, dump: Option<Dump<'_>>) -> Result<StrandResult> {
    let n = table.h0l();
    let top = n.saturating_sub(2);
    let entries = (1..=top)
        .into_par_iter()
        .map(|p| strand_entry(table, p, dump))
        .collect::<Result<Vec<_>>>()?;
    Ok(StrandResult {
        h0l: n,
        h0l2: table.h0l2(),
        entries,
    })
}

/// `δ2 ∘ δ1 = 0` at `p`.
pub fn complex_closes(table: &MulTable, p: usize) -> bool {
    let d1 = build_delta1(table.field(), table.h0l(), p);
    let d2 = build_delta2(table, p);
    d2.mul(&d1).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::koszul::subset::colex_subsets;

    fn field() -> PrimeField {
        PrimeField::default_prime()
    }

    /// Degree-`d` rational normal curve: V = binary forms of degree d,
    /// W2 = forms of degree 2d; its strand is p C(d, p+1).
    fn rational_normal_curve(d: usize) -> MulTable {
        let f = field();
        MulTable::from_fn(f, d + 1, 2 * d + 1, |i, j| {
            let mut v = vec![f.elem(0); 2 * d + 1];
            v[i + j] = f.elem(1);
            v
        })
        .unwrap()
    }

    /// Polynomial ring in n variables: no quadrics, so the strand vanishes.
    fn polynomial_ring(n: usize) -> MulTable {
        let f = field();
        let quad = colex_subsets(n + 1, 2);
        MulTable::from_fn(f, n, quad.len(), |i, j| {
            // x_i x_j <-> 2-subset {i, j+1} of {0..n}
            let key = vec![i, j + 1];
            let mut v = vec![f.elem(0); quad.len()];
            v[quad.iter().position(|q| *q == key).unwrap()] = f.elem(1);
            v
        })
        .unwrap()
    }

    #[test]
    fn delta1_examples() {
        let f = field();
        let d = build_delta1(f, 3, 1);
        // e_{12} -> e_2 ⊗ e_1 - e_1 ⊗ e_2 ; rows (rest, removed) = rest*3 + removed
        assert_eq!(d.get(3, 0), f.elem(1));
        assert_eq!(d.get(1, 0), f.elem(-1));
        assert_eq!(d.triplets().iter().filter(|t| t.1 == 0).count(), 2);
        assert_eq!(build_delta1(f, 7, 3).shape(), (35 * 7, 35));
        assert_eq!(build_delta1(f, 5, 2).rank(), 10);
        assert_eq!(build_delta1(f, 5, 1).rank(), 10);
    }

    #[test]
    fn delta1_injective_exhaustive() {
        let f = field();
        for n in 1..=9 {
            for p in 0..n {
                assert_eq!(build_delta1(f, n, p).rank(), binom(n, p + 1), "n={n} p={p}");
            }
        }
    }

    #[test]
    fn rational_normal_curves_follow_eagon_northcott() {
        for d in 2..=6 {
            let t = rational_normal_curve(d);
            assert!(t.is_surjective());
            let s = linear_strand(&t).unwrap();
            let expected: Vec<usize> = (1..d).map(|p| p * binom(d, p + 1)).collect();
            assert_eq!(s.dims(), expected, "d={d}");
            assert!(s.vanishing_propagates());
            for p in 1..d {
                assert!(complex_closes(&t, p));
            }
        }
    }

    #[test]
    fn free_ring_has_no_linear_syzygies() {
        let t = polynomial_ring(5);
        assert_eq!(t.h0l2(), 15);
        assert_eq!(linear_strand(&t).unwrap().dims(), vec![0, 0, 0]);
    }

    #[test]
    fn index_translation_bounds() {
        let t = rational_normal_curve(4);
        assert!(matches!(extra_syzygies(&t, 1), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(extra_syzygies(&t, 5), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(kp1(&t, 0), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(kp1(&t, 4), Err(Error::IndexOutOfRange { .. })));
        // j = 2 reads the last strand entry, j = h0l - 1 the first
        assert_eq!(extra_syzygies(&t, 2).unwrap(), kp1(&t, 3).unwrap());
        assert_eq!(extra_syzygies(&t, 4).unwrap(), kp1(&t, 1).unwrap());
    }

    #[test]
    fn delta2_at_one_is_the_flattened_table() {
        let t = rational_normal_curve(3);
        let d2 = build_delta2(&t, 1);
        assert_eq!(d2.transpose(), t.flattening());
    }
}

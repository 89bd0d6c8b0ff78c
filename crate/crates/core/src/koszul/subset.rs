//! Colexicographic ranking of subsets, the basis order of exterior powers.
//!
//! `{i_1 < ... < i_p}` (1-based) has rank `sum_j C(i_j - 1, j)`.

use serde::Serialize;

use crate::error::{Error, Result};

/// Small binomial coefficient; zero outside `0 <= k <= n`.
pub fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    usize::try_from(acc).expect("binomial overflows usize")
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ExteriorIndex {
    /// Strictly increasing, 1-based.
    pub indices: Vec<usize>,
    pub rank: usize,
}

pub fn subset_rank(indices: &[usize]) -> Result<usize> {
    if indices.first() == Some(&0) {
        return Err(Error::BadIndex("indices are 1-based".into()));
    }
    if indices.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::BadIndex(format!("{indices:?} is not strictly increasing")));
    }
    Ok(colex_rank(indices.iter().map(|i| i - 1)))
}

/// Subset of size `p` with colex rank `r`.
pub fn subset_unrank(r: usize, p: usize) -> ExteriorIndex {
    let mut rest = r;
    let mut indices = vec![0; p];
    for j in (1..=p).rev() {
        // largest c with C(c, j) <= rest
        let mut c = j - 1;
        while binom(c + 1, j) <= rest {
            c += 1;
        }
        rest -= binom(c, j);
        indices[j - 1] = c + 1;
    }
    ExteriorIndex { indices, rank: r }
}

/// Rank of a strictly increasing 0-based sequence.
#[inline]
pub(crate) fn colex_rank(zero_based: impl IntoIterator<Item = usize>) -> usize {
    zero_based
        .into_iter()
        .enumerate()
        .map(|(j, c)| binom(c, j + 1))
        .sum()
}

/// All `p`-subsets of `{0, .., n-1}` in colex order.
pub(crate) fn colex_subsets(n: usize, p: usize) -> Vec<Vec<usize>> {
    (0..binom(n, p))
        .map(|r| subset_unrank(r, p).indices.iter().map(|i| i - 1).collect())
        .collect()
}

//! Dense Gaussian elimination over an arbitrary [`Field`].

use rayon::prelude::*;

use crate::arith::Field;

/// Work below which row updates stay on the calling thread.
const PAR_THRESHOLD: usize = 1 << 15;

/// Rank of a row-major `nrows x ncols` block, destroying it.
///
/// Pivots are taken in column order; the row updates below each pivot are
/// independent and may run in parallel without affecting the result.
pub fn rank_in_place<F: Field>(field: &F, data: &mut [F::Elem], nrows: usize, ncols: usize) -> usize {
    debug_assert_eq!(data.len(), nrows * ncols);
    if ncols == 0 {
        return 0;
    }
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(found) = (rank..nrows).find(|&r| !field.is_zero(&data[r * ncols + col])) else {
            continue;
        };
        if found != rank {
            for j in col..ncols {
                data.swap(found * ncols + j, rank * ncols + j);
            }
        }
        let (head, tail) = data.split_at_mut((rank + 1) * ncols);
        let pivot_row = &head[rank * ncols..];
        let inv = field.inv(&pivot_row[col]).expect("nonzero pivot");
        let update = |row: &mut [F::Elem]| {
            if field.is_zero(&row[col]) {
                return;
            }
            let factor = field.mul(&row[col], &inv);
            for j in col..ncols {
                if !field.is_zero(&pivot_row[j]) {
                    row[j] = field.sub_mul(&row[j], &factor, &pivot_row[j]);
                }
            }
        };
        if (nrows - rank) * (ncols - col) > PAR_THRESHOLD {
            tail.par_chunks_mut(ncols).for_each(update);
        } else {
            tail.chunks_mut(ncols).for_each(update);
        }
        rank += 1;
    }
    rank
}

/// Reduced row echelon form.
#[derive(Clone, Debug, PartialEq)]
pub struct Rref<E> {
    /// Nonzero rows, each with a one at its pivot and zeros at other pivots.
    pub rows: Vec<Vec<E>>,
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

impl<E: Clone> Rref<E> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

pub fn rref<F: Field>(field: &F, mut rows: Vec<Vec<F::Elem>>, ncols: usize) -> Rref<F::Elem> {
    let nrows = rows.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(found) = (r..nrows).find(|&i| !field.is_zero(&rows[i][col])) else {
            continue;
        };
        rows.swap(found, r);
        let inv = field.inv(&rows[r][col]).expect("nonzero pivot");
        for j in col..ncols {
            rows[r][j] = field.mul(&rows[r][j], &inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || field.is_zero(&row[col]) {
                continue;
            }
            let factor = row[col].clone();
            for j in col..ncols {
                if !field.is_zero(&pivot_row[j]) {
                    row[j] = field.sub_mul(&row[j], &factor, &pivot_row[j]);
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    Rref { rows, pivots, ncols }
}

/// Basis of the right null space read off an RREF, one vector per free column.
pub fn kernel_from_rref<F: Field>(field: &F, rref: &Rref<F::Elem>) -> Vec<Vec<F::Elem>> {
    let mut is_pivot = vec![false; rref.ncols];
    for &p in &rref.pivots {
        is_pivot[p] = true;
    }
    (0..rref.ncols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![field.zero(); rref.ncols];
            v[free] = field.one();
            for (row, &p) in rref.rows.iter().zip(&rref.pivots) {
                v[p] = field.neg(&row[free]);
            }
            v
        })
        .collect()
}

/// Reduces `v` against RREF rows, returning the multipliers used and leaving
/// the remainder in `v`.
pub fn reduce_against<F: Field>(field: &F, rref: &Rref<F::Elem>, v: &mut [F::Elem]) -> Vec<F::Elem> {
    rref.rows
        .iter()
        .zip(&rref.pivots)
        .map(|(row, &p)| {
            let c = v[p].clone();
            if !field.is_zero(&c) {
                for (j, x) in row.iter().enumerate().skip(p) {
                    if !field.is_zero(x) {
                        v[j] = field.sub_mul(&v[j], &c, x);
                    }
                }
            }
            c
        })
        .collect()
}

//! Sparse rank by Markowitz-style elimination with a dense fallback.
//!
//! Pivot choice: the live column with the fewest live entries, and within it
//! the shortest row. Elimination proceeds until the live submatrix exceeds
//! [`DENSE_SWITCH`] density (or the fill cap), at which point the remainder is
//! handed to [`dense::rank_in_place`]. Every choice is index-ordered, so the
//! result never depends on thread scheduling.

use crate::arith::Field;
use crate::linalg::dense;

/// Live-submatrix density above which elimination switches to dense.
pub const DENSE_SWITCH: f64 = 0.25;
/// Live submatrices smaller than this go straight to dense.
const SMALL_DENSE: usize = 4096;

pub type SparseRow<E> = Vec<(usize, E)>;

/// Rank of the matrix given by sorted, zero-free rows.
pub fn rank<F: Field>(field: &F, ncols: usize, mut rows: Vec<SparseRow<F::Elem>>) -> usize {
    let nrows = rows.len();
    let mut col_count = vec![0usize; ncols];
    let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); ncols];
    let mut nnz = 0usize;
    for (r, row) in rows.iter().enumerate() {
        debug_assert!(row.windows(2).all(|w| w[0].0 < w[1].0));
        for &(c, _) in row {
            col_count[c] += 1;
            col_rows[c].push(r as u32);
        }
        nnz += row.len();
    }
    let fill_cap = 8 * nnz.max(1) + (1 << 16);
    let mut row_live: Vec<bool> = rows.iter().map(|r| !r.is_empty()).collect();
    let mut live_rows = row_live.iter().filter(|&&b| b).count();
    let mut live_cols = col_count.iter().filter(|&&c| c > 0).count();
    let mut stamp = vec![0u32; nrows];
    let mut epoch = 0u32;
    let mut rank = 0;

    while live_rows > 0 && live_cols > 0 {
        let area = live_rows * live_cols;
        if area <= SMALL_DENSE || nnz as f64 > DENSE_SWITCH * area as f64 || nnz > fill_cap {
            return rank + dense_tail(field, ncols, &rows, &row_live, &col_count);
        }

        let col = (0..ncols)
            .filter(|&c| col_count[c] > 0)
            .min_by_key(|&c| (col_count[c], c))
            .expect("live column");

        epoch += 1;
        let mut holders = Vec::with_capacity(col_count[col]);
        for &r in &col_rows[col] {
            let r = r as usize;
            if stamp[r] == epoch || !row_live[r] {
                continue;
            }
            stamp[r] = epoch;
            if rows[r].binary_search_by_key(&col, |e| e.0).is_ok() {
                holders.push(r);
            }
        }
        debug_assert_eq!(holders.len(), col_count[col]);
        let pivot = *holders
            .iter()
            .min_by_key(|&&r| (rows[r].len(), r))
            .expect("column has a live row");
        let pivot_row = std::mem::take(&mut rows[pivot]);
        let pos = pivot_row.binary_search_by_key(&col, |e| e.0).unwrap();
        let inv = field.inv(&pivot_row[pos].1).expect("nonzero pivot");

        for &r in &holders {
            if r == pivot {
                continue;
            }
            let target = std::mem::take(&mut rows[r]);
            let p = target.binary_search_by_key(&col, |e| e.0).unwrap();
            let factor = field.mul(&target[p].1, &inv);
            let before = target.len();
            let merged = axpy_merge(field, &target, &factor, &pivot_row, |c, appeared| {
                if appeared {
                    if col_count[c] == 0 {
                        live_cols += 1;
                    }
                    col_count[c] += 1;
                    col_rows[c].push(r as u32);
                } else {
                    col_count[c] -= 1;
                    if col_count[c] == 0 {
                        live_cols -= 1;
                    }
                }
            });
            nnz = nnz + merged.len() - before;
            if merged.is_empty() {
                row_live[r] = false;
                live_rows -= 1;
            }
            rows[r] = merged;
        }

        for &(c, _) in &pivot_row {
            col_count[c] -= 1;
            if col_count[c] == 0 {
                live_cols -= 1;
            }
        }
        nnz -= pivot_row.len();
        row_live[pivot] = false;
        live_rows -= 1;
        col_rows[col] = Vec::new();
        rank += 1;
    }
    rank
}

/// `target - factor * pivot`, reporting each column that appears or vanishes.
fn axpy_merge<F: Field>(
    field: &F,
    target: &[(usize, F::Elem)],
    factor: &F::Elem,
    pivot: &[(usize, F::Elem)],
    mut changed: impl FnMut(usize, bool),
) -> SparseRow<F::Elem> {
    let mut out = Vec::with_capacity(target.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < pivot.len() {
        let ci = target.get(i).map_or(usize::MAX, |e| e.0);
        let cj = pivot.get(j).map_or(usize::MAX, |e| e.0);
        if ci < cj {
            out.push(target[i].clone());
            i += 1;
        } else if cj < ci {
            let v = field.neg(&field.mul(factor, &pivot[j].1));
            changed(cj, true);
            out.push((cj, v));
            j += 1;
        } else {
            let v = field.sub_mul(&target[i].1, factor, &pivot[j].1);
            if field.is_zero(&v) {
                changed(ci, false);
            } else {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn dense_tail<F: Field>(
    field: &F,
    ncols: usize,
    rows: &[SparseRow<F::Elem>],
    row_live: &[bool],
    col_count: &[usize],
) -> usize {
    let mut remap = vec![usize::MAX; ncols];
    let mut width = 0;
    for c in 0..ncols {
        if col_count[c] > 0 {
            remap[c] = width;
            width += 1;
        }
    }
    let live: Vec<&SparseRow<F::Elem>> = rows
        .iter()
        .zip(row_live)
        .filter(|(_, &l)| l)
        .map(|(r, _)| r)
        .collect();
    if width == 0 || live.is_empty() {
        return 0;
    }
    let mut data = vec![field.zero(); live.len() * width];
    for (i, row) in live.iter().enumerate() {
        for (c, v) in row.iter() {
            data[i * width + remap[*c]] = v.clone();
        }
    }
    // eliminate along the shorter side
    if width < live.len() {
        let mut t = vec![field.zero(); data.len()];
        for i in 0..live.len() {
            for j in 0..width {
                t[j * live.len() + i] = data[i * width + j].clone();
            }
        }
        dense::rank_in_place(field, &mut t, width, live.len())
    } else {
        dense::rank_in_place(field, &mut data, live.len(), width)
    }
}

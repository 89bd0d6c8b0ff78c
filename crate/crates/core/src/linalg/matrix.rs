use crate::arith::Field;
use crate::linalg::dense::{self, Rref};
use crate::linalg::sparse::{self, SparseRow};

/// Triplet lists denser than this are stored densely by [`ExactMatrix::from_triplets`].
pub const SPARSE_DENSITY_LIMIT: f64 = 0.25;

#[derive(Clone, Debug, PartialEq)]
pub enum Storage<E> {
    /// Row-major entries.
    Dense(Vec<E>),
    /// `(row, col, value)` sorted by `(row, col)`, unique, all values nonzero.
    Sparse(Vec<(usize, usize, E)>),
}

/// Matrix over an exact field, dense or sparse.
#[derive(Clone, Debug)]
pub struct ExactMatrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    storage: Storage<F::Elem>,
}

impl<F: Field> ExactMatrix<F> {
    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        ExactMatrix {
            field,
            rows,
            cols,
            storage: Storage::Sparse(Vec::new()),
        }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let one = field.one();
        let trips = (0..n).map(|i| (i, i, one.clone())).collect();
        Self::sparse_from_triplets(field, n, n, trips)
    }

    /// Dense matrix from row-major data.
    pub fn dense(field: F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Self {
        assert_eq!(data.len(), rows * cols, "dense data has wrong length");
        ExactMatrix {
            field,
            rows,
            cols,
            storage: Storage::Dense(data),
        }
    }

    /// Dense matrix from a list of equal-length rows.
    pub fn from_rows(field: F, cols: usize, rows: &[Vec<F::Elem>]) -> Self {
        let data: Vec<F::Elem> = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols, "ragged rows");
                r.iter().cloned()
            })
            .collect();
        Self::dense(field, rows.len(), cols, data)
    }

    /// Sums duplicate positions, drops zeros, and picks the storage by density.
    pub fn from_triplets(field: F, rows: usize, cols: usize, trips: Vec<(usize, usize, F::Elem)>) -> Self {
        let m = Self::sparse_from_triplets(field, rows, cols, trips);
        let area = (rows * cols).max(1);
        if m.nnz() as f64 > SPARSE_DENSITY_LIMIT * area as f64 {
            m.to_dense()
        } else {
            m
        }
    }

    /// As [`from_triplets`](Self::from_triplets) but always sparse.
    pub fn sparse_from_triplets(field: F, rows: usize, cols: usize, mut trips: Vec<(usize, usize, F::Elem)>) -> Self {
        trips.sort_by_key(|t| (t.0, t.1));
        let mut out: Vec<(usize, usize, F::Elem)> = Vec::with_capacity(trips.len());
        for (r, c, v) in trips {
            assert!(r < rows && c < cols, "triplet ({r}, {c}) outside {rows}x{cols}");
            match out.last_mut() {
                Some(last) if last.0 == r && last.1 == c => last.2 = field.add(&last.2, &v),
                _ => out.push((r, c, v)),
            }
        }
        out.retain(|t| !field.is_zero(&t.2));
        ExactMatrix {
            field,
            rows,
            cols,
            storage: Storage::Sparse(out),
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn storage(&self) -> &Storage<F::Elem> {
        &self.storage
    }

    pub fn is_sparse(&self) -> bool {
        matches!(self.storage, Storage::Sparse(_))
    }

    pub fn nnz(&self) -> usize {
        match &self.storage {
            Storage::Dense(d) => d.iter().filter(|x| !self.field.is_zero(x)).count(),
            Storage::Sparse(t) => t.len(),
        }
    }

    pub fn get(&self, r: usize, c: usize) -> F::Elem {
        assert!(r < self.rows && c < self.cols);
        match &self.storage {
            Storage::Dense(d) => d[r * self.cols + c].clone(),
            Storage::Sparse(t) => t
                .binary_search_by_key(&(r, c), |e| (e.0, e.1))
                .map(|i| t[i].2.clone())
                .unwrap_or_else(|_| self.field.zero()),
        }
    }

    /// Nonzero entries in `(row, col)` order.
    pub fn triplets(&self) -> Vec<(usize, usize, F::Elem)> {
        match &self.storage {
            Storage::Sparse(t) => t.clone(),
            Storage::Dense(d) => d
                .iter()
                .enumerate()
                .filter(|(_, v)| !self.field.is_zero(v))
                .map(|(i, v)| (i / self.cols, i % self.cols, v.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self) -> Self {
        match &self.storage {
            Storage::Dense(_) => self.clone(),
            Storage::Sparse(t) => {
                let mut d = vec![self.field.zero(); self.rows * self.cols];
                for (r, c, v) in t {
                    d[r * self.cols + c] = v.clone();
                }
                Self::dense(self.field.clone(), self.rows, self.cols, d)
            }
        }
    }

    pub fn to_sparse(&self) -> Self {
        match &self.storage {
            Storage::Sparse(_) => self.clone(),
            Storage::Dense(_) => ExactMatrix {
                field: self.field.clone(),
                rows: self.rows,
                cols: self.cols,
                storage: Storage::Sparse(self.triplets()),
            },
        }
    }

    pub fn dense_rows(&self) -> Vec<Vec<F::Elem>> {
        let d = self.to_dense();
        match d.storage {
            Storage::Dense(data) if self.cols > 0 => data.chunks(self.cols).map(|r| r.to_vec()).collect(),
            _ => vec![Vec::new(); self.rows],
        }
    }

    pub fn sparse_rows(&self) -> Vec<SparseRow<F::Elem>> {
        let mut out: Vec<SparseRow<F::Elem>> = vec![Vec::new(); self.rows];
        for (r, c, v) in self.triplets() {
            out[r].push((c, v));
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let trips = self.triplets().into_iter().map(|(r, c, v)| (c, r, v)).collect();
        let t = Self::sparse_from_triplets(self.field.clone(), self.cols, self.rows, trips);
        if self.is_sparse() {
            t
        } else {
            t.to_dense()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.nnz() == 0
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.cols);
        let f = &self.field;
        let mut out = vec![f.zero(); self.rows];
        for (r, c, x) in self.triplets() {
            out[r] = f.add(&out[r], &f.mul(&x, &v[c]));
        }
        out
    }

    /// Product by row-wise sparse accumulation.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let f = &self.field;
        let right = other.sparse_rows();
        let mut trips = Vec::new();
        let mut acc = vec![f.zero(); other.cols];
        let mut touched = vec![false; other.cols];
        for (r, row) in self.sparse_rows().into_iter().enumerate() {
            let mut cols = Vec::new();
            for (k, a) in &row {
                for (c, b) in &right[*k] {
                    if !touched[*c] {
                        touched[*c] = true;
                        cols.push(*c);
                    }
                    acc[*c] = f.add(&acc[*c], &f.mul(a, b));
                }
            }
            for c in cols {
                touched[c] = false;
                let v = std::mem::replace(&mut acc[c], f.zero());
                if !f.is_zero(&v) {
                    trips.push((r, c, v));
                }
            }
        }
        Self::from_triplets(f.clone(), self.rows, other.cols, trips)
    }

    /// Rank; sparse storage uses Markowitz elimination, dense storage plain Gauss.
    pub fn rank(&self) -> usize {
        match self.storage {
            Storage::Sparse(_) => self.rank_sparse(),
            Storage::Dense(_) => self.rank_dense(),
        }
    }

    pub fn rank_dense(&self) -> usize {
        let Storage::Dense(mut data) = self.to_dense().storage else {
            unreachable!()
        };
        dense::rank_in_place(&self.field, &mut data, self.rows, self.cols)
    }

    pub fn rank_sparse(&self) -> usize {
        sparse::rank(&self.field, self.cols, self.sparse_rows())
    }

    pub fn rref(&self) -> Rref<F::Elem> {
        dense::rref(&self.field, self.dense_rows(), self.cols)
    }

    /// Basis of the right null space; `cols - rank` vectors.
    pub fn kernel_basis(&self) -> Vec<Vec<F::Elem>> {
        dense::kernel_from_rref(&self.field, &self.rref())
    }
}

impl<F: Field> PartialEq for ExactMatrix<F> {
    /// Equal as matrices, regardless of storage.
    fn eq(&self, other: &Self) -> bool {
        self.shape() == other.shape() && self.triplets() == other.triplets()
    }
}

/// Basis of all solutions `x` with `constraints * x = 0`.
pub fn solve_homogeneous<F: Field>(constraints: &ExactMatrix<F>) -> Vec<Vec<F::Elem>> {
    constraints.kernel_basis()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::PrimeField;
    use crate::rng::SeededRng;
    use crate::FpMatrix;

    fn random_sparse(f: PrimeField, rows: usize, cols: usize, density: f64, seed: u64) -> FpMatrix {
        use rand::Rng;
        let mut rng = SeededRng::new(seed);
        let mut trips = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                if rng.gen_bool(density) {
                    trips.push((r, c, f.random(&mut rng)));
                }
            }
        }
        FpMatrix::sparse_from_triplets(f, rows, cols, trips)
    }

    #[test]
    fn rank_examples() {
        let f = PrimeField::default_prime();
        assert_eq!(FpMatrix::identity(f, 3).rank(), 3);
        assert_eq!(FpMatrix::zeros(f, 4, 7).rank(), 0);
        assert_eq!(FpMatrix::zeros(f, 4, 7).kernel_basis().len(), 7);
    }

    #[test]
    fn random_invertible_has_empty_kernel() {
        let f = PrimeField::default_prime();
        let m = random_sparse(f, 12, 12, 1.0, 9).to_dense();
        assert_eq!(m.rank(), 12);
        assert!(m.kernel_basis().is_empty());
    }

    #[test]
    fn storage_choice_and_round_trip() {
        let f = PrimeField::default_prime();
        let sparse = FpMatrix::from_triplets(f, 10, 10, vec![(0, 0, f.elem(1)), (3, 4, f.elem(2))]);
        assert!(sparse.is_sparse());
        let full = FpMatrix::from_triplets(f, 2, 2, (0..4).map(|i| (i / 2, i % 2, f.elem(1))).collect());
        assert!(!full.is_sparse());
        assert_eq!(sparse.to_dense().to_sparse().storage(), sparse.storage());
        // duplicates sum, zeros drop
        let d = FpMatrix::sparse_from_triplets(f, 1, 2, vec![(0, 1, f.elem(3)), (0, 1, f.elem(-3)), (0, 0, f.elem(2))]);
        assert_eq!(d.triplets(), vec![(0, 0, f.elem(2))]);
    }

    #[test]
    fn sparse_dense_agree_and_transpose() {
        let f = PrimeField::default_prime();
        for seed in 0..60 {
            let density = [0.02, 0.05, 0.2, 0.6][seed as usize % 4];
            let m = random_sparse(f, 40 + seed as usize % 30, 50, density, seed);
            // rank-deficient by construction: stack with a product
            let low = m.mul(&random_sparse(f, 50, 7, 0.5, seed + 1000)).mul(&random_sparse(f, 7, 50, 0.5, seed + 2000));
            for mm in [m, low] {
                let r = mm.rank_sparse();
                assert_eq!(r, mm.rank_dense());
                assert_eq!(r, mm.transpose().rank_sparse());
                let ker = mm.kernel_basis();
                assert_eq!(r + ker.len(), mm.cols());
                for v in &ker {
                    assert!(mm.mul_vec(v).iter().all(|x| x.is_zero()));
                }
            }
        }
    }

    #[test]
    fn solve_homogeneous_without_constraints() {
        let f = PrimeField::default_prime();
        assert_eq!(solve_homogeneous(&FpMatrix::zeros(f, 0, 5)).len(), 5);
    }
}

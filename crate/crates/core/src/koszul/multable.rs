use serde::{Deserialize, Serialize};

use crate::arith::{Fp, PrimeField};
use crate::error::{Error, Result};
use crate::FpMatrix;

/// Multiplication `V x V -> W2` between the degree-one and degree-two parts
/// of a coordinate ring, with `V = H^0(L)` and `W2 = H^0(L^2)`.
///
/// This is everything the linear strand depends on.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MulTable {
    field: PrimeField,
    h0l: usize,
    h0l2: usize,
    /// `mu[i * h0l + j]` is the coordinate vector of `v_i * v_j` in `W2`.
    mu: Vec<Vec<Fp>>,
}

impl MulTable {
    /// Checks shapes and symmetry. Surjectivity is checked separately by
    /// [`MulTable::is_surjective`] because fixtures may want to inspect it.
    pub fn new(field: PrimeField, h0l: usize, h0l2: usize, mu: Vec<Vec<Fp>>) -> Result<Self> {
        if mu.len() != h0l * h0l || mu.iter().any(|v| v.len() != h0l2) {
            return Err(Error::Invariant("multiplication table has wrong shape".into()));
        }
        let t = MulTable { field, h0l, h0l2, mu };
        if !t.is_symmetric() {
            return Err(Error::Invariant("multiplication table is not symmetric".into()));
        }
        Ok(t)
    }

    /// Builds from the upper triangle `i <= j`.
    pub fn from_fn(field: PrimeField, h0l: usize, h0l2: usize, mut f: impl FnMut(usize, usize) -> Vec<Fp>) -> Result<Self> {
        let mut mu = vec![Vec::new(); h0l * h0l];
        for i in 0..h0l {
            for j in i..h0l {
                let v = f(i, j);
                mu[j * h0l + i] = v.clone();
                mu[i * h0l + j] = v;
            }
        }
        Self::new(field, h0l, h0l2, mu)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn h0l(&self) -> usize {
        self.h0l
    }

    pub fn h0l2(&self) -> usize {
        self.h0l2
    }

    #[inline]
    pub fn mu(&self, i: usize, j: usize) -> &[Fp] {
        &self.mu[i * self.h0l + j]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.h0l).all(|i| (0..i).all(|j| self.mu(i, j) == self.mu(j, i)))
    }

    /// The `h0l^2 x h0l2` matrix whose rows are the products `v_i v_j`.
    pub fn flattening(&self) -> FpMatrix {
        let trips = self
            .mu
            .iter()
            .enumerate()
            .flat_map(|(r, v)| v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(move |(c, x)| (r, c, *x)))
            .collect();
        FpMatrix::from_triplets(self.field, self.h0l * self.h0l, self.h0l2, trips)
    }

    /// Products of degree-one elements span the degree-two part.
    pub fn is_surjective(&self) -> bool {
        self.flattening().rank() == self.h0l2
    }
}

//! Quotients of a coordinate subspace by a smaller one.

use crate::arith::Field;
use crate::error::{Error, Result};
use crate::linalg::dense::{self, Rref};

/// `span(ambient) / span(subspace)`, with coordinates taken in a complement
/// basis: the RREF rows of the ambient vectors after reduction modulo the
/// subspace. Those rows vanish on the subspace pivots, so the coordinates of a
/// class are read off at the complement pivots.
#[derive(Clone, Debug)]
pub struct Quotient<F: Field> {
    field: F,
    sub: Rref<F::Elem>,
    complement: Rref<F::Elem>,
}

impl<F: Field> Quotient<F> {
    pub fn dim(&self) -> usize {
        self.complement.rank()
    }

    pub fn subspace_dim(&self) -> usize {
        self.sub.rank()
    }

    /// Complement basis vectors, in ambient coordinates.
    pub fn complement_basis(&self) -> &[Vec<F::Elem>] {
        &self.complement.rows
    }

    /// Coordinates of the class of `v`; `v` must lie in the ambient span.
    pub fn project(&self, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
        let mut w = v.to_vec();
        dense::reduce_against(&self.field, &self.sub, &mut w);
        let coords = dense::reduce_against(&self.field, &self.complement, &mut w);
        if w.iter().all(|x| self.field.is_zero(x)) {
            Ok(coords)
        } else {
            Err(Error::NotASubspace)
        }
    }
}

/// Builds the quotient, checking that the subspace lies in the ambient span.
pub fn quotient_dims<F: Field>(
    field: &F,
    ncoords: usize,
    ambient: &[Vec<F::Elem>],
    subspace: &[Vec<F::Elem>],
) -> Result<Quotient<F>> {
    let sub = dense::rref(field, subspace.to_vec(), ncoords);
    let ambient_rank = dense::rref(field, ambient.to_vec(), ncoords).rank();
    let reduced: Vec<Vec<F::Elem>> = ambient
        .iter()
        .map(|a| {
            let mut w = a.clone();
            dense::reduce_against(field, &sub, &mut w);
            w
        })
        .collect();
    let complement = dense::rref(field, reduced, ncoords);
    // rank(ambient + sub) = rank(sub) + rank(complement) must equal rank(ambient)
    if sub.rank() + complement.rank() != ambient_rank {
        return Err(Error::NotASubspace);
    }
    Ok(Quotient {
        field: field.clone(),
        sub,
        complement,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::PrimeField;

    fn vecs(f: PrimeField, rows: &[&[i64]]) -> Vec<Vec<crate::arith::Fp>> {
        rows.iter().map(|r| r.iter().map(|&x| f.elem(x)).collect()).collect()
    }

    #[test]
    fn zero_subspace_keeps_ambient() {
        let f = PrimeField::new(101).unwrap();
        let amb = vecs(f, &[&[1, 2, 0], &[0, 1, 1]]);
        let q = quotient_dims(&f, 3, &amb, &[]).unwrap();
        assert_eq!(q.dim(), 2);
        // coordinates of a combination are recovered
        let v: Vec<_> = (0..3).map(|i| amb[0][i] * f.elem(3) + amb[1][i] * f.elem(5)).collect();
        let c = q.project(&v).unwrap();
        let back: Vec<_> = (0..3)
            .map(|i| q.complement_basis()[0][i] * c[0] + q.complement_basis()[1][i] * c[1])
            .collect();
        assert_eq!(back, v);
    }

    #[test]
    fn quotient_kills_subspace() {
        let f = PrimeField::new(101).unwrap();
        let amb = vecs(f, &[&[1, 0, 0, 1], &[0, 1, 0, 1], &[0, 0, 1, 1]]);
        let sub = vecs(f, &[&[1, 1, 0, 2]]);
        let q = quotient_dims(&f, 4, &amb, &sub).unwrap();
        assert_eq!(q.dim(), 2);
        assert!(q.project(&sub[0]).unwrap().iter().all(|x| x.is_zero()));
        // outside the ambient span
        assert_eq!(q.project(&vecs(f, &[&[0, 0, 0, 1]])[0]), Err(Error::NotASubspace));
    }

    #[test]
    fn rejects_non_contained_subspace() {
        let f = PrimeField::new(101).unwrap();
        let amb = vecs(f, &[&[1, 0, 0]]);
        let sub = vecs(f, &[&[0, 1, 0]]);
        assert!(matches!(quotient_dims(&f, 3, &amb, &sub), Err(Error::NotASubspace)));
    }
}

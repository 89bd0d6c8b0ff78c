//! Models whose multiplication tables come from monomial algebra: balanced
//! rational normal scrolls and complete-intersection canonical curves.

use std::collections::HashMap;

use crate::arith::{Fp, PrimeField};
use crate::error::{Error, Result};
use crate::koszul::MulTable;
use crate::linalg::quotient_dims;
use crate::rng::SeededRng;

/// The scroll over P1 embedded by `O(1)` on the projectivisation of
/// `O(1)^(k-2) + O(2)`.
///
/// Sections of `O(m)` are monomials `y^a z^c u^i v^j` with `|a| + c = m` and
/// base degree `|a| + 2c = i + j`, where the `y` have weight one and `z`
/// weight two.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScrollModel {
    k: usize,
}

impl ScrollModel {
    pub fn new(k: usize) -> Result<Self> {
        if k < 3 {
            return Err(Error::Usage(format!("scroll needs k >= 3, got {k}")));
        }
        Ok(ScrollModel { k })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Exponent vectors `[a_1 .. a_(k-2), c, i, j]` of the sections of `O(m)`.
    pub fn sections(&self, m: u32) -> Vec<Vec<u32>> {
        let r = self.k - 2;
        let mut out = Vec::new();
        for c in 0..=m {
            for a in compositions(m - c, r) {
                let base = (m - c) + 2 * c;
                for i in (0..=base).rev() {
                    let mut e = a.clone();
                    e.extend([c, i, base - i]);
                    out.push(e);
                }
            }
        }
        out
    }

    pub fn mul_table(&self) -> Result<MulTable> {
        let field = PrimeField::default_prime();
        self.mul_table_over(field)
    }

    /// Products of sections are monomials, so each product is a unit vector.
    pub fn mul_table_over(&self, field: PrimeField) -> Result<MulTable> {
        let v = self.sections(1);
        let w = self.sections(2);
        let index: HashMap<&[u32], usize> = w.iter().enumerate().map(|(i, e)| (e.as_slice(), i)).collect();
        MulTable::from_fn(field, v.len(), w.len(), |i, j| {
            let prod: Vec<u32> = v[i].iter().zip(&v[j]).map(|(a, b)| a + b).collect();
            let mut out = vec![field.elem(0); w.len()];
            out[index[prod.as_slice()]] = field.elem(1);
            out
        })
    }
}

/// All length-`r` vectors of naturals summing to `total`.
fn compositions(total: u32, r: usize) -> Vec<Vec<u32>> {
    if r == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in compositions(total - first, r - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Canonical curve of genus 5 (three quadrics in P4) or genus 4 (a quadric
/// and a cubic in P3). Only the quadrics enter the degree-two part.
#[derive(Clone, Debug, PartialEq)]
pub struct CIFixture {
    field: PrimeField,
    seed: u64,
    genus: usize,
    quadrics: Vec<Vec<Fp>>,
    cubic: Option<Vec<Fp>>,
}

impl CIFixture {
    pub fn new(genus: usize, field: PrimeField, seed: u64) -> Result<Self> {
        let nquad = match genus {
            4 => 1,
            5 => 3,
            g => return Err(Error::UnsupportedGenus(g)),
        };
        let mut rng = SeededRng::new(seed);
        let nvars = genus;
        let quad_len = nvars * (nvars + 1) / 2;
        let quadrics: Vec<Vec<Fp>> = (0..nquad)
            .map(|_| (0..quad_len).map(|_| field.random(&mut rng)).collect())
            .collect();
        let cubic = (genus == 4).then(|| {
            let n = nvars * (nvars + 1) * (nvars + 2) / 6;
            (0..n).map(|_| field.random(&mut rng)).collect()
        });
        Self::from_parts(field, seed, genus, quadrics, cubic)
    }

    pub fn from_parts(field: PrimeField, seed: u64, genus: usize, quadrics: Vec<Vec<Fp>>, cubic: Option<Vec<Fp>>) -> Result<Self> {
        let fix = CIFixture {
            field,
            seed,
            genus,
            quadrics,
            cubic,
        };
        let rank = crate::FpMatrix::from_rows(field, fix.quadric_monomials().len(), &fix.quadrics).rank();
        if rank != fix.quadrics.len() {
            return Err(Error::DegenerateInstance(format!("random quadrics have rank {rank}")));
        }
        Ok(fix)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn quadrics(&self) -> &[Vec<Fp>] {
        &self.quadrics
    }

    pub fn cubic(&self) -> Option<&[Fp]> {
        self.cubic.as_deref()
    }

    /// Pairs `(i, j)` with `i <= j`, the order of quadric coefficients.
    pub fn quadric_monomials(&self) -> Vec<(usize, usize)> {
        let n = self.genus;
        (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect()
    }

    pub fn mul_table(&self) -> Result<MulTable> {
        let mons = self.quadric_monomials();
        let nq = mons.len();
        let index: HashMap<(usize, usize), usize> = mons.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let units: Vec<Vec<Fp>> = (0..nq)
            .map(|i| {
                let mut v = vec![self.field.elem(0); nq];
                v[i] = self.field.elem(1);
                v
            })
            .collect();
        let q = quotient_dims(&self.field, nq, &units, &self.quadrics)?;
        let g = self.genus;
        let mut err = None;
        let table = MulTable::from_fn(self.field, g, q.dim(), |i, j| {
            q.project(&units[index[&(i.min(j), i.max(j))]]).unwrap_or_else(|e| {
                err = Some(e);
                Vec::new()
            })
        });
        if let Some(e) = err {
            return Err(e);
        }
        table
    }
}

pub fn scroll_mul_table(k: usize) -> Result<MulTable> {
    ScrollModel::new(k)?.mul_table()
}

pub fn ci_mul_table(genus: usize, field: PrimeField, seed: u64) -> Result<MulTable> {
    CIFixture::new(genus, field, seed)?.mul_table()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::koszul::{binom, extra_syzygies, kp1, linear_strand};

    #[test]
    fn scroll_dimensions() {
        for (k, dims) in [(3, (5, 12)), (4, (7, 22)), (5, (9, 35))] {
            let t = scroll_mul_table(k).unwrap();
            assert_eq!((t.h0l(), t.h0l2()), dims);
            assert!(t.is_surjective());
            let formula = 3 * (k - 2) * (k - 1) / 2 + 4 * (k - 2) + 5;
            assert_eq!(t.h0l2(), formula);
        }
    }

    #[test]
    fn scroll_strand_is_eagon_northcott() {
        for k in [3usize, 4] {
            let s = linear_strand(&scroll_mul_table(k).unwrap()).unwrap();
            let expected: Vec<usize> = (1..=2 * k - 3).map(|p| p * binom(k, p + 1)).collect();
            assert_eq!(s.dims(), expected);
        }
        assert_eq!(linear_strand(&scroll_mul_table(4).unwrap()).unwrap().dims(), vec![6, 8, 3, 0, 0]);
    }

    #[test]
    fn ci_examples() {
        let f = PrimeField::default_prime();
        let t5 = ci_mul_table(5, f, 1).unwrap();
        assert_eq!((t5.h0l(), t5.h0l2()), (5, 12));
        assert_eq!(kp1(&t5, 1).unwrap(), 3);
        assert_eq!(kp1(&t5, 2).unwrap(), 0);
        assert_eq!(extra_syzygies(&t5, 3).unwrap(), 0);
        let t4 = ci_mul_table(4, f, 1).unwrap();
        assert_eq!((t4.h0l(), t4.h0l2()), (4, 9));
        assert_eq!(kp1(&t4, 1).unwrap(), 1);
        assert!(matches!(ci_mul_table(6, f, 1), Err(Error::UnsupportedGenus(6))));
        assert_eq!(t5.flattening().transpose().kernel_basis().len(), 13);
    }

    #[test]
    fn dependent_quadrics_are_degenerate() {
        let f = PrimeField::default_prime();
        let q: Vec<Fp> = (0..15).map(|i| f.elem(i)).collect();
        let r = CIFixture::from_parts(f, 0, 5, vec![q.clone(), q.clone(), q], None);
        assert!(matches!(r, Err(Error::DegenerateInstance(_))));
    }
}

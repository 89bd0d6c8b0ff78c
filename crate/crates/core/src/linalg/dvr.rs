//! Square matrices over the discrete valuation ring GF(p)[[t]].
//!
//! Entries are polynomials in `t`. The order of vanishing of the determinant
//! is compared with the corank of the special fibre `M(0)`: the determinant
//! always vanishes to order at least that corank.

use rand::Rng;
use serde::Serialize;

use crate::arith::{Fp, GFPoly, PrimeField};
use crate::error::{Error, Result};
use crate::rng::SeededRng;
use crate::FpMatrix;

#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix {
    field: PrimeField,
    n: usize,
    entries: Vec<GFPoly>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DegeneracyCheck {
    /// Corank of the matrix at `t = 0`.
    pub corank0: usize,
    /// Order of vanishing of the determinant at `t = 0`.
    pub detval: usize,
    pub ok: bool,
}

impl PolyMatrix {
    pub fn new(field: PrimeField, n: usize, entries: Vec<GFPoly>) -> Self {
        assert_eq!(entries.len(), n * n, "PolyMatrix must be square");
        PolyMatrix { field, n, entries }
    }

    pub fn from_fn(field: PrimeField, n: usize, f: impl Fn(usize, usize) -> GFPoly) -> Self {
        let entries = (0..n * n).map(|i| f(i / n, i % n)).collect();
        Self::new(field, n, entries)
    }

    /// Constant matrix.
    pub fn from_constant(m: &FpMatrix) -> Self {
        assert_eq!(m.rows(), m.cols());
        let f = *m.field();
        Self::from_fn(f, m.rows(), |i, j| GFPoly::constant(f, m.get(i, j)))
    }

    pub fn diagonal_monomials(field: PrimeField, exps: &[usize]) -> Self {
        let n = exps.len();
        Self::from_fn(field, n, |i, j| {
            if i == j {
                GFPoly::monomial(field, field.elem(1), exps[i])
            } else {
                GFPoly::zero(field)
            }
        })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &GFPoly {
        &self.entries[i * self.n + j]
    }

    pub fn max_degree(&self) -> usize {
        self.entries.iter().filter_map(|e| e.degree()).max().unwrap_or(0)
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        Self::from_fn(self.field, n, |i, j| {
            (0..n).fold(GFPoly::zero(self.field), |acc, k| acc.add(&self.entry(i, k).mul(other.entry(k, j))))
        })
    }

    /// The special fibre `M(0)`.
    pub fn at_zero(&self) -> FpMatrix {
        let data = self.entries.iter().map(|e| e.coeff(0)).collect();
        FpMatrix::dense(self.field, self.n, self.n, data)
    }

    /// Upper bound on the degree of the determinant: sum of row degrees.
    fn det_degree_bound(&self) -> usize {
        (0..self.n)
            .map(|i| (0..self.n).filter_map(|j| self.entry(i, j).degree()).max().unwrap_or(0))
            .sum()
    }

    /// `t`-adic valuation of the determinant, by elimination with minimal
    /// valuation pivots over truncated power series. Row operations use DVR
    /// coefficients only, so the determinant is preserved up to sign; each
    /// division by `t^v` costs `v` digits of precision, which the starting
    /// precision covers.
    pub fn det_valuation(&self) -> Result<usize> {
        let n = self.n;
        let bound = self.det_degree_bound();
        let width = 2 * bound + 2;
        let zero = self.field.elem(0);
        let mut a: Vec<Vec<Fp>> = self
            .entries
            .iter()
            .map(|e| (0..width).map(|i| e.coeff(i)).collect())
            .collect();
        let mut prec = width;
        let mut total = 0;
        for step in 0..n {
            let mut best: Option<(usize, usize, usize)> = None;
            for i in step..n {
                for j in step..n {
                    if let Some(v) = a[i * n + j][..prec].iter().position(|c| !c.is_zero()) {
                        if best.is_none_or(|b| v < b.0) {
                            best = Some((v, i, j));
                        }
                    }
                }
            }
            // all remaining entries vanish to the known precision: det has
            // valuation >= total + prec = width > bound
            let Some((v, pi, pj)) = best else {
                return Err(Error::SingularMatrix);
            };
            for j in 0..n {
                a.swap(step * n + j, pi * n + j);
            }
            for i in 0..n {
                a.swap(i * n + step, i * n + pj);
            }
            total += v;
            let new_prec = prec - v;
            let pivot = a[step * n + step].clone();
            let unit: Vec<Fp> = pivot[v..prec].to_vec();
            let unit_inv = series_inverse(&unit, new_prec);
            for i in step + 1..n {
                let e = &a[i * n + step];
                if e[..prec].iter().all(|c| c.is_zero()) {
                    continue;
                }
                // factor = (e / t^v) * unit^{-1}, exact to new_prec digits
                let factor = series_mul(&e[v..prec], &unit_inv, new_prec);
                for j in step..n {
                    let prod = series_mul(&factor, &a[step * n + j][..new_prec], new_prec);
                    let row = &mut a[i * n + j];
                    for (k, p) in prod.iter().enumerate() {
                        row[k] -= *p;
                    }
                    for c in row[new_prec..].iter_mut() {
                        *c = zero;
                    }
                }
            }
            prec = new_prec;
        }
        Ok(total)
    }
}

fn series_mul(a: &[Fp], b: &[Fp], len: usize) -> Vec<Fp> {
    let zero = Fp::zero(a.first().or(b.first()).map_or(2, |x| x.modulus()));
    let mut out = vec![zero; len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += *x * *y;
        }
    }
    out
}

fn series_inverse(u: &[Fp], len: usize) -> Vec<Fp> {
    let inv0 = u[0].inverse().expect("unit has nonzero constant term");
    let mut out = vec![Fp::zero(inv0.modulus()); len];
    if len == 0 {
        return out;
    }
    out[0] = inv0;
    for k in 1..len {
        let mut acc = Fp::zero(inv0.modulus());
        for i in 1..=k.min(u.len() - 1) {
            acc += u[i] * out[k - i];
        }
        out[k] = -(acc * inv0);
    }
    out
}

/// Corank at `t = 0` against the valuation of the determinant.
pub fn dvr_degeneracy_check(m: &PolyMatrix) -> Result<DegeneracyCheck> {
    let detval = m.det_valuation()?;
    let corank0 = m.size() - m.at_zero().rank();
    Ok(DegeneracyCheck {
        corank0,
        detval,
        ok: detval >= corank0,
    })
}

/// `U * diag(t^a) * V` with random invertible constant `U`, `V`.
#[derive(Clone, Debug)]
pub struct SmithInstance {
    pub exponents: Vec<usize>,
    pub matrix: PolyMatrix,
}

impl SmithInstance {
    /// Expected check result: corank = #{a > 0}, valuation = sum of a.
    pub fn expected(&self) -> DegeneracyCheck {
        let corank0 = self.exponents.iter().filter(|&&a| a > 0).count();
        let detval = self.exponents.iter().sum();
        DegeneracyCheck {
            corank0,
            detval,
            ok: true,
        }
    }

    /// Whether every positive exponent equals one.
    pub fn reduced(&self) -> bool {
        self.exponents.iter().all(|&a| a <= 1)
    }
}

pub fn random_invertible(field: PrimeField, n: usize, rng: &mut SeededRng) -> FpMatrix {
    loop {
        let data = (0..n * n).map(|_| field.random(rng)).collect();
        let m = FpMatrix::dense(field, n, n, data);
        if m.rank() == n {
            return m;
        }
    }
}

pub fn random_smith_instance(field: PrimeField, n: usize, max_exp: usize, rng: &mut SeededRng) -> SmithInstance {
    let exponents: Vec<usize> = (0..n).map(|_| rng.gen_range(0..=max_exp)).collect();
    let u = PolyMatrix::from_constant(&random_invertible(field, n, rng));
    let v = PolyMatrix::from_constant(&random_invertible(field, n, rng));
    let d = PolyMatrix::diagonal_monomials(field, &exponents);
    SmithInstance {
        matrix: u.mul(&d).mul(&v),
        exponents,
    }
}

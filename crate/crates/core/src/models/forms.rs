//! Forms on the projective plane and on P1 x P1, as coefficient vectors in a
//! monomial basis, together with the affine chart used for nodes and points.
//!
//! Plane monomials `x^i y^j z^k` use the chart `z = 1` with affine point
//! `(x, y)`. Bihomogeneous monomials `x0^a0 x1^a1 y0^b0 y1^b1` use the chart
//! `x0 = y0 = 1` with affine point `(s, u) = (x1, y1)`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::arith::{Fp, GFPoly, PrimeField};
use crate::FpMatrix;

/// Degree of a form: total degree on the plane, bidegree on P1 x P1.
/// Negative degrees denote the zero space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Degree {
    Plane(i64),
    Bi(i64, i64),
}

impl Degree {
    pub fn add(self, other: Degree) -> Degree {
        match (self, other) {
            (Degree::Plane(a), Degree::Plane(b)) => Degree::Plane(a + b),
            (Degree::Bi(a, b), Degree::Bi(c, d)) => Degree::Bi(a + c, b + d),
            _ => panic!("mixed surfaces"),
        }
    }

    pub fn sub(self, other: Degree) -> Degree {
        match (self, other) {
            (Degree::Plane(a), Degree::Plane(b)) => Degree::Plane(a - b),
            (Degree::Bi(a, b), Degree::Bi(c, d)) => Degree::Bi(a - c, b - d),
            _ => panic!("mixed surfaces"),
        }
    }

    pub fn scale(self, k: i64) -> Degree {
        match self {
            Degree::Plane(a) => Degree::Plane(k * a),
            Degree::Bi(a, b) => Degree::Bi(k * a, k * b),
        }
    }

    /// Dimension of the space of forms.
    pub fn count(self) -> usize {
        match self {
            Degree::Plane(d) if d >= 0 => ((d + 1) * (d + 2) / 2) as usize,
            Degree::Bi(a, b) if a >= 0 && b >= 0 => ((a + 1) * (b + 1)) as usize,
            _ => 0,
        }
    }
}

/// Monomials of one degree, in a fixed order, with reverse lookup.
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    degree: Degree,
    exps: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

impl MonomialBasis {
    pub fn new(degree: Degree) -> Self {
        let mut exps = Vec::new();
        match degree {
            Degree::Plane(d) if d >= 0 => {
                let d = d as u32;
                for i in 0..=d {
                    for j in 0..=d - i {
                        exps.push(vec![i, j, d - i - j]);
                    }
                }
            }
            Degree::Bi(a, b) if a >= 0 && b >= 0 => {
                let (a, b) = (a as u32, b as u32);
                for i in 0..=a {
                    for j in 0..=b {
                        exps.push(vec![a - i, i, b - j, j]);
                    }
                }
            }
            _ => {}
        }
        let index = exps.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        MonomialBasis { degree, exps, index }
    }

    pub fn degree(&self) -> Degree {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponent(&self, i: usize) -> &[u32] {
        &self.exps[i]
    }

    pub fn index_of(&self, exp: &[u32]) -> Option<usize> {
        self.index.get(exp).copied()
    }

    /// Exponents of `s` and `u` in the affine chart.
    #[inline]
    pub fn affine_exponents(&self, i: usize) -> (u32, u32) {
        let e = &self.exps[i];
        match self.degree {
            Degree::Plane(_) => (e[0], e[1]),
            Degree::Bi(..) => (e[1], e[3]),
        }
    }

    /// Product of two forms, expressed in `target` (which must have the sum degree).
    pub fn multiply(field: PrimeField, a: (&MonomialBasis, &[Fp]), b: (&MonomialBasis, &[Fp]), target: &MonomialBasis) -> Vec<Fp> {
        debug_assert_eq!(a.0.degree.add(b.0.degree), target.degree);
        let mut out = vec![field.elem(0); target.len()];
        let mut exp = Vec::new();
        for (i, &x) in a.1.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in b.1.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                exp.clear();
                exp.extend(a.0.exps[i].iter().zip(&b.0.exps[j]).map(|(p, q)| p + q));
                let t = target.index[&exp];
                out[t] += x * y;
            }
        }
        out
    }

    /// Row of monomial values at an affine point.
    pub fn value_row(&self, pt: (Fp, Fp)) -> Vec<Fp> {
        (0..self.len())
            .map(|i| {
                let (a, b) = self.affine_exponents(i);
                pt.0.pow(a as u64) * pt.1.pow(b as u64)
            })
            .collect()
    }

    /// Row of `∂^(ds+du) / ∂s^ds ∂u^du` of each monomial at an affine point.
    pub fn derivative_row(&self, pt: (Fp, Fp), ds: u32, du: u32) -> Vec<Fp> {
        let p = pt.0.modulus();
        (0..self.len())
            .map(|i| {
                let (a, b) = self.affine_exponents(i);
                if a < ds || b < du {
                    return Fp::zero(p);
                }
                let fa: u64 = (a - ds + 1..=a).map(|x| x as u64).product();
                let fb: u64 = (b - du + 1..=b).map(|x| x as u64).product();
                Fp::from_u64(fa, p) * Fp::from_u64(fb, p) * pt.0.pow((a - ds) as u64) * pt.1.pow((b - du) as u64)
            })
            .collect()
    }

    /// Evaluates a form at an affine point.
    pub fn eval(&self, coeffs: &[Fp], pt: (Fp, Fp)) -> Fp {
        dot(coeffs, &self.value_row(pt))
    }

    /// Restriction of a form to the affine line `s = s0`, as a polynomial in `u`.
    pub fn restrict_to_line(&self, field: PrimeField, coeffs: &[Fp], s0: Fp) -> GFPoly {
        let mut out = Vec::new();
        for (i, &c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (a, b) = self.affine_exponents(i);
            let b = b as usize;
            if out.len() <= b {
                out.resize(b + 1, field.elem(0));
            }
            out[b] += c * s0.pow(a as u64);
        }
        GFPoly::new(field, out)
    }

    /// Constraint matrix: vanishing at each point (and of both first
    /// partials when `double`), one row per condition.
    pub fn conditions(&self, field: PrimeField, points: &[(Fp, Fp)], double: bool) -> FpMatrix {
        let mut rows = Vec::new();
        for &pt in points {
            rows.push(self.value_row(pt));
            if double {
                rows.push(self.derivative_row(pt, 1, 0));
                rows.push(self.derivative_row(pt, 0, 1));
            }
        }
        FpMatrix::from_rows(field, self.len(), &rows)
    }

    /// Products of `coeffs` with every monomial of `other`.
    pub fn multiples(field: PrimeField, form: (&MonomialBasis, &[Fp]), other: &MonomialBasis, target: &MonomialBasis) -> Vec<Vec<Fp>> {
        (0..other.len())
            .map(|i| {
                let mut unit = vec![field.elem(0); other.len()];
                unit[i] = field.elem(1);
                MonomialBasis::multiply(field, form, (other, &unit), target)
            })
            .collect()
    }
}

pub fn dot(a: &[Fp], b: &[Fp]) -> Fp {
    let p = a.first().or(b.first()).map_or(3, |x| x.modulus());
    a.iter().zip(b).fold(Fp::zero(p), |acc, (x, y)| acc + *x * *y)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(MonomialBasis::new(Degree::Plane(7)).len(), 36);
        assert_eq!(MonomialBasis::new(Degree::Plane(-1)).len(), 0);
        assert_eq!(MonomialBasis::new(Degree::Bi(4, 4)).len(), 25);
        assert_eq!(MonomialBasis::new(Degree::Bi(-1, 0)).len(), 0);
        assert_eq!(Degree::Bi(2, 2).count(), 9);
    }

    #[test]
    fn derivatives_match_difference_of_products() {
        let f = PrimeField::new(10007).unwrap();
        let b = MonomialBasis::new(Degree::Plane(3));
        let coeffs: Vec<Fp> = (0..b.len()).map(|i| f.elem(i as i64 * 3 + 1)).collect();
        // d/ds of the restriction to u = const, compared with the derivative row
        let pt = (f.elem(5), f.elem(7));
        let ds = dot(&coeffs, &b.derivative_row(pt, 1, 0));
        let poly_s = GFPoly::new(
            f,
            (0..=3)
                .map(|a| {
                    (0..b.len())
                        .filter(|&i| b.affine_exponents(i).0 == a)
                        .fold(f.elem(0), |acc, i| acc + coeffs[i] * pt.1.pow(b.affine_exponents(i).1 as u64))
                })
                .collect(),
        );
        assert_eq!(poly_s.derivative().eval(pt.0), ds);
        assert_eq!(poly_s.eval(pt.0), b.eval(&coeffs, pt));
    }

    #[test]
    fn product_evaluates_to_product() {
        let f = PrimeField::new(10007).unwrap();
        let a = MonomialBasis::new(Degree::Bi(2, 1));
        let b = MonomialBasis::new(Degree::Bi(1, 3));
        let t = MonomialBasis::new(Degree::Bi(3, 4));
        let ca: Vec<Fp> = (0..a.len()).map(|i| f.elem(i as i64 + 2)).collect();
        let cb: Vec<Fp> = (0..b.len()).map(|i| f.elem(5 * i as i64 - 1)).collect();
        let prod = MonomialBasis::multiply(f, (&a, &ca), (&b, &cb), &t);
        let pt = (f.elem(11), f.elem(-4));
        assert_eq!(t.eval(&prod, pt), a.eval(&ca, pt) * b.eval(&cb, pt));
        let line = t.restrict_to_line(f, &prod, pt.0);
        assert_eq!(line.eval(pt.1), t.eval(&prod, pt));
    }
}

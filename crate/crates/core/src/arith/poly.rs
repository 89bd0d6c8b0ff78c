//! Dense univariate polynomials over GF(p).

use std::fmt;

use crate::arith::field::{Fp, PrimeField};
use crate::rng::SeededRng;

/// Seed for the equal-degree splitting in [`GFPoly::roots`].
const SPLIT_SEED: u64 = 0x005E_ED0F_5917;

/// Polynomial with coefficients in GF(p), lowest degree first. The zero
/// polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct GFPoly {
    field: PrimeField,
    coeffs: Vec<Fp>,
}

impl GFPoly {
    pub fn new(field: PrimeField, coeffs: Vec<Fp>) -> Self {
        let mut p = GFPoly { field, coeffs };
        p.trim();
        p
    }

    pub fn from_i64(field: PrimeField, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.elem(c)).collect())
    }

    pub fn zero(field: PrimeField) -> Self {
        GFPoly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(field: PrimeField, c: Fp) -> Self {
        Self::new(field, vec![c])
    }

    /// The monomial `c * x^n`.
    pub fn monomial(field: PrimeField, c: Fp, n: usize) -> Self {
        let mut coeffs = vec![field.elem(0); n + 1];
        coeffs[n] = c;
        Self::new(field, coeffs)
    }

    /// `x`.
    pub fn x(field: PrimeField) -> Self {
        Self::monomial(field, field.elem(1), 1)
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(field: PrimeField, roots: &[Fp]) -> Self {
        roots.iter().fold(Self::constant(field, field.elem(1)), |acc, &r| {
            acc.mul(&Self::new(field, vec![-r, field.elem(1)]))
        })
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn coeffs(&self) -> &[Fp] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> Fp {
        self.coeffs.get(i).copied().unwrap_or(Fp::zero(self.field.modulus()))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<Fp> {
        self.coeffs.last().copied()
    }

    /// Lowest exponent with a nonzero coefficient, `None` for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn eval(&self, x: Fp) -> Fp {
        self.coeffs
            .iter()
            .rev()
            .fold(Fp::zero(self.field.modulus()), |acc, &c| acc * x + c)
    }

    pub fn add(&self, other: &GFPoly) -> GFPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(self.field, (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &GFPoly) -> GFPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(self.field, (0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn scale(&self, c: Fp) -> GFPoly {
        Self::new(self.field, self.coeffs.iter().map(|&a| a * c).collect())
    }

    pub fn mul(&self, other: &GFPoly) -> GFPoly {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field);
        }
        let mut out = vec![self.field.elem(0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(self.field, out)
    }

    /// Quotient and remainder. Panics on division by zero.
    pub fn div_rem(&self, divisor: &GFPoly) -> (GFPoly, GFPoly) {
        let d = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = divisor.leading().unwrap().inverse().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (Self::zero(self.field), self.clone());
        }
        let mut quot = vec![self.field.elem(0); rem.len() - d];
        for i in (d..rem.len()).rev() {
            let c = rem[i] * lead_inv;
            if c.is_zero() {
                continue;
            }
            quot[i - d] = c;
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                rem[i - d + j] -= c * b;
            }
        }
        rem.truncate(d);
        (Self::new(self.field, quot), Self::new(self.field, rem))
    }

    pub fn rem(&self, divisor: &GFPoly) -> GFPoly {
        self.div_rem(divisor).1
    }

    /// Scaled to leading coefficient one; zero stays zero.
    pub fn monic(&self) -> GFPoly {
        match self.leading() {
            Some(l) => self.scale(l.inverse().unwrap()),
            None => self.clone(),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &GFPoly) -> GFPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> GFPoly {
        Self::new(
            self.field,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| c * self.field.elem(i as i64))
                .collect(),
        )
    }

    /// `self^e mod modulus` by repeated squaring.
    pub fn pow_mod(&self, mut e: u64, modulus: &GFPoly) -> GFPoly {
        let mut base = self.rem(modulus);
        let mut acc = Self::constant(self.field, self.field.elem(1)).rem(modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
            e >>= 1;
        }
        acc
    }

    /// Distinct roots in GF(p), sorted by residue.
    ///
    /// The split-field part `gcd(f, x^p - x)` is formed with `x^p` reduced
    /// modulo `f`, then separated by equal-degree splitting with random shifts.
    pub fn roots(&self) -> Vec<Fp> {
        assert!(!self.is_zero(), "roots of the zero polynomial");
        let f = self.monic();
        if f.degree() == Some(0) {
            return Vec::new();
        }
        let p = self.field.modulus() as u64;
        let x = Self::x(self.field);
        let xp = x.pow_mod(p, &f);
        let split = f.gcd(&xp.sub(&x));
        let mut rng = SeededRng::new(SPLIT_SEED);
        let mut out = Vec::new();
        split_linear(&split, &mut rng, &mut out);
        out.sort_by_key(|r| r.value());
        out
    }
}

/// Collects the roots of a monic squarefree product of distinct linear factors.
fn split_linear(f: &GFPoly, rng: &mut SeededRng, out: &mut Vec<Fp>) {
    let field = f.field();
    match f.degree() {
        None | Some(0) => {}
        Some(1) => out.push(-f.coeff(0)),
        Some(d) => {
            let half = (field.modulus() as u64 - 1) / 2;
            loop {
                let shift = GFPoly::new(field, vec![field.random(rng), field.elem(1)]);
                let h = shift.pow_mod(half, f).sub(&GFPoly::constant(field, field.elem(1)));
                let g = f.gcd(&h);
                let gd = g.degree().unwrap_or(0);
                if gd > 0 && gd < d {
                    let (q, _) = f.div_rem(&g);
                    split_linear(&g, rng, out);
                    split_linear(&q.monic(), rng, out);
                    return;
                }
            }
        }
    }
}

/// Roots of `f` in GF(p), each listed once.
pub fn poly_roots_gfp(f: &GFPoly) -> Vec<Fp> {
    f.roots()
}

impl fmt::Debug for GFPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("{c}*t"),
                _ => format!("{c}*t^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vals(v: &[Fp]) -> Vec<u32> {
        v.iter().map(|r| r.value()).collect()
    }

    #[test]
    fn root_examples() {
        let f7 = PrimeField::new(7).unwrap();
        assert_eq!(vals(&poly_roots_gfp(&GFPoly::from_i64(f7, &[-1, 0, 1]))), [1, 6]);
        assert!(poly_roots_gfp(&GFPoly::from_i64(f7, &[1, 0, 1])).is_empty());
        let f = PrimeField::default_prime();
        let cubic = GFPoly::from_roots(f, &[f.elem(2), f.elem(3), f.elem(5)]);
        assert_eq!(vals(&poly_roots_gfp(&cubic)), [2, 3, 5]);
    }

    #[test]
    fn repeated_and_zero_roots_listed_once() {
        let f = PrimeField::default_prime();
        let g = GFPoly::from_roots(f, &[f.elem(0), f.elem(0), f.elem(9), f.elem(9), f.elem(-4)]);
        assert_eq!(vals(&g.roots()), [0, 9, 31987]);
        // constant polynomials have no roots
        assert!(GFPoly::from_i64(f, &[5]).roots().is_empty());
    }

    #[test]
    fn division_identity() {
        let f = PrimeField::new(101).unwrap();
        let a = GFPoly::from_i64(f, &[3, 0, 7, 1, 9, 4]);
        let b = GFPoly::from_i64(f, &[5, 1, 2]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn gcd_with_field_polynomial_counts_roots() {
        let f = PrimeField::new(10007).unwrap();
        let mut rng = SeededRng::new(3);
        for _ in 0..20 {
            let coeffs: Vec<Fp> = (0..8).map(|_| f.random(&mut rng)).collect();
            let poly = GFPoly::new(f, coeffs);
            if poly.degree().unwrap_or(0) == 0 || !poly.gcd(&poly.derivative()).degree().is_some_and(|d| d == 0) {
                continue;
            }
            let roots = poly.roots();
            for r in &roots {
                assert!(poly.eval(*r).is_zero());
            }
            let x = GFPoly::x(f);
            let split = poly.gcd(&x.pow_mod(10007, &poly).sub(&x));
            assert_eq!(roots.len(), split.degree().unwrap());
        }
    }
}

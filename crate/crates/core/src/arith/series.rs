//! Truncated power series in one indeterminate `t`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::binom::big_binom;
use crate::error::{Error, Result};

/// Coefficients of `t^0 ..= t^order`; everything past `order` is unknown.
#[derive(Clone, PartialEq, Eq)]
pub struct Series<T> {
    coeffs: Vec<T>,
}

impl<T> Series<T>
where
    T: Clone + Zero + One + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Neg<Output = T>,
{
    pub fn zero(order: usize) -> Self {
        Series {
            coeffs: vec![T::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(T::one(), order)
    }

    pub fn constant(c: T, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// `c * t^n`, which is zero when `n > order`.
    pub fn monomial(c: T, n: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if n <= order {
            s.coeffs[n] = c;
        }
        s
    }

    /// Series of a polynomial, lowest coefficient first.
    pub fn from_poly(coeffs: &[T], order: usize) -> Self {
        let mut s = Self::zero(order);
        for (i, c) in coeffs.iter().enumerate().take(order + 1) {
            s.coeffs[i] = c.clone();
        }
        s
    }

    /// Series with `coeff(i) = f(i)`.
    pub fn from_fn(order: usize, f: impl Fn(usize) -> T) -> Self {
        Series {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Exact coefficient of `t^k`.
    pub fn coeff(&self, k: usize) -> Result<T> {
        self.coeffs.get(k).cloned().ok_or(Error::OrderOutOfRange {
            requested: k,
            order: self.order(),
        })
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order());
        Series {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    /// Multiplication by `t^n`.
    pub fn shift(&self, n: usize) -> Self {
        let mut s = Self::zero(self.order());
        for i in n..=self.order() {
            s.coeffs[i] = self.coeffs[i - n].clone();
        }
        s
    }

    pub fn scale(&self, c: &T) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(|a| c.clone() * a.clone()).collect(),
        }
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Series<U> {
        Series {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.order()), |acc, _| &acc * self)
    }
}

impl<T> Series<T>
where
    T: Clone + num_traits::Num + Neg<Output = T>,
{
    /// Multiplicative inverse; the constant term must be invertible in `T`.
    pub fn recip(&self) -> Option<Self> {
        let c0 = self.coeffs[0].clone();
        if c0.is_zero() {
            return None;
        }
        let inv0 = T::one() / c0;
        let n = self.order();
        let mut out = vec![T::zero(); n + 1];
        out[0] = inv0.clone();
        for k in 1..=n {
            let mut acc = T::zero();
            for i in 1..=k {
                acc = acc + self.coeffs[i].clone() * out[k - i].clone();
            }
            out[k] = T::zero() - acc * inv0.clone();
        }
        Some(Series { coeffs: out })
    }
}

impl Series<BigInt> {
    /// `(1 + t)^e` for any integer exponent.
    pub fn one_plus_t_pow(e: i64, order: usize) -> Self {
        Series::from_fn(order, |i| binom_general(e, i))
    }
}

impl Series<BigRational> {
    pub fn one_plus_t_pow(e: i64, order: usize) -> Self {
        Series::<BigInt>::one_plus_t_pow(e, order).map(|c| BigRational::from_integer(c.clone()))
    }

    pub fn from_ints(coeffs: &[i64], order: usize) -> Self {
        let v: Vec<BigRational> = coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect();
        Series::from_poly(&v, order)
    }
}

/// Generalized binomial `C(e, i)` for integer `e`, `i >= 0`.
fn binom_general(e: i64, i: usize) -> BigInt {
    if e >= 0 {
        big_binom(e, i as i64)
    } else {
        // C(-m, i) = (-1)^i C(m + i - 1, i)
        let m = -e;
        let b = big_binom(m + i as i64 - 1, i as i64);
        if i.is_multiple_of(2) {
            b
        } else {
            -b
        }
    }
}

/// Expansion of `num(t) / prod (1 + t)^e` through `t^order`.
pub fn series_expand(num: &[i64], den_powers: &[u32], order: usize) -> Series<BigRational> {
    let total: i64 = den_powers.iter().map(|&e| e as i64).sum();
    &Series::<BigRational>::from_ints(num, order) * &Series::<BigRational>::one_plus_t_pow(-total, order)
}

/// Coefficient of `t^k`.
pub fn series_coeff<T>(s: &Series<T>, k: usize) -> Result<T>
where
    T: Clone + Zero + One + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Neg<Output = T>,
{
    s.coeff(k)
}

impl<T> Add for &Series<T>
where
    T: Clone + Zero + One + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Neg<Output = T>,
{
    type Output = Series<T>;
    fn add(self, rhs: &Series<T>) -> Series<T> {
        let n = self.order().min(rhs.order());
        Series::from_fn(n, |i| self.coeffs[i].clone() + rhs.coeffs[i].clone())
    }
}

impl<T> Sub for &Series<T>
where
    T: Clone + Zero + One + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Neg<Output = T>,
{
    type Output = Series<T>;
    fn sub(self, rhs: &Series<T>) -> Series<T> {
        let n = self.order().min(rhs.order());
        Series::from_fn(n, |i| self.coeffs[i].clone() - rhs.coeffs[i].clone())
    }
}

impl<T> Mul for &Series<T>
where
    T: Clone + Zero + One + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Neg<Output = T>,
{
    type Output = Series<T>;
    fn mul(self, rhs: &Series<T>) -> Series<T> {
        let n = self.order().min(rhs.order());
        let mut out = vec![T::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n + 1 - i) {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Series { coeffs: out }
    }
}

impl<T> Neg for &Series<T>
where
    T: Clone + Zero + One + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Neg<Output = T>,
{
    type Output = Series<T>;
    fn neg(self) -> Series<T> {
        Series {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

impl<T: fmt::Display + Zero> fmt::Debug for Series<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({c})t^{i}"))
            .collect();
        if terms.is_empty() {
            write!(f, "0 + O(t^{})", self.coeffs.len())
        } else {
            write!(f, "{} + O(t^{})", terms.join(" + "), self.coeffs.len())
        }
    }
}

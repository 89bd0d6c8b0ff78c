//! Scalar fields.
//!
//! Linear algebra is written against the [`Field`] trait, which carries the
//! field as a runtime context value. Prime fields need this because the modulus
//! is chosen at run time; the rationals implement it through `num-traits`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_rational::BigRational;
use num_traits::{Inv, One, Pow, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Prime used when none is given.
pub const DEFAULT_PRIME: u32 = 31991;

/// A field, as a context object producing and combining elements.
pub trait Field: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` exactly when `a` is zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, n: i64) -> Self::Elem;

    /// `a - f * b`, the elimination update.
    #[inline]
    fn sub_mul(&self, a: &Self::Elem, f: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.sub(a, &self.mul(f, b))
    }
}

/// An element of GF(p), stored as its canonical residue together with `p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fp {
    value: u32,
    modulus: u32,
}

impl Fp {
    /// Reduces any signed integer into `[0, p)`.
    #[inline]
    pub fn new(value: i64, modulus: u32) -> Self {
        let m = modulus as i64;
        Fp {
            value: value.rem_euclid(m) as u32,
            modulus,
        }
    }

    #[inline]
    pub fn from_u64(value: u64, modulus: u32) -> Self {
        Fp {
            value: (value % modulus as u64) as u32,
            modulus,
        }
    }

    #[inline]
    pub fn zero(modulus: u32) -> Self {
        Fp { value: 0, modulus }
    }

    #[inline]
    pub fn one(modulus: u32) -> Self {
        Fp { value: 1, modulus }
    }

    #[inline]
    pub fn value(self) -> u32 {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> u32 {
        self.modulus
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    /// Centered representative in `(-p/2, p/2]`.
    pub fn centered(self) -> i64 {
        let v = self.value as i64;
        if 2 * v > self.modulus as i64 {
            v - self.modulus as i64
        } else {
            v
        }
    }

    pub fn pow(self, mut e: u64) -> Self {
        let m = self.modulus as u64;
        let mut base = self.value as u64;
        let mut acc = 1u64 % m;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            e >>= 1;
        }
        Fp {
            value: acc as u32,
            modulus: self.modulus,
        }
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    pub fn inverse(self) -> Result<Self> {
        if self.value == 0 {
            return Err(Error::ZeroInverse);
        }
        let (mut r0, mut r1) = (self.modulus as i64, self.value as i64);
        let (mut s0, mut s1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        debug_assert_eq!(r0, 1);
        Ok(Fp::new(s0, self.modulus))
    }
}

/// Inverse of a nonzero residue; `ZeroInverse` otherwise.
pub fn field_inverse(a: Fp) -> Result<Fp> {
    a.inverse()
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Fp {
    type Output = Fp;
    #[inline]
    fn add(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let s = self.value as u64 + rhs.value as u64;
        let m = self.modulus as u64;
        Fp {
            value: if s >= m { s - m } else { s } as u32,
            modulus: self.modulus,
        }
    }
}

impl Sub for Fp {
    type Output = Fp;
    #[inline]
    fn sub(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let v = if self.value >= rhs.value {
            self.value - rhs.value
        } else {
            self.value + (self.modulus - rhs.value)
        };
        Fp {
            value: v,
            modulus: self.modulus,
        }
    }
}

impl Mul for Fp {
    type Output = Fp;
    #[inline]
    fn mul(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.modulus, rhs.modulus);
        Fp {
            value: ((self.value as u64 * rhs.value as u64) % self.modulus as u64) as u32,
            modulus: self.modulus,
        }
    }
}

impl Neg for Fp {
    type Output = Fp;
    #[inline]
    fn neg(self) -> Fp {
        Fp {
            value: if self.value == 0 {
                0
            } else {
                self.modulus - self.value
            },
            modulus: self.modulus,
        }
    }
}

impl AddAssign for Fp {
    #[inline]
    fn add_assign(&mut self, rhs: Fp) {
        *self = *self + rhs;
    }
}

impl SubAssign for Fp {
    #[inline]
    fn sub_assign(&mut self, rhs: Fp) {
        *self = *self - rhs;
    }
}

impl MulAssign for Fp {
    #[inline]
    fn mul_assign(&mut self, rhs: Fp) {
        *self = *self * rhs;
    }
}

impl Pow<u64> for Fp {
    type Output = Fp;
    fn pow(self, e: u64) -> Fp {
        Fp::pow(self, e)
    }
}

impl Inv for Fp {
    type Output = Fp;
    /// Panics on zero; use [`Fp::inverse`] for the checked form.
    fn inv(self) -> Fp {
        self.inverse().expect("inverse of zero in GF(p)")
    }
}

/// The prime field GF(p).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    /// Accepts odd primes below 2^31.
    pub fn new(p: u64) -> Result<Self> {
        if !(3..1 << 31).contains(&p) || !is_prime(p) {
            return Err(Error::BadModulus(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    pub fn default_prime() -> Self {
        PrimeField { p: DEFAULT_PRIME }
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn elem(&self, v: i64) -> Fp {
        Fp::new(v, self.p)
    }

    /// Uniform element drawn from `rng`.
    pub fn random<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Fp {
        Fp {
            value: rng.gen_range(0..self.p),
            modulus: self.p,
        }
    }

    pub fn random_nonzero<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Fp {
        Fp {
            value: rng.gen_range(1..self.p),
            modulus: self.p,
        }
    }
}

impl Field for PrimeField {
    type Elem = Fp;

    #[inline]
    fn zero(&self) -> Fp {
        Fp::zero(self.p)
    }
    #[inline]
    fn one(&self) -> Fp {
        Fp::one(self.p)
    }
    #[inline]
    fn is_zero(&self, a: &Fp) -> bool {
        a.value == 0
    }
    #[inline]
    fn add(&self, a: &Fp, b: &Fp) -> Fp {
        *a + *b
    }
    #[inline]
    fn sub(&self, a: &Fp, b: &Fp) -> Fp {
        *a - *b
    }
    #[inline]
    fn mul(&self, a: &Fp, b: &Fp) -> Fp {
        *a * *b
    }
    #[inline]
    fn neg(&self, a: &Fp) -> Fp {
        -*a
    }
    #[inline]
    fn inv(&self, a: &Fp) -> Option<Fp> {
        a.inverse().ok()
    }
    #[inline]
    fn from_i64(&self, n: i64) -> Fp {
        Fp::new(n, self.p)
    }
    #[inline]
    fn sub_mul(&self, a: &Fp, f: &Fp, b: &Fp) -> Fp {
        // one reduction instead of two
        let m = self.p as u64;
        let prod = (f.value as u64 * b.value as u64) % m;
        let v = (a.value as u64 + m - prod) % m;
        Fp {
            value: v as u32,
            modulus: self.p,
        }
    }
}

/// The rational numbers, via `num-rational`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.clone().inv())
        }
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }
}

/// Deterministic trial division; moduli are below 2^31.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

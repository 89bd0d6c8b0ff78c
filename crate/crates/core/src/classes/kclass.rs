use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::Series;

/// A K-theory class over the moduli space, remembered only through its rank
/// and its first Chern class, both as truncated series in `t`. First Chern
/// classes are rational multiples of `λ`, stored as the multiplier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KClassSeries {
    rank: Series<BigInt>,
    c1: Series<BigRational>,
}

impl KClassSeries {
    pub fn new(rank: Series<BigInt>, c1: Series<BigRational>) -> Self {
        assert_eq!(rank.order(), c1.order(), "rank and c1 truncated differently");
        KClassSeries { rank, c1 }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Series::zero(order), Series::zero(order))
    }

    pub fn one(order: usize) -> Self {
        Self::new(Series::one(order), Series::zero(order))
    }

    /// Class of rank `rank` with `c1 = c1 * λ`, constant in `t`.
    pub fn constant(rank: i64, c1: BigRational, order: usize) -> Self {
        Self::new(Series::constant(BigInt::from(rank), order), Series::constant(c1, order))
    }

    pub fn order(&self) -> usize {
        self.rank.order()
    }

    pub fn rank(&self) -> &Series<BigInt> {
        &self.rank
    }

    pub fn c1(&self) -> &Series<BigRational> {
        &self.c1
    }

    /// Multiplication by `c * t^n`.
    pub fn shifted(&self, n: usize, c: i64) -> Self {
        let r = self.rank.shift(n).scale(&BigInt::from(c));
        let q = self.c1.shift(n).scale(&BigRational::from_integer(BigInt::from(c)));
        Self::new(r, q)
    }

    /// Product in the K-group: ranks multiply, first Chern classes obey
    /// `c1(AB) = rank(A) c1(B) + rank(B) c1(A)`.
    pub fn mul(&self, other: &Self) -> Self {
        let c1 = &int_times_rational(&self.rank, &other.c1) + &int_times_rational(&other.rank, &self.c1);
        Self::new(&self.rank * &other.rank, c1)
    }

    pub fn is_zero(&self) -> bool {
        self.rank.coeffs().iter().all(Zero::is_zero) && self.c1.coeffs().iter().all(Zero::is_zero)
    }
}

/// Product with the denominators of `b` cleared first, so the convolution
/// runs over integers.
fn int_times_rational(a: &Series<BigInt>, b: &Series<BigRational>) -> Series<BigRational> {
    let den = b.coeffs().iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let scaled = b.map(|x| (x * BigRational::from_integer(den.clone())).to_integer());
    (a * &scaled).map(|x| BigRational::new(x.clone(), den.clone()))
}

impl Add for &KClassSeries {
    type Output = KClassSeries;
    fn add(self, o: &KClassSeries) -> KClassSeries {
        KClassSeries::new(&self.rank + &o.rank, &self.c1 + &o.c1)
    }
}

impl Sub for &KClassSeries {
    type Output = KClassSeries;
    fn sub(self, o: &KClassSeries) -> KClassSeries {
        KClassSeries::new(&self.rank - &o.rank, &self.c1 - &o.c1)
    }
}

impl Neg for &KClassSeries {
    type Output = KClassSeries;
    fn neg(self) -> KClassSeries {
        KClassSeries::new(-&self.rank, -&self.c1)
    }
}

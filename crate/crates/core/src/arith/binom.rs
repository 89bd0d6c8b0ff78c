//! Exact binomial coefficients and factorials.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `C(n, r)`, zero when `r < 0`, `n < 0` or `r > n`.
pub fn big_binom(n: i64, r: i64) -> BigInt {
    if n < 0 || r < 0 || r > n {
        return BigInt::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigInt::one();
    for i in 0..r {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(big_binom(4, 2), BigInt::from(6));
        assert_eq!(big_binom(9, 4), BigInt::from(126));
        assert_eq!(big_binom(9, 5), BigInt::from(126));
        assert_eq!(big_binom(2, -1), BigInt::zero());
        assert_eq!(big_binom(2, 3), BigInt::zero());
        assert_eq!(big_binom(0, 0), BigInt::one());
    }

    #[test]
    fn pascal_through_300() {
        for n in 1..=300i64 {
            for r in 0..=n {
                assert_eq!(big_binom(n, r), big_binom(n - 1, r - 1) + big_binom(n - 1, r), "C({n},{r})");
            }
        }
    }

    #[test]
    fn factorial_ratio() {
        for n in 0..40u64 {
            for r in 0..=n {
                assert_eq!(big_binom(n as i64, r as i64) * factorial(r) * factorial(n - r), factorial(n));
            }
        }
    }
}

//! The class of the odd-genus syzygy divisor as a multiple of `λ`, computed
//! four ways, against the class of the k-gonal locus.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::arith::{big_binom, factorial, Series};
use crate::classes::kclass::KClassSeries;
use crate::error::{Error, Result};

/// `c1` of the pushforward of `O(n)` from the universal curve, in units of
/// `λ`: `6n^2 - 6n + 1`.
pub fn mumford_coeff(n: i64) -> i64 {
    6 * n * n - 6 * n + 1
}

/// Convention for the first Chern classes of the curve pushforwards.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Reading {
    /// `6n^2 - 6n + 1` for every `n`.
    Standard,
    /// `1 - 6n + n^2`, the quadratic term without its factor 6.
    MissingSix,
    /// Coefficient `1 + 6j + 6j^2` at `t^j`.
    PlusSixJ,
    /// `-λ` at `j = 0, 1`, i.e. the classes `E* - 1` and `1 - E`.
    DualSlots,
}

impl Reading {
    pub const ALL: [Reading; 4] = [Reading::Standard, Reading::MissingSix, Reading::PlusSixJ, Reading::DualSlots];

    /// `c1` of the pushforward of `O(1 - j)` in units of `λ`.
    fn c1_curve(self, j: i64) -> i64 {
        let n = 1 - j;
        match self {
            Reading::Standard => mumford_coeff(n),
            Reading::MissingSix => 1 - 6 * n + n * n,
            Reading::PlusSixJ => 1 + 6 * j + 6 * j * j,
            Reading::DualSlots if j <= 1 => -mumford_coeff(n),
            Reading::DualSlots => mumford_coeff(n),
        }
    }
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// `λ_t(E*)`: rank `(1+t)^g`, `c1 = -t (1+t)^(g-1) λ`.
pub fn lambda_t_dual_hodge(g: i64, order: usize) -> KClassSeries {
    let c1 = -&Series::<BigRational>::one_plus_t_pow(g - 1, order).shift(1);
    KClassSeries::new(Series::<BigInt>::one_plus_t_pow(g, order), c1)
}

/// `Σ_j (-1)^j t^j (p_! O_P(1-j) - p_! O_C(1-j))` through `t^order`.
/// The projective-bundle terms vanish for `2 <= j <= g`; the caller keeps
/// `order < g` so later terms never enter.
pub fn pushforward_difference(g: i64, order: usize, reading: Reading) -> KClassSeries {
    let sign = |j: i64| if j % 2 == 0 { 1 } else { -1 };
    let rank = Series::from_fn(order, |j| {
        let j = j as i64;
        let projective = match j {
            0 => g,
            1 => 1,
            _ => 0,
        };
        BigInt::from(sign(j) * (projective - (g - 1) * (1 - 2 * j)))
    });
    let c1 = Series::from_fn(order, |j| {
        let j = j as i64;
        let projective = i64::from(j == 0);
        q(sign(j) * (projective - reading.c1_curve(j)))
    });
    KClassSeries::new(rank, c1)
}

/// `c1(x)` in units of `λ`, where `x = λ_t(E*) · (pushforward difference)`.
pub fn c1_of_x(g: i64, order: usize, reading: Reading) -> Series<BigRational> {
    lambda_t_dual_hodge(g, order)
        .mul(&pushforward_difference(g, order, reading))
        .c1()
        .clone()
}

fn check_k(k: i64) -> Result<()> {
    if k < 3 {
        return Err(Error::Usage(format!("k must be at least 3, got {k}")));
    }
    Ok(())
}

/// `N = -[t^k] c1(x)` assembled from the pushforward classes, with
/// truncation `order`, which must satisfy `k <= order < g`.
pub fn assemble_n_with(k: i64, order: usize, reading: Reading) -> Result<BigInt> {
    check_k(k)?;
    let g = 2 * k - 1;
    if (order as i64) < k {
        return Err(Error::TruncationTooSmall { order, needed: k as usize });
    }
    assert!((order as i64) < g, "truncation must stay below the genus");
    let c = c1_of_x(g, order, reading).coeff(k as usize)?;
    integral(-c, "first-principles N")
}

pub fn assemble_n_first_principles(k: i64) -> Result<BigInt> {
    assemble_n_with(k, (k + 1) as usize, Reading::Standard)
}

fn integral(x: BigRational, what: &str) -> Result<BigInt> {
    if x.is_integer() {
        Ok(x.to_integer())
    } else {
        Err(Error::NonIntegerResult(format!("{what} = {x}")))
    }
}

/// `[t^k] t^2 (1+t)^(2k-4) (-t^2 + (2k-4) t - (2k-13))`.
pub fn n_bracket(k: i64) -> Result<BigInt> {
    check_k(k)?;
    let order = k as usize;
    let poly = Series::from_poly(&[0, 0, -(2 * k - 13), 2 * k - 4, -1].map(BigInt::from), order);
    (&poly * &Series::<BigInt>::one_plus_t_pow(2 * k - 4, order)).coeff(order)
}

pub fn n_binomial(k: i64) -> Result<BigInt> {
    check_k(k)?;
    let m = 2 * k - 4;
    Ok(-big_binom(m, k - 4) + BigInt::from(m) * big_binom(m, k - 3) - BigInt::from(2 * k - 13) * big_binom(m, k - 2))
}

fn exact_quotient(num: BigInt, den: BigInt, what: &str) -> Result<BigInt> {
    let (quo, rem) = num.div_rem(&den);
    if !rem.is_zero() {
        return Err(Error::NonIntegerResult(format!("{what}: {num}/{den}")));
    }
    Ok(quo)
}

/// `6(k+1)(k-1) (2k-4)! / ((k-2)! k!)`.
pub fn n_closed(k: i64) -> Result<BigInt> {
    check_k(k)?;
    let num = BigInt::from(6 * (k + 1) * (k - 1)) * factorial((2 * k - 4) as u64);
    exact_quotient(num, factorial((k - 2) as u64) * factorial(k as u64), "closed form")
}

/// Class of the k-gonal locus: `6(k+1) (2k-4)! / ((k-2)! k!)`.
pub fn hm_class(k: i64) -> Result<BigInt> {
    check_k(k)?;
    let num = BigInt::from(6 * (k + 1)) * factorial((2 * k - 4) as u64);
    exact_quotient(num, factorial((k - 2) as u64) * factorial(k as u64), "gonal class")
}

/// Outcome of the two displayed simplifications at one genus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesIdentities {
    pub g: i64,
    pub order: usize,
    pub id1_ok: bool,
    /// Second chain with `+2(g-1)` in the inner bracket.
    pub id2_ok: bool,
    /// Second chain with `-2(g-1)`.
    pub id2_minus_ok: bool,
    /// First chain with coefficients `1 + 6i + 6i^2`.
    pub id1_plus_ok: bool,
    /// `c1(x) = t^2 (1+t)^(g-3) (t^2 + (3-g) t + (g-12))`.
    pub combined_ok: bool,
    pub sign_note: String,
}

fn poly(c: &[i64], order: usize) -> Series<BigInt> {
    Series::from_poly(&c.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>(), order)
}

fn first_bracket(g: i64, order: usize, coeff: impl Fn(i64) -> i64) -> Series<BigInt> {
    let sum = Series::from_fn(order, |i| {
        let i = i as i64;
        BigInt::from(if i % 2 == 0 { coeff(i) } else { -coeff(i) })
    });
    &Series::<BigInt>::one_plus_t_pow(g, order) * &(&Series::one(order) - &sum)
}

/// Compares both chains through `t^order`. Needs `order < g`, since the
/// pushforward series is only valid below the genus.
pub fn check_series_identities(g: i64, order: usize) -> SeriesIdentities {
    assert!((order as i64) < g, "truncation must stay below the genus");
    let pw = |e: i64| Series::<BigInt>::one_plus_t_pow(e, order);

    let rhs1 = (&pw(g - 3) * &poly(&[1, -10, 1], order)).shift(1);
    let id1_ok = first_bracket(g, order, |i| 1 - 6 * i + 6 * i * i) == rhs1;
    let id1_plus_ok = first_bracket(g, order, |i| 1 + 6 * i + 6 * i * i) == rhs1;

    let alt = Series::from_fn(order, |i| {
        let i = i as i64;
        BigInt::from(if i % 2 == 0 { 1 - 2 * i } else { 2 * i - 1 })
    });
    let start = (&pw(g - 1) * &(&poly(&[g, -1], order) - &alt.scale(&BigInt::from(g - 1)))).shift(1);
    let inner = |last: i64| {
        let a = &pw(2) * &poly(&[g, -1], order);
        let b = poly(&[3 * (g - 1), 3 * (g - 1)], order);
        &(&a - &b) + &poly(&[last], order)
    };
    let printed = (&pw(g - 3) * &poly(&[1, 2 - g, g - 2, -1], order)).shift(1);
    let corrected = (&pw(g - 3) * &inner(2 * (g - 1))).shift(1);
    let as_printed = (&pw(g - 3) * &inner(-2 * (g - 1))).shift(1);
    let id2_ok = start == corrected && corrected == printed;
    let id2_minus_ok = start == as_printed && as_printed == printed;

    let combined = (&pw(g - 3) * &poly(&[g - 12, 3 - g, 1], order)).shift(2);
    let x = c1_of_x(g, order, Reading::Standard);
    let combined_ok = x == combined.map(|c| BigRational::from_integer(c.clone())) && (&rhs1 - &printed) == combined;

    let sign_note = if id2_ok && !id2_minus_ok {
        "second chain holds with +2(g-1) in the inner bracket; -2(g-1) fails".into()
    } else {
        format!("second chain: +2(g-1) {id2_ok}, -2(g-1) {id2_minus_ok}")
    };
    SeriesIdentities {
        g,
        order,
        id1_ok,
        id2_ok,
        id2_minus_ok,
        id1_plus_ok,
        combined_ok,
        sign_note,
    }
}

/// `C(g,l) g - C(g,l-1)`, `C(g-1,l)(2l+g-1)`, `C(2k-2,k)(4k-2)` and
/// `C(2k-1,k-1)(2k-2)` at `g = 2k-1`, `l = k`.
pub fn rank_expressions(k: i64) -> [BigInt; 4] {
    let (g, l) = (2 * k - 1, k);
    [
        big_binom(g, l) * g - big_binom(g, l - 1),
        big_binom(g - 1, l) * (2 * l + g - 1),
        big_binom(2 * k - 2, k) * (4 * k - 2),
        big_binom(2 * k - 1, k - 1) * (2 * k - 2),
    ]
}

pub fn rank_identity(k: i64) -> bool {
    let r = rank_expressions(k);
    r.iter().all(|x| *x == r[0])
}

fn as_string<S: Serializer, T: std::fmt::Display>(x: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// `N` under one pushforward convention, and whether it agrees with the
/// closed form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VariantNote {
    pub reading: Reading,
    #[serde(serialize_with = "as_string")]
    pub n: BigInt,
    pub consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassResult {
    pub k: i64,
    pub g: i64,
    #[serde(serialize_with = "as_string")]
    pub n_series: BigInt,
    #[serde(serialize_with = "as_string")]
    pub n_bracket: BigInt,
    #[serde(serialize_with = "as_string")]
    pub n_binomial: BigInt,
    #[serde(serialize_with = "as_string")]
    pub n_closed: BigInt,
    #[serde(serialize_with = "as_string")]
    pub hm: BigInt,
    #[serde(serialize_with = "as_string")]
    pub ratio: BigRational,
    pub ratio_ok: bool,
    pub id1_ok: bool,
    pub id2_ok: bool,
    pub rank_ok: bool,
    #[serde(serialize_with = "as_string")]
    pub rank: BigInt,
    pub sign_note: String,
    pub notes: Vec<VariantNote>,
}

impl ClassResult {
    pub fn ok(&self) -> bool {
        self.n_series == self.n_closed
            && self.n_bracket == self.n_closed
            && self.n_binomial == self.n_closed
            && self.ratio_ok
            && self.id1_ok
            && self.id2_ok
            && self.rank_ok
    }
}

/// All checks at one `k`.
pub fn verify_class(k: i64) -> Result<ClassResult> {
    check_k(k)?;
    let g = 2 * k - 1;
    let n_closed = n_closed(k)?;
    let hm = hm_class(k)?;
    let ratio = BigRational::new(n_closed.clone(), hm.clone());
    let order = (k + 1) as usize;
    let notes = Reading::ALL[1..]
        .iter()
        .map(|&r| {
            let n = assemble_n_with(k, order, r)?;
            Ok(VariantNote {
                reading: r,
                consistent: n == n_closed,
                n,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let ids = check_series_identities(g, order);
    Ok(ClassResult {
        k,
        g,
        n_series: assemble_n_first_principles(k)?,
        n_bracket: n_bracket(k)?,
        n_binomial: n_binomial(k)?,
        ratio_ok: ratio == BigRational::from_integer((k - 1).into()),
        ratio,
        n_closed,
        hm,
        id1_ok: ids.id1_ok,
        id2_ok: ids.id2_ok && ids.combined_ok,
        rank_ok: rank_identity(k),
        rank: rank_expressions(k)[0].clone(),
        sign_note: ids.sign_note,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mumford_examples() {
        assert_eq!(mumford_coeff(1), 1);
        assert_eq!(mumford_coeff(-1), 13);
        assert_eq!(mumford_coeff(0), 1);
    }

    #[test]
    fn n_examples() {
        for (k, n) in [(3, 16), (4, 45), (5, 144)] {
            assert_eq!(n_closed(k).unwrap(), BigInt::from(n));
            assert_eq!(n_bracket(k).unwrap(), BigInt::from(n));
            assert_eq!(n_binomial(k).unwrap(), BigInt::from(n));
            assert_eq!(assemble_n_first_principles(k).unwrap(), BigInt::from(n));
        }
        assert_eq!(hm_class(3).unwrap(), BigInt::from(8));
        assert_eq!(hm_class(4).unwrap(), BigInt::from(15));
    }

    #[test]
    fn hand_expansion_k4() {
        // t^2 (1+t)^4 (-t^2 + 4t + 5): coefficient of t^4 is -1 + 4*4 + 5*6
        assert_eq!(n_bracket(4).unwrap(), BigInt::from(-1 + 16 + 30));
    }

    #[test]
    fn truncation_guard() {
        assert!(matches!(
            assemble_n_with(5, 4, Reading::Standard),
            Err(Error::TruncationTooSmall { order: 4, needed: 5 })
        ));
    }

    #[test]
    fn identities_and_sign_note() {
        let a = check_series_identities(5, 4);
        assert!(a.id1_ok && a.combined_ok && a.id2_ok);
        assert!(!a.id1_plus_ok);
        assert!(!a.id2_minus_ok);
        let b = check_series_identities(7, 6);
        assert!(b.id2_ok && !b.id2_minus_ok);
        assert!(b.sign_note.contains("+2(g-1)"));
    }

    #[test]
    fn rank_examples() {
        assert!(rank_expressions(3).iter().all(|x| *x == BigInt::from(40)));
        assert!(rank_expressions(4).iter().all(|x| *x == BigInt::from(210)));
    }

    #[test]
    fn variant_readings() {
        let r = verify_class(4).unwrap();
        assert!(r.ok());
        let get = |x: Reading| r.notes.iter().find(|n| n.reading == x).unwrap();
        assert!(!get(Reading::MissingSix).consistent);
        assert!(!get(Reading::PlusSixJ).consistent);
        // the sign flip at j = 0, 1 adds 2 (C(g,k) - C(g,k-1)), zero at g = 2k - 1
        assert!(get(Reading::DualSlots).consistent);
    }
}

//! Exact rational arithmetic helpers.
//!
//! Every coefficient in the engine is a [`Rational`]; there is no floating
//! point anywhere. Text form is `p/q` in lowest terms with the sign on the
//! numerator, or plain `p` when the denominator is one.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

pub type Rational = num_rational::BigRational;

/// `n / d` as an exact rational. Panics when `d == 0`.
pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn from_u128(n: u128) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// `(-1)^k` as a rational.
pub fn sign(k: usize) -> Rational {
    if k % 2 == 0 {
        one()
    } else {
        -one()
    }
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

pub fn is_integer(x: &Rational) -> bool {
    x.denom().is_one()
}

pub fn is_nonnegative_integer(x: &Rational) -> bool {
    is_integer(x) && !x.is_negative()
}

/// Formats as `p/q`, or `p` for integers.
pub fn format(x: &Rational) -> String {
    x.to_string()
}

/// Parses `p`, `-p`, `p/q` (any sign placement, reduced on the way in).
pub fn parse(s: &str) -> Result<Rational, Error> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: `{s}`"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    let g = num.gcd(&den);
    let (mut num, mut den) = (num / &g, den / g);
    if den.is_negative() {
        num = -num;
        den = -den;
    }
    Ok(Rational::new_raw(num, den))
}

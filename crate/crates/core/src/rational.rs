//! Exact rational scalars.
//!
//! `BigRational` keeps values in lowest terms with a positive denominator,
//! so equality is structural and zero is always `0/1`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p/q"` or `"p"`. Decimal points and exponents are rejected.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::InvalidInput(format!("not an exact rational: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::InvalidInput(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

/// Canonical string form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Scales a rational vector to coprime integers whose first nonzero entry is positive.
pub fn primitive_integer_vector(v: &[Rational]) -> Vec<Rational> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if content.is_zero() {
        return v.to_vec();
    }
    let negate = ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    for x in ints.iter_mut() {
        *x = &*x / &content;
        if negate {
            *x = -&*x;
        }
    }
    ints.into_iter().map(Rational::from_integer).collect()
}

/// Scales a nonzero vector so its first nonzero entry is 1.
pub fn normalize_projective(v: &[Rational]) -> Option<Vec<Rational>> {
    let pivot = v.iter().find(|x| !x.is_zero())?.clone();
    Some(v.iter().map(|x| x / &pivot).collect())
}

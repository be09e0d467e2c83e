//! Exact rational scalars and small integer helpers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn big(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// Parses `"n"` or `"n/d"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// `"num/den"`, or just `"num"` for integers.
pub fn fmt_rational(r: &Rational) -> String {
    r.to_string()
}

/// Comma-separated values, for report entries.
pub fn fmt_list(values: &[Rational]) -> String {
    values.iter().map(fmt_rational).collect::<Vec<_>>().join(", ")
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| if r.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY })
}

/// n(n-1)...(n-k+1), zero when k > n.
pub fn falling_factorial(n: i64, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k as i64 {
        acc *= BigInt::from(n - i);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn pow2(e: i64) -> Rational {
    if e >= 0 {
        big(BigInt::one() << e as usize)
    } else {
        Rational::new(BigInt::one(), BigInt::one() << (-e) as usize)
    }
}

/// Serde adapters writing rationals as strings.
pub mod serde_str {
    use super::{fmt_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

pub mod serde_str_vec {
    use super::{fmt_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(fmt_rational).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        Vec::<String>::deserialize(d)?.iter().map(|s| parse_rational(s).map_err(serde::de::Error::custom)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("7/16").unwrap(), ratio(7, 16));
        assert_eq!(parse_rational("-4/6").unwrap(), ratio(-2, 3));
        assert_eq!(parse_rational(" 3 ").unwrap(), int(3));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(fmt_rational(&ratio(14, 16)), "7/8");
        assert_eq!(fmt_rational(&int(1)), "1");
    }

    #[test]
    fn factorials() {
        assert_eq!(falling_factorial(5, 2), BigInt::from(20));
        assert_eq!(falling_factorial(2, 3), BigInt::from(0));
        assert_eq!(falling_factorial(7, 0), BigInt::from(1));
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(pow2(-2), ratio(1, 4));
    }
}

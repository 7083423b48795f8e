//! Exact rational helpers.
//!
//! All densities, thresholds, charges and LP values are [`Rational`]s. They
//! render as `p/q` (or `p` when the denominator is one); decimal renderings are
//! for display only and are never compared.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn half() -> Rational {
    ratio(1, 2)
}

/// Exact `p/q` form. Integers print without a denominator.
pub fn exact(r: &Rational) -> String {
    r.to_string()
}

/// Parses `p`, `p/q` or `-p/q`.
pub fn parse_exact(text: &str) -> Option<Rational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => Some(Rational::from_integer(text.parse().ok()?)),
    }
}

/// Decimal rendering rounded half away from zero to `places` digits.
pub fn decimal(r: &Rational, places: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), places);
    let scaled = r.abs() * Rational::from_integer(scale.clone());
    let rounded = (scaled + half()).floor().to_integer();
    let (whole, frac) = rounded.div_rem(&scale);
    let sign = if r.is_negative() && !rounded.is_zero() { "-" } else { "" };
    if places == 0 {
        format!("{sign}{whole}")
    } else {
        format!("{sign}{whole}.{:0>width$}", frac.to_string(), width = places)
    }
}

/// `serde(with = ...)` adapters writing rationals as `p/q` strings.
pub mod serde_exact {
    use super::{exact, parse_exact, Rational};
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&exact(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_exact(&text).ok_or_else(|| D::Error::custom(format!("bad rational {text:?}")))
    }

    pub mod option {
        use super::super::{exact, Rational};
        use serde::Serializer;

        pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
            match r {
                Some(r) => s.serialize_some(&exact(r)),
                None => s.serialize_none(),
            }
        }
    }

    pub mod seq {
        use super::super::{exact, Rational};
        use serde::ser::SerializeSeq;
        use serde::Serializer;

        pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for r in v {
                seq.serialize_element(&exact(r))?;
            }
            seq.end()
        }
    }

    pub mod map {
        use super::super::{exact, Rational};
        use serde::ser::SerializeMap;
        use serde::Serializer;
        use std::collections::BTreeMap;

        pub fn serialize<S: Serializer, K: std::fmt::Display>(
            m: &BTreeMap<K, Rational>,
            s: S,
        ) -> Result<S::Ok, S::Error> {
            let mut map = s.serialize_map(Some(m.len()))?;
            for (k, r) in m {
                map.serialize_entry(&k.to_string(), &exact(r))?;
            }
            map.end()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_form() {
        assert_eq!(exact(&ratio(28, 5)), "28/5");
        assert_eq!(exact(&ratio(8, 2)), "4");
        assert_eq!(exact(&ratio(-6, 4)), "-3/2");
        assert_eq!(parse_exact("14/3"), Some(ratio(14, 3)));
        assert_eq!(parse_exact(" 6 "), Some(int(6)));
        assert_eq!(parse_exact("1/0"), None);
        assert_eq!(parse_exact("x"), None);
    }

    #[test]
    fn decimal_rounding() {
        assert_eq!(decimal(&ratio(14, 3), 6), "4.666667");
        assert_eq!(decimal(&ratio(5, 3), 6), "1.666667");
        assert_eq!(decimal(&int(4), 6), "4.000000");
        assert_eq!(decimal(&ratio(-1, 8), 2), "-0.13");
        assert_eq!(decimal(&ratio(1, 1000), 2), "0.00");
        assert_eq!(decimal(&ratio(9, 2), 0), "5");
    }
}

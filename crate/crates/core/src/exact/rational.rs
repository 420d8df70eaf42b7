//! Exact rational scalars.
//!
//! `Rational` is `num_rational::BigRational`: always reduced, positive
//! denominator. This module adds parsing from `p/q` and decimal literals,
//! round-half-even decimal rendering, and serde adapters that encode
//! rationals as `"p/q"` strings.

use std::cmp::Ordering;

use num_bigint::{BigInt, Sign as BigSign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// `n/d` as a reduced rational. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Sign as -1, 0 or +1.
pub fn sign_of(r: &Rational) -> i8 {
    match r.numer().sign() {
        BigSign::Minus => -1,
        BigSign::NoSign => 0,
        BigSign::Plus => 1,
    }
}

/// Parses `p`, `p/q`, or a decimal literal such as `-0.125` or `2.5e-3`.
/// Decimals convert exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    if t.is_empty() {
        return Err(Error::Parse("empty number".into()));
    }
    if let Some((n, d)) = t.split_once('/') {
        let n = parse_decimal(n)?;
        let d = parse_decimal(d)?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in `{t}`")));
        }
        return Ok(n / d);
    }
    parse_decimal(t)
}

fn parse_decimal(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("malformed number `{s}`"));
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (ip, fp) = mant.split_once('.').unwrap_or((mant, ""));
    if ip.is_empty() && fp.is_empty() {
        return Err(bad());
    }
    if !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{ip}{fp}");
    let mut n: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().map_err(|_| bad())?
    };
    if neg {
        n = -n;
    }
    let scale = exp - fp.len() as i32;
    let ten = BigInt::from(10);
    Ok(if scale >= 0 {
        Rational::from_integer(n * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(n, num_traits::pow(ten, (-scale) as usize))
    })
}

/// Nearest `f64` (for diagnostics and plotting only).
pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Exact value of a finite `f64`.
pub fn from_f64(f: f64) -> Rational {
    Rational::from_float(f).expect("finite float")
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

pub fn min(a: &Rational, b: &Rational) -> Rational {
    if a <= b {
        a.clone()
    } else {
        b.clone()
    }
}

pub fn max(a: &Rational, b: &Rational) -> Rational {
    if a >= b {
        a.clone()
    } else {
        b.clone()
    }
}

/// `2^e` for any integer exponent.
pub fn pow2(e: i64) -> Rational {
    let p = BigInt::one() << (e.unsigned_abs() as usize);
    if e >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

/// Smallest `k` with `|r| <= 2^k`, for nonzero `r`.
pub fn ceil_log2(r: &Rational) -> i64 {
    let a = r.abs();
    let mut k = a.numer().bits() as i64 - a.denom().bits() as i64 + 1;
    while pow2(k - 1) >= a {
        k -= 1;
    }
    while pow2(k) < a {
        k += 1;
    }
    k
}

fn round_half_even(n: &BigInt, d: &BigInt) -> BigInt {
    // n / d for d > 0, ties to even
    let (q, r) = n.div_mod_floor(d);
    let twice: BigInt = &r << 1usize;
    match twice.cmp(d) {
        Ordering::Less => q,
        Ordering::Greater => q + 1,
        Ordering::Equal => {
            if q.is_even() {
                q
            } else {
                q + 1
            }
        }
    }
}

/// Decimal rendering with `digits` significant digits, rounding half to even.
///
/// Fixed notation is used for decimal exponents in `[-6, 21)`, scientific
/// (`1.2345e-7`) otherwise.
pub fn to_decimal(r: &Rational, digits: usize) -> String {
    let digits = digits.max(1);
    if r.is_zero() {
        return "0".into();
    }
    let neg = r.is_negative();
    let a = r.abs();
    // exponent estimate: floor(log10 a)
    let est = ((a.numer().bits() as f64 - a.denom().bits() as f64) * std::f64::consts::LOG10_2)
        .floor() as i64;
    let mut e = est;
    let pow10 = |k: i64| -> Rational {
        let p = num_traits::pow(BigInt::from(10), k.unsigned_abs() as usize);
        if k >= 0 {
            Rational::from_integer(p)
        } else {
            Rational::new(BigInt::one(), p)
        }
    };
    while pow10(e) > a {
        e -= 1;
    }
    while pow10(e + 1) <= a {
        e += 1;
    }
    let shift = digits as i64 - 1 - e;
    let scaled = &a * pow10(shift);
    let mut m = round_half_even(scaled.numer(), scaled.denom());
    if m >= num_traits::pow(BigInt::from(10), digits) {
        e += 1;
        let scaled = &a * pow10(shift - 1);
        m = round_half_even(scaled.numer(), scaled.denom());
    }
    let ds = m.to_string();
    let sign = if neg { "-" } else { "" };
    if (-6..21).contains(&e) {
        let body = if e >= 0 {
            let int_len = (e + 1) as usize;
            if ds.len() <= int_len {
                format!("{}{}", ds, "0".repeat(int_len - ds.len()))
            } else {
                format!("{}.{}", &ds[..int_len], &ds[int_len..])
            }
        } else {
            format!("0.{}{}", "0".repeat((-e - 1) as usize), ds)
        };
        let body = if body.contains('.') {
            body.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            body
        };
        format!("{sign}{body}")
    } else {
        let (h, t) = ds.split_at(1);
        let t = t.trim_end_matches('0');
        if t.is_empty() {
            format!("{sign}{h}e{e}")
        } else {
            format!("{sign}{h}.{t}e{e}")
        }
    }
}

/// `p/q` rendering (integers print without a denominator).
pub fn to_exact_string(r: &Rational) -> String {
    r.to_string()
}

/// serde adapter: a rational as a `"p/q"` string.
pub mod serde_rat {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// serde adapter for `(Rational, Rational)`.
pub mod serde_rat_pair {
    use super::*;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(
        p: &(Rational, Rational),
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        [p.0.to_string(), p.1.to_string()].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<(Rational, Rational), D::Error> {
        let [a, b] = <[String; 2]>::deserialize(d)?;
        let a = parse_rational(&a).map_err(serde::de::Error::custom)?;
        let b = parse_rational(&b).map_err(serde::de::Error::custom)?;
        Ok((a, b))
    }
}

/// serde adapter for `Option<(Rational, Rational)>`.
pub mod serde_opt_rat_pair {
    use super::*;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(
        p: &Option<(Rational, Rational)>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        p.as_ref()
            .map(|(a, b)| [a.to_string(), b.to_string()])
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Option<(Rational, Rational)>, D::Error> {
        let v = Option::<[String; 2]>::deserialize(d)?;
        v.map(|[a, b]| {
            let a = parse_rational(&a).map_err(serde::de::Error::custom)?;
            let b = parse_rational(&b).map_err(serde::de::Error::custom)?;
            Ok((a, b))
        })
        .transpose()
    }
}

/// serde adapter for `Option<Rational>`.
pub mod serde_opt_rat {
    use super::*;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
        r.as_ref().map(|r| r.to_string()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Rational>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| parse_rational(&s).map_err(serde::de::Error::custom))
            .transpose()
    }
}

/// serde adapter for `Vec<Rational>`.
pub mod serde_rat_vec {
    use super::*;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        v.iter().map(|r| r.to_string()).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Rational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals_exactly() {
        assert_eq!(parse_rational("5/32").unwrap(), rat(5, 32));
        assert_eq!(parse_rational("-10/4").unwrap(), rat(-5, 2));
        assert_eq!(parse_rational("0.4").unwrap(), rat(2, 5));
        assert_eq!(parse_rational("-0.01").unwrap(), rat(-1, 100));
        assert_eq!(parse_rational("2.5e-3").unwrap(), rat(1, 400));
        assert_eq!(parse_rational("59").unwrap(), int(59));
        assert_eq!(parse_rational(".5").unwrap(), rat(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1.2.3").is_err());
    }

    #[test]
    fn decimal_rendering_rounds_half_even() {
        assert_eq!(to_decimal(&rat(1, 8), 2), "0.12");
        assert_eq!(to_decimal(&rat(3, 8), 2), "0.38");
        assert_eq!(to_decimal(&rat(2, 3), 4), "0.6667");
        assert_eq!(to_decimal(&int(-250), 2), "-250");
        assert_eq!(to_decimal(&rat(9995, 10), 3), "1000");
        assert_eq!(to_decimal(&int(0), 5), "0");
        assert_eq!(to_decimal(&rat(1, 1_000_000_000), 3), "1e-9");
        let big = Rational::from_integer(num_traits::pow(BigInt::from(10), 30) * 3);
        assert_eq!(to_decimal(&big, 4), "3e30");
        assert_eq!(to_decimal(&rat(-7, 3), 3), "-2.33");
    }

    #[test]
    fn log2_bounds() {
        assert_eq!(ceil_log2(&rat(1, 2)), -1);
        assert_eq!(ceil_log2(&int(5)), 3);
        assert_eq!(ceil_log2(&int(8)), 3);
        assert_eq!(ceil_log2(&rat(-3, 1)), 2);
    }
}

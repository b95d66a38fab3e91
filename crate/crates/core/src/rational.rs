//! Exact rationals and closed rational intervals.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Arbitrary-precision rational in canonical form (positive denominator,
/// coprime parts); `num-rational` maintains this in every constructor.
pub type Rational = num_rational::BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `10^-digits`.
pub fn pow10_inv(digits: u32) -> Rational {
    Rational::new(BigInt::one(), num_traits::pow(BigInt::from(10), digits as usize))
}

/// Parses `-3/2`, `-1.5`, `7`, `1e-9`, and `2.5e3` exactly. A leading
/// Unicode minus (U+2212) is accepted as well.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim().replace('\u{2212}', "-");
    if s.is_empty() {
        return Err(Error::parse(0, "empty number"));
    }
    if let Some((n, d)) = s.split_once('/') {
        let num: BigInt = n
            .trim()
            .parse()
            .map_err(|_| Error::parse(0, format!("bad numerator in {text:?}")))?;
        let den: BigInt = d
            .trim()
            .parse()
            .map_err(|_| Error::parse(n.len() + 1, format!("bad denominator in {text:?}")))?;
        if den.is_zero() {
            return Err(Error::parse(n.len() + 1, "zero denominator"));
        }
        return Ok(Rational::new(num, den));
    }

    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => {
            let e: i64 = s[i + 1..]
                .parse()
                .map_err(|_| Error::parse(i + 1, format!("bad exponent in {text:?}")))?;
            (&s[..i], e)
        }
        None => (s.as_str(), 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(Error::parse(0, format!("no digits in {text:?}")));
    }
    if let Some(bad) = int_part
        .chars()
        .chain(frac_part.chars())
        .position(|c| !c.is_ascii_digit())
    {
        return Err(Error::parse(bad, format!("unexpected character in {text:?}")));
    }
    let all: BigInt = format!("0{int_part}{frac_part}").parse().unwrap();
    let scale = exp - frac_part.len() as i64;
    let ten = BigInt::from(10);
    let mut q = if scale >= 0 {
        Rational::from_integer(all * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(all, num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        q = -q;
    }
    Ok(q)
}

/// Fixed-point decimal with `digits` fractional digits.
///
/// `Round::Down` rounds toward negative infinity and `Round::Up` toward
/// positive infinity, so printing an enclosure as `(lo Down, hi Up)` never
/// shrinks it.
pub fn to_fixed(q: &Rational, digits: u32, round: Round) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits as usize);
    let scaled = q * Rational::from_integer(scale.clone());
    let v = match round {
        Round::Down => scaled.floor().to_integer(),
        Round::Up => scaled.ceil().to_integer(),
        Round::Nearest => scaled.round().to_integer(),
    };
    let neg = v.is_negative();
    let (ip, fp) = v.abs().div_rem(&scale);
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        return format!("{sign}{ip}");
    }
    format!("{sign}{ip}.{:0>width$}", fp.to_string(), width = digits as usize)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    Down,
    Up,
    Nearest,
}

pub fn to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

/// `num/den` text, the exchange format for exact values.
pub fn to_ratio_string(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Closed interval `[lo, hi]` with exact endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RationalInterval {
    #[serde(with = "ratio_str")]
    lo: Rational,
    #[serde(with = "ratio_str")]
    hi: Rational,
}

impl RationalInterval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::domain(format!(
                "interval lower end {lo} exceeds upper end {hi}"
            )));
        }
        Ok(RationalInterval { lo, hi })
    }

    pub fn point(x: Rational) -> Self {
        RationalInterval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / int(2)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// True when `self` lies in the open interval `(lo, hi)`.
    pub fn inside_open(&self, lo: &Rational, hi: &Rational) -> bool {
        lo < &self.lo && &self.hi < hi
    }

    pub fn is_disjoint(&self, other: &RationalInterval) -> bool {
        self.hi < other.lo || other.hi < self.lo
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl FromStr for RationalInterval {
    type Err = Error;

    /// `lo,hi` or `lo:hi`.
    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s
            .split_once(',')
            .or_else(|| s.split_once(':'))
            .ok_or_else(|| Error::parse(0, "expected LO,HI"))?;
        RationalInterval::new(parse_rational(a)?, parse_rational(b)?)
    }
}

/// Serde adapter storing a rational as a `"num/den"` string.
pub mod ratio_str {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&to_ratio_string(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Two-to-the-minus-`bits` grid helpers used to keep bisection points dyadic.
pub(crate) fn dyadic_floor(q: &Rational, bits: u64) -> Rational {
    let scale = BigInt::one() << bits;
    let v = (q * Rational::from_integer(scale.clone())).floor().to_integer();
    Rational::new(v, scale)
}

pub(crate) fn dyadic_ceil(q: &Rational, bits: u64) -> Rational {
    let scale = BigInt::one() << bits;
    let v = (q * Rational::from_integer(scale.clone())).ceil().to_integer();
    Rational::new(v, scale)
}

/// Smallest `e` with `2^-e <= tol`.
pub(crate) fn bits_for_tolerance(tol: &Rational) -> u64 {
    let mut e = 0u64;
    let mut step = Rational::one();
    while &step > tol {
        step /= int(2);
        e += 1;
    }
    e
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimal_and_fraction_forms() {
        assert_eq!(parse_rational("-3/2").unwrap(), ratio(-3, 2));
        assert_eq!(parse_rational("-1.5").unwrap(), ratio(-3, 2));
        assert_eq!(parse_rational("\u{2212}1.5").unwrap(), ratio(-3, 2));
        assert_eq!(parse_rational("1e-9").unwrap(), pow10_inv(9));
        assert_eq!(parse_rational("2.5e2").unwrap(), int(250));
        assert_eq!(parse_rational(".25").unwrap(), ratio(1, 4));
        assert_eq!(parse_rational("0").unwrap(), int(0));
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1.2.3").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn fixed_point_rounding_is_directed() {
        let q = ratio(-2, 3);
        assert_eq!(to_fixed(&q, 4, Round::Down), "-0.6667");
        assert_eq!(to_fixed(&q, 4, Round::Up), "-0.6666");
        assert_eq!(to_fixed(&int(2), 3, Round::Nearest), "2.000");
        assert_eq!(to_fixed(&ratio(1, 8), 2, Round::Up), "0.13");
    }

    #[test]
    fn interval_basics() {
        assert!(RationalInterval::new(int(1), int(0)).is_err());
        let i: RationalInterval = "-3/2,-1.4".parse().unwrap();
        assert_eq!(i.width(), ratio(1, 10));
        assert!(i.inside_open(&int(-2), &int(-1)));
        assert!(!i.inside_open(&ratio(-3, 2), &int(-1)));
        assert!(RationalInterval::point(int(0)).is_point());
    }

    #[test]
    fn dyadic_grid() {
        assert_eq!(bits_for_tolerance(&pow10_inv(3)), 10);
        assert_eq!(dyadic_floor(&ratio(1, 3), 2), ratio(1, 4));
        assert_eq!(dyadic_ceil(&ratio(1, 3), 2), ratio(1, 2));
        assert_eq!(dyadic_floor(&ratio(-1, 3), 2), ratio(-1, 2));
    }
}

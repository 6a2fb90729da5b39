use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Parses an unsigned or signed decimal literal such as `8.091` or `-0.25` exactly.
pub fn parse_decimal(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int}{frac}");
    let n: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().ok()? };
    let d = BigInt::from(10).pow(frac.len() as u32);
    let q = BigRational::new(n, d);
    Some(if neg { -q } else { q })
}

/// Exact decimal rendering when the rational terminates in base ten.
pub fn format_terminating(q: &BigRational) -> Option<String> {
    let mut d = q.denom().clone();
    let mut twos = 0u32;
    let mut fives = 0u32;
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    while d.is_even() {
        d /= &two;
        twos += 1;
    }
    while (&d % &five).is_zero() {
        d /= &five;
        fives += 1;
    }
    if !d.is_one() {
        return None;
    }
    let places = twos.max(fives);
    let scaled = (q * BigRational::from_integer(BigInt::from(10).pow(places))).to_integer();
    let neg = scaled.is_negative();
    let digits = scaled.abs().to_string();
    let body = if places == 0 {
        digits
    } else {
        let p = places as usize;
        let padded = format!("{digits:0>width$}", width = p + 1);
        let (i, f) = padded.split_at(padded.len() - p);
        format!("{i}.{f}")
    };
    Some(if neg { format!("-{body}") } else { body })
}

/// Decimal when terminating, `num/den` otherwise.
pub fn format_rational(q: &BigRational) -> String {
    format_terminating(q).unwrap_or_else(|| format!("{}/{}", q.numer(), q.denom()))
}

/// `q` with `places` decimals, rounded down (`up = false`) or up, without trailing zeros.
pub fn format_directed(q: &BigRational, places: u32, up: bool) -> String {
    let scale = BigRational::from_integer(BigInt::from(10).pow(places));
    let scaled = q * &scale;
    let t = if up { scaled.ceil() } else { scaled.floor() };
    let trimmed = format_terminating(&(t / scale)).expect("power-of-ten denominator");
    if trimmed == "-0" { "0".into() } else { trimmed }
}

pub fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        let n = q.numer().to_f64().unwrap_or(f64::NAN);
        let d = q.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// A non-negative quantity held as an integer number of thousandths.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "f64", try_from = "f64")]
pub struct Milli(i64);

impl Milli {
    pub fn from_thousandths(t: i64) -> Self {
        Milli(t)
    }

    /// Smallest multiple of 1/1000 strictly greater than `q`.
    ///
    /// An exact value such as 17 therefore reports as 17.001, which keeps the
    /// synthesized bound strictly above every quantity it was derived from.
    pub fn above(q: &BigRational) -> Self {
        let t: BigInt = (q * BigRational::from_integer(1000.into())).floor().to_integer() + 1;
        Milli(t.to_i64().expect("bound out of range"))
    }

    pub fn thousandths(self) -> i64 {
        self.0
    }

    pub fn to_rational(self) -> BigRational {
        BigRational::new(self.0.into(), 1000.into())
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / 1000.0
    }

    pub fn parse(s: &str) -> Option<Self> {
        let q = parse_decimal(s)? * BigRational::from_integer(1000.into());
        q.is_integer().then(|| Milli(q.to_integer().to_i64().unwrap_or(i64::MAX)))
    }

    /// Absolute difference in thousandths.
    pub fn distance(self, other: Milli) -> i64 {
        (self.0 - other.0).abs()
    }
}

impl From<Milli> for f64 {
    fn from(m: Milli) -> f64 {
        m.to_f64()
    }
}

impl TryFrom<f64> for Milli {
    type Error = String;
    fn try_from(v: f64) -> Result<Self, String> {
        if !v.is_finite() {
            return Err(format!("not a finite number: {v}"));
        }
        Ok(Milli((v * 1000.0).round() as i64))
    }
}

impl fmt::Display for Milli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.0 < 0 { "-" } else { "" };
        let a = self.0.abs();
        write!(f, "{sign}{}.{:03}", a / 1000, a % 1000)
    }
}

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;

use super::dyadic::{Dyadic, Round};

/// Closed interval `[lo, hi]` with dyadic endpoints.
///
/// Every operation rounds outward to `prec` significant bits, so the result
/// always encloses the exact result of applying the operation to any points
/// of the operands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    lo: Dyadic,
    hi: Dyadic,
    prec: u32,
}

impl Interval {
    pub fn new(lo: Dyadic, hi: Dyadic, prec: u32) -> Self {
        assert!(lo <= hi, "inverted interval");
        Interval { lo: lo.round(prec, Round::Down), hi: hi.round(prec, Round::Up), prec }
    }

    pub fn point(v: Dyadic, prec: u32) -> Self {
        Interval::new(v.clone(), v, prec)
    }

    pub fn from_int<T: Into<BigInt>>(v: T, prec: u32) -> Self {
        Interval::point(Dyadic::from_int(v), prec)
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        Interval {
            lo: Dyadic::from_rational(q, prec, Round::Down),
            hi: Dyadic::from_rational(q, prec, Round::Up),
            prec,
        }
    }

    /// Interval spanning two rational endpoints.
    pub fn from_bounds(lo: &BigRational, hi: &BigRational, prec: u32) -> Self {
        Interval {
            lo: Dyadic::from_rational(lo, prec, Round::Down),
            hi: Dyadic::from_rational(hi, prec, Round::Up),
            prec,
        }
    }

    pub fn zero(prec: u32) -> Self {
        Interval::point(Dyadic::zero(), prec)
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        Interval::new(self.lo.clone(), self.hi.clone(), prec)
    }

    pub fn width(&self) -> Dyadic {
        self.hi.sub(&self.lo)
    }

    pub fn midpoint_f64(&self) -> f64 {
        (self.lo.to_f64() + self.hi.to_f64()) / 2.0
    }

    pub fn contains(&self, v: &Dyadic) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn contains_rational(&self, q: &BigRational) -> bool {
        self.lo.to_rational() <= *q && *q <= self.hi.to_rational()
    }

    /// True when `other` lies entirely inside `self`.
    pub fn encloses(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Certainly `self <= other` for every pair of enclosed points.
    pub fn certainly_le(&self, other: &Interval) -> bool {
        self.hi <= other.lo
    }

    pub fn certainly_lt(&self, other: &Interval) -> bool {
        self.hi < other.lo
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn max(&self, other: &Interval) -> Interval {
        let prec = self.prec.max(other.prec);
        Interval {
            lo: self.lo.clone().max(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
            prec,
        }
    }

    pub fn recip(&self) -> Interval {
        Interval::from_int(1, self.prec) / self
    }

    pub fn scale_int(&self, k: i64) -> Interval {
        self * &Interval::from_int(k, self.prec)
    }
}

impl<'a> Add<&'a Interval> for &'a Interval {
    type Output = Interval;
    fn add(self, rhs: &Interval) -> Interval {
        let prec = self.prec.max(rhs.prec);
        Interval {
            lo: self.lo.add(&rhs.lo).round(prec, Round::Down),
            hi: self.hi.add(&rhs.hi).round(prec, Round::Up),
            prec,
        }
    }
}

impl<'a> Sub<&'a Interval> for &'a Interval {
    type Output = Interval;
    fn sub(self, rhs: &Interval) -> Interval {
        let prec = self.prec.max(rhs.prec);
        Interval {
            lo: self.lo.sub(&rhs.hi).round(prec, Round::Down),
            hi: self.hi.sub(&rhs.lo).round(prec, Round::Up),
            prec,
        }
    }
}

impl<'a> Mul<&'a Interval> for &'a Interval {
    type Output = Interval;
    fn mul(self, rhs: &Interval) -> Interval {
        let prec = self.prec.max(rhs.prec);
        if !self.lo.is_negative() && !rhs.lo.is_negative() {
            return Interval {
                lo: self.lo.mul(&rhs.lo).round(prec, Round::Down),
                hi: self.hi.mul(&rhs.hi).round(prec, Round::Up),
                prec,
            };
        }
        let products = [
            self.lo.mul(&rhs.lo),
            self.lo.mul(&rhs.hi),
            self.hi.mul(&rhs.lo),
            self.hi.mul(&rhs.hi),
        ];
        let lo = products.iter().min().unwrap().round(prec, Round::Down);
        let hi = products.iter().max().unwrap().round(prec, Round::Up);
        Interval { lo, hi, prec }
    }
}

impl<'a> Div<&'a Interval> for &'a Interval {
    type Output = Interval;
    fn div(self, rhs: &Interval) -> Interval {
        assert!(
            !rhs.contains(&Dyadic::zero()),
            "interval division by an interval containing zero"
        );
        let prec = self.prec.max(rhs.prec);
        if rhs.is_point() {
            let b = &rhs.lo;
            let (lo, hi) = if b.is_negative() { (&self.hi, &self.lo) } else { (&self.lo, &self.hi) };
            return Interval { lo: lo.div(b, prec, Round::Down), hi: hi.div(b, prec, Round::Up), prec };
        }
        if !self.lo.is_negative() && !rhs.lo.is_negative() {
            return Interval {
                lo: self.lo.div(&rhs.hi, prec, Round::Down),
                hi: self.hi.div(&rhs.lo, prec, Round::Up),
                prec,
            };
        }
        let pairs = [
            (&self.lo, &rhs.lo),
            (&self.lo, &rhs.hi),
            (&self.hi, &rhs.lo),
            (&self.hi, &rhs.hi),
        ];
        let lo = pairs.iter().map(|(a, b)| a.div(b, prec, Round::Down)).min().unwrap();
        let hi = pairs.iter().map(|(a, b)| a.div(b, prec, Round::Up)).max().unwrap();
        Interval { lo, hi, prec }
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval { lo: self.hi.neg(), hi: self.lo.neg(), prec: self.prec }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Interval> for Interval {
            type Output = Interval;
            fn $m(self, rhs: Interval) -> Interval {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Interval> for Interval {
            type Output = Interval;
            fn $m(self, rhs: &Interval) -> Interval {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            write!(f, "{}", self.lo.to_f64())
        } else {
            write!(f, "[{:.17e}, {:.17e}]", self.lo.to_f64(), self.hi.to_f64())
        }
    }
}

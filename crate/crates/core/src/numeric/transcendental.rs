//! Rigorous enclosures of `ln` and Euler's number.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::dyadic::Dyadic;
use super::interval::Interval;

const GUARD_BITS: u32 = 24;

fn ceil_div(n: &BigInt, d: &BigInt) -> BigInt {
    -((-n).div_floor(d))
}

/// Fixed-point enclosure `[lo, hi] * 2^-w` of `atanh(a/b)` for `0 <= a/b <= 1/2`.
fn atanh_fixed(a: &BigInt, b: &BigInt, w: u32) -> (BigInt, BigInt) {
    debug_assert!(!a.is_negative() && b.is_positive() && a * 2 <= *b);
    let mut lo = BigInt::zero();
    let mut hi = BigInt::zero();
    if a.is_zero() {
        return (lo, hi);
    }
    let scale = BigInt::one() << w;
    let a2 = a * a;
    let b2 = b * b;
    let mut pn = a.clone();
    let mut pd = b.clone();
    let mut k = 1u64;
    loop {
        let num = &pn * &scale;
        let den = &pd * k;
        if num < den {
            // Tail after this point is at most (4/3) of the current term, which is below one ulp.
            hi += 2;
            break;
        }
        lo += num.div_floor(&den);
        hi += ceil_div(&num, &den);
        pn *= &a2;
        pd *= &b2;
        k += 2;
    }
    (lo, hi)
}

fn fixed_to_interval(lo: BigInt, hi: BigInt, w: u32, prec: u32) -> Interval {
    Interval::new(Dyadic::new(lo, -(w as i64)), Dyadic::new(hi, -(w as i64)), prec)
}

fn ln2_fixed(w: u32) -> (BigInt, BigInt) {
    let (lo, hi) = atanh_fixed(&BigInt::one(), &BigInt::from(3), w);
    (lo * 2, hi * 2)
}

fn cache() -> &'static Mutex<HashMap<(u8, u32), Interval>> {
    static CACHE: OnceLock<Mutex<HashMap<(u8, u32), Interval>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cached(tag: u8, prec: u32, make: impl FnOnce() -> Interval) -> Interval {
    if let Some(v) = cache().lock().unwrap().get(&(tag, prec)) {
        return v.clone();
    }
    let v = make();
    cache().lock().unwrap().insert((tag, prec), v.clone());
    v
}

/// Enclosure of `ln 2` with `prec`-bit endpoints.
pub fn ln2(prec: u32) -> Interval {
    cached(0, prec, || {
        let w = prec + GUARD_BITS;
        let (lo, hi) = ln2_fixed(w);
        fixed_to_interval(lo, hi, w, prec)
    })
}

/// Enclosure of Euler's number with `prec`-bit endpoints.
pub fn euler(prec: u32) -> Interval {
    cached(1, prec, || {
        let w = prec + GUARD_BITS;
        let scale = BigInt::one() << w;
        let mut fact = BigInt::one();
        let mut lo = BigInt::zero();
        let mut hi = BigInt::zero();
        let mut k = 0u64;
        loop {
            if k > 0 {
                fact *= k;
            }
            if scale < fact {
                // Remaining tail is below 2/k!, i.e. under two ulps.
                hi += 2;
                break;
            }
            lo += scale.div_floor(&fact);
            hi += ceil_div(&scale, &fact);
            k += 1;
        }
        fixed_to_interval(lo, hi, w, prec)
    })
}

/// Enclosure of `ln x` for a positive rational `x`.
pub fn ln_rational(x: &BigRational, prec: u32) -> Interval {
    assert!(x.is_positive(), "ln of a non-positive number");
    if x.is_one() {
        return Interval::zero(prec);
    }
    if x < &BigRational::one() {
        return -&ln_rational(&x.recip(), prec);
    }
    let w = prec + GUARD_BITS + 8;
    let (num, den) = (x.numer(), x.denom());
    // Choose k with 1 <= x / 2^k < 2.
    let mut k = num.bits() as i64 - den.bits() as i64;
    let (mut yn, mut yd) = (num.clone(), den.clone());
    if k >= 0 {
        yd <<= k as u64;
    } else {
        yn <<= (-k) as u64;
    }
    if yn < yd {
        yn <<= 1;
        k -= 1;
    }
    // t = (y - 1)/(y + 1) lies in [0, 1/3).
    let (tn, td) = (&yn - &yd, &yn + &yd);
    let (alo, ahi) = atanh_fixed(&tn, &td, w);
    let (l2lo, l2hi) = ln2_fixed(w);
    let kb = BigInt::from(k);
    let (lo, hi) = if k >= 0 {
        (&kb * l2lo + alo * 2, &kb * l2hi + ahi * 2)
    } else {
        (&kb * l2hi + alo * 2, &kb * l2lo + ahi * 2)
    };
    fixed_to_interval(lo, hi, w, prec)
}

pub fn ln_int(n: u64, prec: u32) -> Interval {
    ln_rational(&BigRational::from_integer(n.into()), prec)
}

/// Streams enclosures of `ln 1, ln 2, ln 3, ...` using
/// `ln j = ln(j-1) + 2 atanh(1/(2j-1))`, which needs only a few series terms per step.
pub struct LnSeq {
    next: u64,
    w: u32,
    prec: u32,
    lo: BigInt,
    hi: BigInt,
}

impl LnSeq {
    /// `horizon` bounds the number of steps the caller intends to take; it only sizes the guard bits.
    pub fn new(prec: u32, horizon: u64) -> Self {
        let w = prec + GUARD_BITS + 64 - horizon.max(1).leading_zeros();
        LnSeq { next: 1, w, prec, lo: BigInt::zero(), hi: BigInt::zero() }
    }
}

impl Iterator for LnSeq {
    type Item = Interval;
    fn next(&mut self) -> Option<Interval> {
        let j = self.next;
        if j > 1 {
            let (alo, ahi) = atanh_fixed(&BigInt::one(), &BigInt::from(2 * j - 1), self.w);
            self.lo += alo * 2;
            self.hi += ahi * 2;
        }
        self.next += 1;
        Some(fixed_to_interval(self.lo.clone(), self.hi.clone(), self.w, self.prec))
    }
}

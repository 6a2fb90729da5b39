//! Polynomials in `n`, `n-1` and `ln n` with symbolic constant coefficients,
//! and the pseudo-polynomial normal form used by the decision procedure.

mod inequality;
mod pseudo;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numeric::{format_rational, Interval};
use crate::overapprox::Constants;
use crate::recdsl::Coefficient;

pub use inequality::{to_inequality, Inequality};
pub use pseudo::{Degree, Leading, PseudoPoly};

/// Which endpoint of a constant enclosure to commit to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Endpoint {
    Lower,
    Upper,
}

/// A polynomial in the constants `ln 2` and `e` with rational coefficients.
///
/// Keys are `(power of ln 2, power of e)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SymConst {
    terms: BTreeMap<(u32, u32), BigRational>,
}

impl SymConst {
    pub fn zero() -> Self {
        SymConst::default()
    }

    pub fn rational(q: BigRational) -> Self {
        let mut s = SymConst::zero();
        s.add_term((0, 0), q);
        s
    }

    pub fn int(v: i64) -> Self {
        SymConst::rational(BigRational::from_integer(v.into()))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        SymConst::rational(BigRational::new(n.into(), d.into()))
    }

    pub fn ln2() -> Self {
        let mut s = SymConst::zero();
        s.add_term((1, 0), BigRational::one());
        s
    }

    pub fn euler() -> Self {
        let mut s = SymConst::zero();
        s.add_term((0, 1), BigRational::one());
        s
    }

    pub fn from_coefficient(c: &Coefficient) -> Self {
        let mut s = SymConst::rational(c.rational.clone());
        s.add_term((0, 1), c.euler.clone());
        s
    }

    fn add_term(&mut self, key: (u32, u32), q: BigRational) {
        if q.is_zero() {
            return;
        }
        let slot = self.terms.entry(key).or_insert_with(BigRational::zero);
        *slot += q;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value when no symbolic constant is involved.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    pub fn add(&self, other: &SymConst) -> SymConst {
        let mut s = self.clone();
        for (k, v) in &other.terms {
            s.add_term(*k, v.clone());
        }
        s
    }

    pub fn neg(&self) -> SymConst {
        SymConst { terms: self.terms.iter().map(|(k, v)| (*k, -v)).collect() }
    }

    pub fn sub(&self, other: &SymConst) -> SymConst {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &SymConst) -> SymConst {
        let mut s = SymConst::zero();
        for ((a1, b1), v1) in &self.terms {
            for ((a2, b2), v2) in &other.terms {
                s.add_term((a1 + a2, b1 + b2), v1 * v2);
            }
        }
        s
    }

    pub fn scale(&self, q: &BigRational) -> SymConst {
        let mut s = SymConst::zero();
        for (k, v) in &self.terms {
            s.add_term(*k, v * q);
        }
        s
    }

    /// Exact rational enclosure `[lo, hi]` given enclosures of the constants.
    pub fn enclose(&self, consts: &Constants) -> (BigRational, BigRational) {
        let mut lo = BigRational::zero();
        let mut hi = BigRational::zero();
        for ((i, j), c) in &self.terms {
            let pow = |q: &BigRational, k: u32| num_traits::pow(q.clone(), k as usize);
            let mlo = pow(&consts.ln2.lo, *i) * pow(&consts.euler.lo, *j);
            let mhi = pow(&consts.ln2.hi, *i) * pow(&consts.euler.hi, *j);
            if c.is_negative() {
                lo += c * &mhi;
                hi += c * &mlo;
            } else {
                lo += c * &mlo;
                hi += c * &mhi;
            }
        }
        (lo, hi)
    }

    pub fn resolve(&self, consts: &Constants, at: Endpoint) -> BigRational {
        let (lo, hi) = self.enclose(consts);
        match at {
            Endpoint::Lower => lo,
            Endpoint::Upper => hi,
        }
    }
}

impl fmt::Display for SymConst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for ((i, j), c) in &self.terms {
            let mut sym = Vec::new();
            match i {
                0 => {}
                1 => sym.push("ln2".to_string()),
                k => sym.push(format!("ln2^{k}")),
            }
            match j {
                0 => {}
                1 => sym.push("e".to_string()),
                k => sym.push(format!("e^{k}")),
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            if sym.is_empty() {
                f.write_str(&format_rational(&mag))?;
            } else if mag.is_one() {
                f.write_str(&sym.join("*"))?;
            } else {
                write!(f, "{}*{}", format_rational(&mag), sym.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Monomial `n^a (n-1)^b (ln n)^[log]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mono {
    pub a: i32,
    pub b: i32,
    pub log: bool,
}

impl Mono {
    pub fn new(a: i32, b: i32, log: bool) -> Self {
        Mono { a, b, log }
    }

    /// Enclosure of the monomial's value at `n >= 2`.
    pub fn eval(&self, n: u64, ln_n: &Interval) -> Interval {
        let prec = ln_n.prec();
        let pw = |base: u64, e: i32| -> BigRational {
            let v = num_traits::pow(BigInt::from(base), e.unsigned_abs() as usize);
            if e >= 0 {
                BigRational::from_integer(v)
            } else {
                BigRational::new(BigInt::one(), v)
            }
        };
        let r = pw(n, self.a) * pw(n - 1, self.b);
        let v = Interval::from_rational(&r, prec);
        if self.log {
            &v * ln_n
        } else {
            v
        }
    }
}

/// Sparse sum of `coeff * n^a (n-1)^b (ln n)^l` with `a >= -2`, `b >= -1`, `l in {0,1}`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ExtPoly {
    terms: BTreeMap<Mono, SymConst>,
}

impl ExtPoly {
    pub fn zero() -> Self {
        ExtPoly::default()
    }

    pub fn term(coeff: SymConst, a: i32, b: i32, log: bool) -> Result<Self> {
        if a < -2 || b < -1 {
            return Err(Error::Structure(format!(
                "monomial n^{a} (n-1)^{b} lies outside the supported family"
            )));
        }
        let mut p = ExtPoly::zero();
        p.add_term(Mono::new(a, b, log), coeff);
        Ok(p)
    }

    /// Shorthand for statically known monomials.
    pub(crate) fn mono(coeff: SymConst, a: i32, b: i32, log: bool) -> Self {
        ExtPoly::term(coeff, a, b, log).expect("static monomial within range")
    }

    pub fn constant(c: SymConst) -> Self {
        ExtPoly::mono(c, 0, 0, false)
    }

    fn add_term(&mut self, m: Mono, c: SymConst) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_default();
        *slot = slot.add(&c);
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &SymConst)> {
        self.terms.iter()
    }

    pub fn coeff(&self, a: i32, b: i32, log: bool) -> SymConst {
        self.terms.get(&Mono::new(a, b, log)).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &ExtPoly) -> ExtPoly {
        let mut p = self.clone();
        for (m, c) in &other.terms {
            p.add_term(*m, c.clone());
        }
        p
    }

    pub fn neg(&self) -> ExtPoly {
        ExtPoly { terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect() }
    }

    pub fn sub(&self, other: &ExtPoly) -> ExtPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &SymConst) -> ExtPoly {
        let mut p = ExtPoly::zero();
        for (m, c) in &self.terms {
            p.add_term(*m, c.mul(k));
        }
        p
    }

    /// Multiplies by `n^da (n-1)^db`.
    pub fn mul_monomial(&self, da: i32, db: i32) -> ExtPoly {
        let mut p = ExtPoly::zero();
        for (m, c) in &self.terms {
            p.add_term(Mono::new(m.a + da, m.b + db, m.log), c.clone());
        }
        p
    }

    /// Rewrites every non-negative power of `(n-1)` binomially in powers of `n`.
    pub fn expand(&self) -> ExtPoly {
        let mut p = ExtPoly::zero();
        for (m, c) in &self.terms {
            if m.b <= 0 {
                p.add_term(*m, c.clone());
                continue;
            }
            let mut binom = BigInt::one();
            for k in 0..=m.b {
                // (n-1)^b = sum_k C(b,k) n^(b-k) (-1)^k
                let sign = if k % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                let q = BigRational::from_integer(&binom * sign);
                p.add_term(Mono::new(m.a + m.b - k, 0, m.log), c.scale(&q));
                binom = binom * BigInt::from(m.b - k) / BigInt::from(k + 1);
            }
        }
        p
    }

    /// Commits every coefficient to one endpoint of its enclosure.
    pub fn resolve(&self, consts: &Constants, at: Endpoint) -> ExtPoly {
        let mut p = ExtPoly::zero();
        for (m, c) in &self.terms {
            p.add_term(*m, SymConst::rational(c.resolve(consts, at)));
        }
        p
    }

    /// Enclosure of the value at `n >= 2`, valid for any constants inside `consts`.
    pub fn eval(&self, n: u64, ln_n: &Interval, consts: &Constants) -> Interval {
        let prec = ln_n.prec();
        let mut acc = Interval::zero(prec);
        for (m, c) in &self.terms {
            let (lo, hi) = c.enclose(consts);
            let ci = Interval::from_bounds(&lo, &hi, prec);
            acc = &acc + &(&ci * &m.eval(n, ln_n));
        }
        acc
    }

    /// Smallest and largest exponents of `n` and `n-1` present.
    pub fn min_exponents(&self) -> (i32, i32) {
        let a = self.terms.keys().map(|m| m.a).min().unwrap_or(0);
        let b = self.terms.keys().map(|m| m.b).min().unwrap_or(0);
        (a, b)
    }
}

impl fmt::Display for ExtPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                let mut s = vec![format!("({c})")];
                match m.a {
                    0 => {}
                    1 => s.push("n".into()),
                    a => s.push(format!("n^{a}")),
                }
                match m.b {
                    0 => {}
                    1 => s.push("(n-1)".into()),
                    b => s.push(format!("(n-1)^{b}")),
                }
                if m.log {
                    s.push("ln n".into());
                }
                s.join("·")
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

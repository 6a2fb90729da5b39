use std::cmp::Ordering;
use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::numeric::{format_rational, Interval};

/// `sum_i a_i n^i ln n + sum_i b_i n^i` with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PseudoPoly {
    log: Vec<BigRational>,
    plain: Vec<BigRational>,
}

/// Degree of a pseudo-polynomial: `k + 1/2` when led by `n^k ln n`, else `l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Degree {
    twice: u32,
}

impl Degree {
    pub fn plain(l: u32) -> Self {
        Degree { twice: 2 * l }
    }

    pub fn log(k: u32) -> Self {
        Degree { twice: 2 * k + 1 }
    }

    pub fn twice(self) -> u32 {
        self.twice
    }

    pub fn has_log(self) -> bool {
        self.twice % 2 == 1
    }

    /// Integer power of `n` in the leading monomial.
    pub fn power(self) -> u32 {
        self.twice / 2
    }

    pub fn as_f64(self) -> f64 {
        self.twice as f64 / 2.0
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.has_log() {
            write!(f, "{}.5", self.power())
        } else {
            write!(f, "{}", self.power())
        }
    }
}

/// Leading monomial `n^power (ln n)^[log]` together with its coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Leading {
    pub degree: Degree,
    pub coeff: BigRational,
}

fn trim(v: &mut Vec<BigRational>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

impl PseudoPoly {
    pub fn new(mut log: Vec<BigRational>, mut plain: Vec<BigRational>) -> Self {
        trim(&mut log);
        trim(&mut plain);
        PseudoPoly { log, plain }
    }

    pub fn from_ints(log: &[i64], plain: &[i64]) -> Self {
        let conv = |v: &[i64]| v.iter().map(|&x| BigRational::from_integer(x.into())).collect();
        PseudoPoly::new(conv(log), conv(plain))
    }

    /// Coefficients `a_i` of `n^i ln n`.
    pub fn log_coeffs(&self) -> &[BigRational] {
        &self.log
    }

    /// Coefficients `b_i` of `n^i`.
    pub fn plain_coeffs(&self) -> &[BigRational] {
        &self.plain
    }

    pub fn is_zero(&self) -> bool {
        self.log.is_empty() && self.plain.is_empty()
    }

    pub fn degree(&self) -> Degree {
        self.leading().degree
    }

    /// Leading term; the zero polynomial reports degree 0 with coefficient 0.
    pub fn leading(&self) -> Leading {
        let k = self.log.len().checked_sub(1);
        let l = self.plain.len().checked_sub(1);
        match (k, l) {
            (Some(k), l) if l.map_or(true, |l| k >= l) => {
                Leading { degree: Degree::log(k as u32), coeff: self.log[k].clone() }
            }
            (_, Some(l)) => Leading { degree: Degree::plain(l as u32), coeff: self.plain[l].clone() },
            _ => Leading { degree: Degree::plain(0), coeff: BigRational::zero() },
        }
    }

    pub fn leading_coeff(&self) -> BigRational {
        self.leading().coeff
    }

    pub fn all_nonnegative(&self) -> bool {
        self.log.iter().chain(&self.plain).all(|c| !c.is_negative())
    }

    /// Enclosure of the value at `n`, given an enclosure of `ln n`.
    pub fn eval(&self, n: u64, ln_n: &Interval) -> Interval {
        let prec = ln_n.prec();
        let nn = Interval::from_int(n, prec);
        let horner = |coeffs: &[BigRational]| {
            let mut acc = Interval::zero(prec);
            for c in coeffs.iter().rev() {
                acc = &(&acc * &nn) + &Interval::from_rational(c, prec);
            }
            acc
        };
        &(&horner(&self.log) * ln_n) + &horner(&self.plain)
    }

    /// Sign of the leading coefficient compared with zero.
    pub fn leading_sign(&self) -> Ordering {
        self.leading_coeff().cmp(&BigRational::zero())
    }

    pub(crate) fn require_nonnegative(&self, what: &str) -> Result<()> {
        if !self.all_nonnegative() {
            return Err(Error::Structure(format!("{what} has a negative coefficient: {self}")));
        }
        Ok(())
    }
}

impl fmt::Display for PseudoPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<(u32, String)> = Vec::new();
        let fmt_pow = |i: usize| match i {
            0 => String::new(),
            1 => "n".to_string(),
            i => format!("n^{i}"),
        };
        for (i, c) in self.log.iter().enumerate() {
            if !c.is_zero() {
                let p = fmt_pow(i);
                let mono = if p.is_empty() { "ln n".to_string() } else { format!("{p}·ln n") };
                parts.push((2 * i as u32 + 1, format!("{}·{mono}", format_rational(c))));
            }
        }
        for (i, c) in self.plain.iter().enumerate() {
            if !c.is_zero() {
                let p = fmt_pow(i);
                let s = if p.is_empty() { format_rational(c) } else { format!("{}·{p}", format_rational(c)) };
                parts.push((2 * i as u32, s));
            }
        }
        if parts.is_empty() {
            return f.write_str("0");
        }
        parts.sort_by(|a, b| b.0.cmp(&a.0));
        let text: Vec<String> = parts.into_iter().map(|(_, s)| s).collect();
        f.write_str(&text.join(" + "))
    }
}

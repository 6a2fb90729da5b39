//! Over-approximation of `Subst(e, d*f + c)` by extended polynomials.

mod oracle;

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::numeric::{self, parse_decimal};
use crate::pseudopoly::{ExtPoly, SymConst};
use crate::recdsl::{Atom, Coefficient, RecExpr};

pub use oracle::{check_prop1_2_3, PropCheck, PropReport, PropSweep};

/// A closed rational interval enclosing a transcendental constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalConst {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl IntervalConst {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "inverted constant interval");
        IntervalConst { lo, hi }
    }

    fn decimal(lo: &str, hi: &str) -> Self {
        IntervalConst::new(parse_decimal(lo).unwrap(), parse_decimal(hi).unwrap())
    }

    fn from_interval(iv: &numeric::Interval) -> Self {
        IntervalConst::new(iv.lo().to_rational(), iv.hi().to_rational())
    }
}

/// Enclosures of `ln 2` and `e` used when committing symbolic coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constants {
    pub ln2: IntervalConst,
    pub euler: IntervalConst,
}

impl Constants {
    pub const LN2_TABLE: (&'static str, &'static str) = ("0.6931", "0.6932");
    pub const EULER_TABLE: (&'static str, &'static str) = ("2.7182", "2.7183");

    /// The four-digit enclosures `[0.6931, 0.6932]` and `[2.7182, 2.7183]`.
    pub fn four_digit() -> Self {
        Constants {
            ln2: IntervalConst::decimal(Self::LN2_TABLE.0, Self::LN2_TABLE.1),
            euler: IntervalConst::decimal(Self::EULER_TABLE.0, Self::EULER_TABLE.1),
        }
    }

    /// Outward-rounded enclosures with `prec`-bit endpoints.
    pub fn with_precision(prec: u32) -> Self {
        Constants {
            ln2: IntervalConst::from_interval(&numeric::ln2(prec)),
            euler: IntervalConst::from_interval(&numeric::euler(prec)),
        }
    }
}

impl Default for Constants {
    fn default() -> Self {
        Constants::with_precision(numeric::configured_precision())
    }
}

/// The candidate growth rates `f` in `T(n) <= d*f(n) + c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundShape {
    #[serde(rename = "logn")]
    LogN,
    #[serde(rename = "n")]
    Linear,
    #[serde(rename = "nlogn")]
    NLogN,
}

impl BoundShape {
    /// Order in which automatic shape selection tries the shapes.
    pub const ALL: [BoundShape; 3] = [BoundShape::LogN, BoundShape::Linear, BoundShape::NLogN];

    /// Human-readable form over variable `v`, e.g. `n·ln n`.
    pub fn label_in(self, v: &str) -> String {
        match self {
            BoundShape::LogN => format!("ln {v}"),
            BoundShape::Linear => v.to_string(),
            BoundShape::NLogN => format!("{v}·ln {v}"),
        }
    }

    pub fn label(self) -> String {
        self.label_in("n")
    }

    /// `f` as an extended polynomial.
    pub fn poly(self) -> ExtPoly {
        match self {
            BoundShape::LogN => ExtPoly::mono(SymConst::int(1), 0, 0, true),
            BoundShape::Linear => ExtPoly::mono(SymConst::int(1), 1, 0, false),
            BoundShape::NLogN => ExtPoly::mono(SymConst::int(1), 1, 0, true),
        }
    }

    /// Enclosure of `f(n)` given an enclosure of `ln n`.
    pub fn eval(self, n: u64, ln_n: &numeric::Interval) -> numeric::Interval {
        let nn = numeric::Interval::from_int(n, ln_n.prec());
        match self {
            BoundShape::LogN => ln_n.clone(),
            BoundShape::Linear => nn,
            BoundShape::NLogN => &nn * ln_n,
        }
    }
}

impl fmt::Display for BoundShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl FromStr for BoundShape {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim().to_ascii_lowercase().replace(['·', '*', ' '], "").as_str() {
            "logn" | "lnn" => Ok(BoundShape::LogN),
            "n" | "linear" => Ok(BoundShape::Linear),
            "nlogn" | "nlnn" => Ok(BoundShape::NLogN),
            other => Err(format!("unknown bound shape '{other}' (expected logn, n or nlogn)")),
        }
    }
}

fn q(n: i64, d: i64) -> SymConst {
    SymConst::ratio(n, d)
}

fn dec(s: &str) -> SymConst {
    SymConst::rational(parse_decimal(s).expect("decimal literal"))
}

/// Builds an extended polynomial from `(coeff, a, b, log)` tuples.
fn poly(terms: Vec<(SymConst, i32, i32, bool)>) -> ExtPoly {
    terms.into_iter().fold(ExtPoly::zero(), |acc, (c, a, b, l)| acc.add(&ExtPoly::mono(c, a, b, l)))
}

/// Over-approximation of `Subst(t, f)(n)` for a recursive atom `t`, valid for `n >= 2`.
///
/// # Panics
/// If `t` is not a recursive atom.
pub fn cell(f: BoundShape, t: Atom) -> ExtPoly {
    let ln2 = SymConst::ln2;
    use Atom::*;
    use BoundShape::*;
    match (f, t) {
        (LogN, TPred) => poly(vec![(q(1, 1), 0, 0, true), (q(-1, 1), -1, 0, false)]),
        (LogN, TFloorHalf) => poly(vec![(q(1, 1), 0, 0, true), (ln2().neg(), 0, 0, false)]),
        (LogN, TCeilHalf) => poly(vec![
            (q(1, 1), 0, 0, true),
            (ln2().neg(), 0, 0, false),
            (q(1, 1), -1, 0, false),
        ]),
        (LogN, AvgAll) => poly(vec![
            (q(1, 1), 0, 0, true),
            (q(-1, 1), 0, 0, false),
            (q(-1, 2), -1, 0, true),
            (q(13, 12), -1, 0, false),
        ]),
        (LogN, AvgHalves) => poly(vec![
            (q(1, 1), 0, 0, true),
            (ln2().sub(&q(1, 1)), 0, 0, false),
            (q(1, 2), -1, 0, true),
            (dec("0.6672"), -1, 0, false),
            (q(1, 2), -2, 0, false),
        ]),
        (Linear, TPred) => poly(vec![(q(1, 1), 1, 0, false), (q(-1, 1), 0, 0, false)]),
        (Linear, TFloorHalf) => poly(vec![(q(1, 2), 1, 0, false)]),
        (Linear, TCeilHalf) => poly(vec![(q(1, 2), 1, 0, false), (q(1, 2), 0, 0, false)]),
        (Linear, AvgAll) => poly(vec![(q(1, 2), 1, 0, false), (q(-1, 2), 0, 0, false)]),
        (Linear, AvgHalves) => poly(vec![(q(3, 4), 1, 0, false), (q(-1, 4), -1, 0, false)]),
        (NLogN, TPred) => poly(vec![
            (q(1, 1), 1, 0, true),
            (q(-1, 1), 0, 0, true),
            (q(-1, 1), 0, 0, false),
            (q(1, 1), -1, 0, false),
        ]),
        (NLogN, TFloorHalf) => poly(vec![(q(1, 2), 1, 0, true), (ln2().scale(&half()).neg(), 1, 0, false)]),
        (NLogN, TCeilHalf) => poly(vec![
            (q(1, 2), 1, 0, true),
            (ln2().scale(&half()).neg(), 1, 0, false),
            (q(1, 1).sub(&ln2()).scale(&half()), 0, 0, false),
            (q(1, 2), 0, 0, true),
            (q(1, 2), -1, 0, false),
        ]),
        (NLogN, AvgAll) => poly(vec![
            (q(1, 2), 1, 0, true),
            (q(-1, 4), 1, 0, false),
            (q(-1, 2), 0, 0, true),
            (q(1, 12), -1, 0, true),
            (dec("0.5139"), -1, 0, false),
        ]),
        (NLogN, AvgHalves) => poly(vec![
            (q(3, 4), 1, 0, true),
            (dec("-0.2017"), 1, 0, false),
            (q(-1, 2), 0, 0, true),
            (dec("-0.2698"), 0, 0, false),
            (q(1, 8), -1, 0, true),
            (dec("1.6369"), -1, 0, false),
            (q(1, 2), -1, -1, false),
            (q(1, 4), -2, 0, false),
        ]),
        (_, One | Var | LnVar | VarLnVar | InvVar) => panic!("cell requested for non-recursive atom {t:?}"),
    }
}

fn half() -> BigRational {
    BigRational::new(1.into(), 2.into())
}

/// A non-recursive atom as a polynomial in `n`.
pub fn atom_poly(atom: Atom) -> ExtPoly {
    match atom {
        Atom::One => ExtPoly::mono(q(1, 1), 0, 0, false),
        Atom::Var => ExtPoly::mono(q(1, 1), 1, 0, false),
        Atom::LnVar => ExtPoly::mono(q(1, 1), 0, 0, true),
        Atom::VarLnVar => ExtPoly::mono(q(1, 1), 1, 0, true),
        Atom::InvVar => ExtPoly::mono(q(1, 1), -1, 0, false),
        _ => panic!("atom_poly requested for recursive atom {atom:?}"),
    }
}

/// `Γ_ln(n) = n ln n - n - ln(n)/2 + 1`, the integral primitive that tracks `Σ_{j<n} ln j`.
pub fn gamma_ln() -> ExtPoly {
    poly(vec![(q(1, 1), 1, 0, true), (q(-1, 1), 1, 0, false), (q(-1, 2), 0, 0, true), (q(1, 1), 0, 0, false)])
}

/// `Γ_{1/n}(n) = ln n`, tracking the harmonic sum `Σ_{j<n} 1/j`.
pub fn gamma_recip() -> ExtPoly {
    ExtPoly::mono(q(1, 1), 0, 0, true)
}

/// `Γ_{n ln n}(n) = n² ln n/2 - n²/4 - n ln n/2 + ln n/12 + 1/4`, tracking `Σ_{j<n} j ln j`.
pub fn gamma_nln() -> ExtPoly {
    poly(vec![
        (q(1, 2), 2, 0, true),
        (q(-1, 4), 2, 0, false),
        (q(-1, 2), 1, 0, true),
        (q(1, 12), 0, 0, true),
        (q(1, 4), 0, 0, false),
    ])
}

/// `OvAp(e, d*f + c) = d * p_d + p_free + base_weight * c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OvApPair {
    /// Factor multiplying the unknown `d`.
    pub p_d: ExtPoly,
    /// Non-recursive part of the expression.
    pub p_free: ExtPoly,
    /// Total weight of the recursive atoms; each contributes `coeff * c`.
    pub base_weight: SymConst,
}

impl OvApPair {
    /// The `d`-free part for a given base constant `c`.
    pub fn p_c(&self, c: &Coefficient) -> ExtPoly {
        let cc = SymConst::from_coefficient(c).mul(&self.base_weight);
        self.p_free.add(&ExtPoly::constant(cc))
    }
}

pub fn ovap(expr: &RecExpr, f: BoundShape) -> OvApPair {
    let mut p_d = ExtPoly::zero();
    let mut p_free = ExtPoly::zero();
    let mut base_weight = SymConst::zero();
    for t in expr.terms() {
        let k = SymConst::from_coefficient(&t.coeff);
        if t.atom.is_recursive() {
            p_d = p_d.add(&cell(f, t.atom).scale(&k));
            base_weight = base_weight.add(&k);
        } else {
            p_free = p_free.add(&atom_poly(t.atom).scale(&k));
        }
    }
    OvApPair { p_d, p_free, base_weight }
}

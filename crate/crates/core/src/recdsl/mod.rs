//! Recurrence syntax: abstract syntax, parser, validation and pretty-printing.
//!
//! A univariate relation has the form `T(n) = e(n)` with base case `T(1) = c`.
//! A separable bivariate relation `T(n,m) = e + h(n)*b(m)` has base case
//! `T(n,1) = h(n)*c`.

mod lexer;
mod parser;
mod printer;

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numeric::{euler, DEFAULT_PRECISION};

pub use parser::{parse_bi, parse_relation, parse_uni};

/// A non-negative scalar `rational + euler * e`.
///
/// Written coefficients are either a plain decimal or a decimal multiple of
/// `e`; merging like atoms can combine the two kinds.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coefficient {
    pub rational: BigRational,
    pub euler: BigRational,
}

impl Coefficient {
    pub fn rational(q: BigRational) -> Self {
        Coefficient { rational: q, euler: BigRational::zero() }
    }

    pub fn euler_multiple(q: BigRational) -> Self {
        Coefficient { rational: BigRational::zero(), euler: q }
    }

    pub fn from_int(v: i64) -> Self {
        Coefficient::rational(BigRational::from_integer(v.into()))
    }

    pub fn one() -> Self {
        Coefficient::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.euler.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.rational.is_one() && self.euler.is_zero()
    }

    /// True when the coefficient involves Euler's number.
    pub fn has_euler(&self) -> bool {
        !self.euler.is_zero()
    }

    pub fn add(&self, other: &Coefficient) -> Coefficient {
        Coefficient {
            rational: &self.rational + &other.rational,
            euler: &self.euler + &other.euler,
        }
    }

    /// Certainly positive, using a rigorous enclosure of `e` when needed.
    pub fn is_positive(&self) -> bool {
        self.compare_to(&BigRational::zero()) == Some(std::cmp::Ordering::Greater)
    }

    /// Compares with a rational when the enclosure of `e` decides the question.
    pub fn compare_to(&self, q: &BigRational) -> Option<std::cmp::Ordering> {
        use std::cmp::Ordering;
        if self.euler.is_zero() {
            return Some(self.rational.cmp(q));
        }
        let e = euler(DEFAULT_PRECISION);
        let (elo, ehi) = (e.lo().to_rational(), e.hi().to_rational());
        let (a, b) = if self.euler.is_positive() {
            (&self.euler * &elo, &self.euler * &ehi)
        } else {
            (&self.euler * &ehi, &self.euler * &elo)
        };
        let lo = &self.rational + a;
        let hi = &self.rational + b;
        if &lo > q {
            Some(Ordering::Greater)
        } else if &hi < q {
            Some(Ordering::Less)
        } else if lo == hi {
            Some(Ordering::Equal)
        } else {
            None
        }
    }
}

/// The variable an atom is written over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    N,
    M,
}

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::N => "n",
            Var::M => "m",
        }
    }
}

/// Atoms of the recurrence language, in canonical order.
///
/// The non-recursive atoms come first; the recursive ones refer to the
/// unknown function at smaller arguments.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    One,
    Var,
    LnVar,
    VarLnVar,
    InvVar,
    TPred,
    TFloorHalf,
    TCeilHalf,
    AvgAll,
    AvgHalves,
}

impl Atom {
    pub const NON_RECURSIVE: [Atom; 5] = [Atom::One, Atom::Var, Atom::LnVar, Atom::VarLnVar, Atom::InvVar];
    pub const RECURSIVE: [Atom; 5] =
        [Atom::TPred, Atom::TFloorHalf, Atom::TCeilHalf, Atom::AvgAll, Atom::AvgHalves];

    pub fn is_recursive(self) -> bool {
        matches!(
            self,
            Atom::TPred | Atom::TFloorHalf | Atom::TCeilHalf | Atom::AvgAll | Atom::AvgHalves
        )
    }

    pub fn has_log(self) -> bool {
        matches!(self, Atom::LnVar | Atom::VarLnVar)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: Coefficient,
    pub atom: Atom,
}

/// A canonical sum of terms: like atoms merged, sorted by atom, no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct RecExpr {
    terms: Vec<Term>,
}

impl RecExpr {
    pub fn new(terms: impl IntoIterator<Item = Term>) -> Self {
        let mut merged: BTreeMap<Atom, Coefficient> = BTreeMap::new();
        for t in terms {
            let slot = merged.entry(t.atom).or_insert_with(|| Coefficient::from_int(0));
            *slot = slot.add(&t.coeff);
        }
        RecExpr {
            terms: merged
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(atom, coeff)| Term { coeff, atom })
                .collect(),
        }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn recursive_terms(&self) -> impl Iterator<Item = &Term> {
        self.terms.iter().filter(|t| t.atom.is_recursive())
    }

    pub fn free_terms(&self) -> impl Iterator<Item = &Term> {
        self.terms.iter().filter(|t| !t.atom.is_recursive())
    }

    pub fn coeff(&self, atom: Atom) -> Option<&Coefficient> {
        self.terms.iter().find(|t| t.atom == atom).map(|t| &t.coeff)
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when evaluation needs logarithms or Euler's number.
    pub fn is_transcendental(&self) -> bool {
        self.terms.iter().any(|t| t.atom.has_log() || t.coeff.has_euler())
    }

    pub fn concat(&self, other: &RecExpr) -> RecExpr {
        RecExpr::new(self.terms.iter().chain(other.terms.iter()).cloned())
    }
}

/// `T(n) = expr` for `n >= 2`, with `T(1) = base_cost`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniRecurrence {
    expr: RecExpr,
    base_cost: Coefficient,
}

impl UniRecurrence {
    pub fn new(expr: RecExpr, base_cost: Coefficient) -> Result<Self> {
        if expr.recursive_terms().next().is_none() {
            return Err(Error::Validation("relation has no recursive term".into()));
        }
        if expr.free_terms().next().is_none() {
            return Err(Error::Validation("relation has no non-recursive term".into()));
        }
        for t in expr.terms() {
            if !t.coeff.is_positive() {
                return Err(Error::Validation("coefficients must be positive".into()));
            }
        }
        if !base_cost.is_positive() {
            return Err(Error::Validation("base cost must be positive".into()));
        }
        Ok(UniRecurrence { expr, base_cost })
    }

    pub fn expr(&self) -> &RecExpr {
        &self.expr
    }

    pub fn base_cost(&self) -> &Coefficient {
        &self.base_cost
    }

    pub fn is_transcendental(&self) -> bool {
        self.expr.is_transcendental() || self.base_cost.has_euler()
    }
}

/// `T(n,m) = e_part + h(n) * b(m)` with `T(n,1) = h(n) * base_cost`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BiRecurrence {
    e_part: RecExpr,
    h_part: RecExpr,
    b_part: RecExpr,
    base_cost: Coefficient,
}

impl BiRecurrence {
    pub fn new(e_part: RecExpr, h_part: RecExpr, b_part: RecExpr, base_cost: Coefficient) -> Result<Self> {
        if e_part.recursive_terms().next().is_none() {
            return Err(Error::Validation("relation has no recursive term".into()));
        }
        if e_part.free_terms().next().is_some() {
            return Err(Error::Validation(
                "non-recursive cost must be written inside the separable product".into(),
            ));
        }
        if h_part.is_empty() || h_part.terms().iter().any(|t| t.atom.is_recursive() || t.atom == Atom::InvVar) {
            return Err(Error::Validation("h(n) must be a sum of 1, n, ln(n), n*ln(n)".into()));
        }
        if b_part.is_empty() || b_part.terms().iter().any(|t| t.atom.is_recursive()) {
            return Err(Error::Validation("b(m) must be a sum of 1, 1/m, ln(m), m, m*ln(m)".into()));
        }
        for t in e_part.terms().iter().chain(h_part.terms()).chain(b_part.terms()) {
            if !t.coeff.is_positive() {
                return Err(Error::Validation("coefficients must be positive".into()));
            }
        }
        if !base_cost.is_positive() {
            return Err(Error::Validation("base cost must be positive".into()));
        }
        Ok(BiRecurrence { e_part, h_part, b_part, base_cost })
    }

    pub fn e_part(&self) -> &RecExpr {
        &self.e_part
    }

    pub fn h_part(&self) -> &RecExpr {
        &self.h_part
    }

    pub fn b_part(&self) -> &RecExpr {
        &self.b_part
    }

    pub fn base_cost(&self) -> &Coefficient {
        &self.base_cost
    }

    /// The univariate relation in `m` obtained by dropping `n` and setting `h = 1`.
    pub fn reduced(&self) -> Result<UniRecurrence> {
        UniRecurrence::new(self.e_part.concat(&self.b_part), self.base_cost.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Uni(UniRecurrence),
    Bi(BiRecurrence),
}

pub use printer::{atom_text, expr_text};

#[cfg(test)]
mod tests;

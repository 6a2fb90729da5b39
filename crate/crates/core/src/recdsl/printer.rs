use std::fmt;

use num_traits::{One, Zero};

use super::{Atom, BiRecurrence, Coefficient, RecExpr, Relation, UniRecurrence, Var};
use crate::numeric::format_rational;

/// Surface syntax of an atom. `recursive_var` selects the bivariate `T(n, .)` forms.
pub fn atom_text(atom: Atom, var: Var, bivariate: bool) -> String {
    let v = var.name();
    let rec = |arg: String| if bivariate { format!("T(n,{arg})") } else { format!("T({arg})") };
    match atom {
        Atom::One => "1".into(),
        Atom::Var => v.into(),
        Atom::LnVar => format!("ln({v})"),
        Atom::VarLnVar => format!("{v}*ln({v})"),
        Atom::InvVar => format!("1/{v}"),
        Atom::TPred => rec(format!("{v}-1")),
        Atom::TFloorHalf => rec(format!("floor({v}/2)")),
        Atom::TCeilHalf => rec(format!("ceil({v}/2)")),
        Atom::AvgAll => "avg_all(T)".into(),
        Atom::AvgHalves => "avg_halves(T)".into(),
    }
}

fn const_text(c: &Coefficient) -> String {
    let mut parts = Vec::new();
    if !c.rational.is_zero() || c.euler.is_zero() {
        parts.push(format_rational(&c.rational));
    }
    if !c.euler.is_zero() {
        parts.push(if c.euler.is_one() { "e".into() } else { format!("{}*e", format_rational(&c.euler)) });
    }
    parts.join(" + ")
}

/// Renders an expression; a coefficient mixing a rational and an `e` part
/// is written as two terms, which the parser merges back.
pub fn expr_text(expr: &RecExpr, var: Var, bivariate: bool) -> String {
    let mut pieces = Vec::new();
    for t in expr.terms() {
        let atom = atom_text(t.atom, var, bivariate);
        let c = &t.coeff;
        if t.atom == Atom::One {
            if !c.rational.is_zero() {
                pieces.push(format_rational(&c.rational));
            }
            if !c.euler.is_zero() {
                pieces.push(const_text(&Coefficient::euler_multiple(c.euler.clone())));
            }
            continue;
        }
        if !c.rational.is_zero() {
            if c.rational.is_one() {
                pieces.push(atom.clone());
            } else {
                pieces.push(format!("{}*{atom}", format_rational(&c.rational)));
            }
        }
        if !c.euler.is_zero() {
            pieces.push(format!("{}*{atom}", const_text(&Coefficient::euler_multiple(c.euler.clone()))));
        }
    }
    pieces.join(" + ")
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&const_text(self))
    }
}

impl fmt::Display for UniRecurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "rel T(n) = {}", expr_text(self.expr(), Var::N, false))?;
        writeln!(f, "base T(1) = {}", self.base_cost())
    }
}

impl fmt::Display for BiRecurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let h = expr_text(self.h_part(), Var::N, true);
        writeln!(
            f,
            "rel T(n,m) = {} + {{{h}}} * {{{}}}",
            expr_text(self.e_part(), Var::M, true),
            expr_text(self.b_part(), Var::M, true)
        )?;
        writeln!(f, "base T(n,1) = {{{h}}} * {}", self.base_cost())
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Relation::Uni(u) => u.fmt(f),
            Relation::Bi(b) => b.fmt(f),
        }
    }
}

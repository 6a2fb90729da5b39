use num_rational::BigRational;
use num_traits::One;

use super::lexer::{tokenize, Spanned, Tok};
use super::{Atom, BiRecurrence, Coefficient, RecExpr, Relation, Term, UniRecurrence, Var};
use crate::error::{Error, Result};
use crate::numeric::parse_decimal;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Arity {
    Uni,
    Bi,
}

/// What a sub-expression may contain.
#[derive(Clone, Copy)]
struct Scope {
    var: Var,
    arity: Arity,
    recursive: bool,
    free: bool,
}

enum Factor {
    Num(BigRational),
    Euler,
    Var,
    Ln,
    Inv,
    Rec(Atom),
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, expected: &str) -> Result<T> {
        let s = &self.toks[self.pos];
        Err(Error::Syntax {
            line: s.line,
            column: s.column,
            expected: expected.to_string(),
            found: s.tok.describe(),
        })
    }

    fn invalid<T>(&self, at: usize, msg: &str) -> Result<T> {
        let s = &self.toks[at];
        Err(Error::Validation(format!("{msg} (at {}:{})", s.line, s.column)))
    }

    fn expect(&mut self, tok: Tok) -> Result<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.error(&tok.describe())
        }
    }

    fn expect_ident(&mut self, name: &str) -> Result<()> {
        match self.peek() {
            Tok::Ident(s) if s == name => {
                self.bump();
                Ok(())
            }
            _ => self.error(&format!("'{name}'")),
        }
    }

    fn expect_number(&mut self, value: &str) -> Result<()> {
        match self.peek() {
            Tok::Number(s) if parse_decimal(s) == parse_decimal(value) => {
                self.bump();
                Ok(())
            }
            _ => self.error(&format!("'{value}'")),
        }
    }

    fn is_ident(&self, name: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == name)
    }

    fn var(&mut self, var: Var) -> Result<Var> {
        self.expect_ident(var.name())?;
        Ok(var)
    }

    fn number(&mut self) -> Result<BigRational> {
        match self.peek().clone() {
            Tok::Number(s) => match parse_decimal(&s) {
                Some(q) => {
                    self.bump();
                    Ok(q)
                }
                None => self.error("a decimal number"),
            },
            _ => self.error("a decimal number"),
        }
    }

    /// `floor(v/2)` or `ceil(v/2)` after the keyword has been seen.
    fn half(&mut self, var: Var) -> Result<()> {
        self.expect(Tok::LParen)?;
        self.var(var)?;
        self.expect(Tok::Slash)?;
        self.expect_number("2")?;
        self.expect(Tok::RParen)
    }

    /// Argument list of `T(...)`, positioned just after `T(`.
    fn rec_args(&mut self, scope: Scope) -> Result<Atom> {
        let var = match scope.arity {
            Arity::Uni => Var::N,
            Arity::Bi => {
                self.expect_ident("n")?;
                self.expect(Tok::Comma)?;
                Var::M
            }
        };
        let atom = if self.is_ident("floor") {
            self.bump();
            self.half(var)?;
            Atom::TFloorHalf
        } else if self.is_ident("ceil") {
            self.bump();
            self.half(var)?;
            Atom::TCeilHalf
        } else if self.is_ident(var.name()) {
            self.bump();
            self.expect(Tok::Minus)?;
            self.expect_number("1")?;
            Atom::TPred
        } else {
            let what = format!("'{0}-1', 'floor({0}/2)' or 'ceil({0}/2)'", var.name());
            return self.error(&what);
        };
        self.expect(Tok::RParen)?;
        Ok(atom)
    }

    fn factor(&mut self, scope: Scope) -> Result<Factor> {
        match self.peek().clone() {
            Tok::Number(_) => {
                if *self.peek_at(1) == Tok::Slash {
                    self.expect_number("1")
                        .or_else(|_| self.error("'1/' (only reciprocals 1/n, 1/m are supported)"))?;
                    self.bump();
                    self.var(scope.var)?;
                    return Ok(Factor::Inv);
                }
                Ok(Factor::Num(self.number()?))
            }
            Tok::Ident(name) => match name.as_str() {
                "e" => {
                    self.bump();
                    Ok(Factor::Euler)
                }
                "ln" => {
                    self.bump();
                    self.expect(Tok::LParen)?;
                    self.var(scope.var)?;
                    self.expect(Tok::RParen)?;
                    Ok(Factor::Ln)
                }
                "T" => {
                    self.bump();
                    self.expect(Tok::LParen)?;
                    Ok(Factor::Rec(self.rec_args(scope)?))
                }
                "avg_all" | "avg_halves" => {
                    self.bump();
                    self.expect(Tok::LParen)?;
                    self.expect_ident("T")?;
                    self.expect(Tok::RParen)?;
                    Ok(Factor::Rec(if name == "avg_all" { Atom::AvgAll } else { Atom::AvgHalves }))
                }
                v if v == scope.var.name() => {
                    self.bump();
                    Ok(Factor::Var)
                }
                _ => self.error("an atom"),
            },
            _ => self.error("an atom"),
        }
    }

    fn term(&mut self, scope: Scope) -> Result<Term> {
        let start = self.pos;
        let mut factors = vec![self.factor(scope)?];
        while *self.peek() == Tok::Star && *self.peek_at(1) != Tok::LBrace {
            self.bump();
            factors.push(self.factor(scope)?);
        }
        let mut rest = factors.as_slice();
        let coeff = match rest {
            [Factor::Num(q), Factor::Euler, ..] => {
                rest = &rest[2..];
                Some(Coefficient::euler_multiple(q.clone()))
            }
            [Factor::Euler, ..] => {
                rest = &rest[1..];
                Some(Coefficient::euler_multiple(BigRational::one()))
            }
            [Factor::Num(q), ..] => {
                rest = &rest[1..];
                Some(Coefficient::rational(q.clone()))
            }
            _ => None,
        };
        let atom = match rest {
            [] => Atom::One,
            [Factor::Var] => Atom::Var,
            [Factor::Ln] => Atom::LnVar,
            [Factor::Var, Factor::Ln] => Atom::VarLnVar,
            [Factor::Inv] => Atom::InvVar,
            [Factor::Rec(a)] => *a,
            _ => {
                let s = &self.toks[start];
                return Err(Error::Syntax {
                    line: s.line,
                    column: s.column,
                    expected: "CONST, ATOM or CONST*ATOM".into(),
                    found: "an unsupported product".into(),
                });
            }
        };
        if atom.is_recursive() && !scope.recursive {
            return self.invalid(start, "recursive atom not allowed here");
        }
        if !atom.is_recursive() && !scope.free {
            return self.invalid(start, "non-recursive atom not allowed here");
        }
        let coeff = match (coeff, atom) {
            (None, _) => Coefficient::one(),
            (Some(c), Atom::One) => {
                if !c.is_positive() {
                    return self.invalid(start, "constants must be positive");
                }
                c
            }
            (Some(c), _) => {
                if c.compare_to(&BigRational::one()) == Some(std::cmp::Ordering::Less) {
                    return self.invalid(start, "scalar factors must be at least 1");
                }
                c
            }
        };
        Ok(Term { coeff, atom })
    }

    fn expr(&mut self, scope: Scope) -> Result<RecExpr> {
        let mut terms = vec![self.term(scope)?];
        while *self.peek() == Tok::Plus {
            self.bump();
            terms.push(self.term(scope)?);
        }
        Ok(RecExpr::new(terms))
    }

    fn braced(&mut self, scope: Scope) -> Result<RecExpr> {
        self.expect(Tok::LBrace)?;
        let e = self.expr(scope)?;
        self.expect(Tok::RBrace)?;
        Ok(e)
    }

    /// `decimal | e | decimal*e`
    fn constant(&mut self) -> Result<Coefficient> {
        let start = self.pos;
        let c = if self.is_ident("e") {
            self.bump();
            Coefficient::euler_multiple(BigRational::one())
        } else {
            let q = self.number()?;
            if *self.peek() == Tok::Star {
                self.bump();
                self.expect_ident("e")?;
                Coefficient::euler_multiple(q)
            } else {
                Coefficient::rational(q)
            }
        };
        if !c.is_positive() {
            return self.invalid(start, "base cost must be positive");
        }
        Ok(c)
    }

    fn header(&mut self) -> Result<Arity> {
        self.expect_ident("T")?;
        self.expect(Tok::LParen)?;
        self.expect_ident("n")?;
        let arity = if *self.peek() == Tok::Comma {
            self.bump();
            self.expect_ident("m")?;
            Arity::Bi
        } else {
            Arity::Uni
        };
        self.expect(Tok::RParen)?;
        Ok(arity)
    }

    fn relation(&mut self) -> Result<Relation> {
        self.expect_ident("rel")?;
        let arity = self.header()?;
        self.expect(Tok::Equals)?;
        let rel = match arity {
            Arity::Uni => {
                let scope = Scope { var: Var::N, arity, recursive: true, free: true };
                let expr = self.expr(scope)?;
                self.expect_ident("base")?;
                self.expect_ident("T")?;
                self.expect(Tok::LParen)?;
                self.expect_number("1")?;
                self.expect(Tok::RParen)?;
                self.expect(Tok::Equals)?;
                let c = self.constant()?;
                Relation::Uni(UniRecurrence::new(expr, c)?)
            }
            Arity::Bi => {
                let e_scope = Scope { var: Var::M, arity, recursive: true, free: false };
                let h_scope = Scope { var: Var::N, arity, recursive: false, free: true };
                let b_scope = Scope { var: Var::M, arity, recursive: false, free: true };
                let mut e_terms = Vec::new();
                let mut product: Option<(RecExpr, RecExpr)> = None;
                loop {
                    if *self.peek() == Tok::LBrace {
                        let at = self.pos;
                        let h = self.braced(h_scope)?;
                        self.expect(Tok::Star)?;
                        let b = self.braced(b_scope)?;
                        if product.replace((h, b)).is_some() {
                            return self.invalid(at, "only one separable product {h} * {b} is allowed");
                        }
                    } else {
                        e_terms.push(self.term(e_scope)?);
                    }
                    if *self.peek() != Tok::Plus {
                        break;
                    }
                    self.bump();
                }
                let Some((h, b)) = product else {
                    return self.error("a separable product '{h(n)} * {b(m)}'");
                };
                self.expect_ident("base")?;
                self.expect_ident("T")?;
                self.expect(Tok::LParen)?;
                self.expect_ident("n")?;
                self.expect(Tok::Comma)?;
                self.expect_number("1")?;
                self.expect(Tok::RParen)?;
                self.expect(Tok::Equals)?;
                let at = self.pos;
                let base_h = self.braced(h_scope)?;
                if base_h != h {
                    return self.invalid(at, "base case must use the same h(n) as the relation");
                }
                self.expect(Tok::Star)?;
                let c = self.constant()?;
                Relation::Bi(BiRecurrence::new(RecExpr::new(e_terms), h, b, c)?)
            }
        };
        if *self.peek() != Tok::Eof {
            return self.error("end of input");
        }
        Ok(rel)
    }
}

/// Parses a `.rec` document holding either a univariate or a bivariate relation.
pub fn parse_relation(src: &str) -> Result<Relation> {
    let toks = tokenize(src)?;
    Parser { toks, pos: 0 }.relation()
}

pub fn parse_uni(src: &str) -> Result<UniRecurrence> {
    match parse_relation(src)? {
        Relation::Uni(u) => Ok(u),
        Relation::Bi(_) => Err(Error::Validation("expected a univariate relation T(n)".into())),
    }
}

pub fn parse_bi(src: &str) -> Result<BiRecurrence> {
    match parse_relation(src)? {
        Relation::Bi(b) => Ok(b),
        Relation::Uni(_) => Err(Error::Validation("expected a bivariate relation T(n,m)".into())),
    }
}

//! Dynamic-programming evaluation of recurrences and the empirical constants `d_z`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::numeric::{self, format_rational, Interval, LnSeq, Milli};
use crate::overapprox::BoundShape;
use crate::recdsl::{Atom, BiRecurrence, Coefficient, RecExpr, UniRecurrence};

/// Number representation used by the evaluator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Arithmetic {
    /// Exact rationals for small tables of purely rational relations, enclosures otherwise.
    Auto,
    /// Exact rationals; relations with `ln` or `e` are rejected.
    Exact,
    /// Outward-rounded intervals at the configured precision.
    Enclosure,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalConfig {
    pub arithmetic: Arithmetic,
    /// Significant bits of every interval endpoint.
    pub precision: u32,
    /// Largest table the evaluator will build.
    pub max_entries: u64,
}

impl EvalConfig {
    pub const DEFAULT_MAX_ENTRIES: u64 = 10_000_000;
    /// Above this size `Auto` switches to enclosures: exact denominators grow like lcm(1..n).
    pub const AUTO_EXACT_LIMIT: u64 = 2048;

    pub fn enclosure(precision: u32) -> Self {
        EvalConfig { arithmetic: Arithmetic::Enclosure, precision, ..EvalConfig::default() }
    }
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            arithmetic: Arithmetic::Auto,
            precision: numeric::configured_precision(),
            max_entries: EvalConfig::DEFAULT_MAX_ENTRIES,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Exact(BigRational),
    Enclosure(Interval),
}

impl Value {
    pub fn to_interval(&self, prec: u32) -> Interval {
        match self {
            Value::Exact(q) => Interval::from_rational(q, prec),
            Value::Enclosure(iv) => iv.clone(),
        }
    }

    pub fn upper(&self) -> BigRational {
        match self {
            Value::Exact(q) => q.clone(),
            Value::Enclosure(iv) => iv.hi().to_rational(),
        }
    }

    pub fn lower(&self) -> BigRational {
        match self {
            Value::Exact(q) => q.clone(),
            Value::Enclosure(iv) => iv.lo().to_rational(),
        }
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            Value::Exact(q) => Some(q),
            Value::Enclosure(_) => None,
        }
    }

    pub fn midpoint_f64(&self) -> f64 {
        match self {
            Value::Exact(q) => numeric::rational_to_f64(q),
            Value::Enclosure(iv) => iv.midpoint_f64(),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(q) => f.write_str(&format_rational(q)),
            Value::Enclosure(iv) => iv.fmt(f),
        }
    }
}

/// `values[i]` holds the value at argument `i + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalTable {
    values: Vec<Value>,
}

impl EvalTable {
    /// Value at argument `n >= 1`.
    pub fn get(&self, n: u64) -> Option<&Value> {
        n.checked_sub(1).and_then(|i| self.values.get(i as usize))
    }

    pub fn limit(&self) -> u64 {
        self.values.len() as u64
    }

    pub fn values(&self) -> &[Value] {
        &self.values
    }

    pub fn is_exact(&self) -> bool {
        self.values.iter().all(|v| matches!(v, Value::Exact(_)))
    }
}

/// The few operations the DP needs, implemented for exact and enclosed numbers.
trait Num: Clone {
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div_int(&self, n: u64) -> Self;
    fn into_value(self) -> Value;
}

impl Num for BigRational {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div_int(&self, n: u64) -> Self {
        self / BigRational::from_integer(BigInt::from(n))
    }
    fn into_value(self) -> Value {
        Value::Exact(self)
    }
}

impl Num for Interval {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div_int(&self, n: u64) -> Self {
        self / &Interval::from_int(n, self.prec())
    }
    fn into_value(self) -> Value {
        Value::Enclosure(self)
    }
}

/// Runs `T(1) = base`, `T(n) = free(n) + Σ coeff * atom(T)(n)`.
fn run<V: Num>(
    recursive: &[(V, Atom)],
    base: V,
    zero: V,
    upto: u64,
    mut free: impl FnMut(u64) -> V,
) -> Vec<Value> {
    let mut vals: Vec<V> = Vec::with_capacity(upto as usize);
    // prefix[k] = T(1) + ... + T(k)
    let mut prefix: Vec<V> = Vec::with_capacity(upto as usize + 1);
    prefix.push(zero);
    prefix.push(base.clone());
    vals.push(base);
    for n in 2..=upto {
        let at = |k: u64| &vals[k as usize - 1];
        let mut v = free(n);
        for (c, atom) in recursive {
            let t = match atom {
                Atom::TPred => at(n - 1).clone(),
                Atom::TFloorHalf => at(n / 2).clone(),
                Atom::TCeilHalf => at(n.div_ceil(2)).clone(),
                Atom::AvgAll => prefix[n as usize - 1].div_int(n),
                Atom::AvgHalves => {
                    let all = &prefix[n as usize - 1];
                    let upper_half = all.sub(&prefix[n.div_ceil(2) as usize - 1]);
                    let lower_half = all.sub(&prefix[(n / 2) as usize - 1]);
                    upper_half.add(&lower_half).div_int(n)
                }
                _ => unreachable!("non-recursive atom in recursive part"),
            };
            v = v.add(&c.mul(&t));
        }
        prefix.push(prefix[n as usize - 1].add(&v));
        vals.push(v);
    }
    vals.into_iter().map(Num::into_value).collect()
}

fn exact_coeff(c: &Coefficient) -> Result<BigRational> {
    if c.has_euler() {
        return Err(Error::InvalidArgument("exact arithmetic requested for a relation containing e".into()));
    }
    Ok(c.rational.clone())
}

fn coeff_interval(c: &Coefficient, prec: u32) -> Interval {
    let r = Interval::from_rational(&c.rational, prec);
    if c.euler.is_zero() {
        r
    } else {
        &r + &(&Interval::from_rational(&c.euler, prec) * &numeric::euler(prec))
    }
}

fn free_atom_exact(atom: Atom, n: u64) -> BigRational {
    let nn = BigRational::from_integer(BigInt::from(n));
    match atom {
        Atom::One => BigRational::from_integer(1.into()),
        Atom::Var => nn,
        Atom::InvVar => nn.recip(),
        _ => unreachable!("logarithmic or recursive atom in exact evaluation"),
    }
}

fn free_atom_interval(atom: Atom, n: u64, ln_n: &Interval) -> Interval {
    let prec = ln_n.prec();
    let nn = Interval::from_int(n, prec);
    match atom {
        Atom::One => Interval::from_int(1, prec),
        Atom::Var => nn,
        Atom::LnVar => ln_n.clone(),
        Atom::VarLnVar => &nn * ln_n,
        Atom::InvVar => nn.recip(),
        _ => unreachable!("recursive atom in free part"),
    }
}

/// Evaluates the free part of `expr` at successive arguments.
struct FreePart {
    exact: Vec<(BigRational, Atom)>,
    enclosed: Vec<(Interval, Atom)>,
    logs: Option<LnSeq>,
    prec: u32,
}

impl FreePart {
    fn new(expr: &RecExpr, prec: u32, horizon: u64, exact: bool) -> Result<Self> {
        let mut fp = FreePart { exact: Vec::new(), enclosed: Vec::new(), logs: None, prec };
        for t in expr.free_terms() {
            if exact {
                fp.exact.push((exact_coeff(&t.coeff)?, t.atom));
            } else {
                fp.enclosed.push((coeff_interval(&t.coeff, prec), t.atom));
            }
        }
        if !exact && expr.free_terms().any(|t| t.atom.has_log()) {
            let mut logs = LnSeq::new(prec, horizon);
            logs.next();
            fp.logs = Some(logs);
        }
        Ok(fp)
    }

    fn exact_at(&self, n: u64) -> BigRational {
        self.exact.iter().map(|(c, a)| c * free_atom_exact(*a, n)).sum()
    }

    /// Must be called with consecutive `n = 2, 3, ...`.
    fn enclosed_next(&mut self, n: u64) -> Interval {
        let ln_n = match self.logs.as_mut() {
            Some(logs) => logs.next().expect("endless sequence"),
            None => Interval::zero(self.prec),
        };
        self.enclosed
            .iter()
            .fold(Interval::zero(self.prec), |acc, (c, a)| &acc + &(c * &free_atom_interval(*a, n, &ln_n)))
    }
}

fn check_cap(upto: u64, config: &EvalConfig) -> Result<()> {
    if upto == 0 {
        return Err(Error::InvalidArgument("tables start at argument 1".into()));
    }
    if upto > config.max_entries {
        return Err(Error::Resource(format!(
            "table of {upto} entries exceeds the cap of {}",
            config.max_entries
        )));
    }
    Ok(())
}

fn use_exact(transcendental: bool, upto: u64, config: &EvalConfig) -> Result<bool> {
    match config.arithmetic {
        Arithmetic::Exact if transcendental => {
            Err(Error::InvalidArgument("exact arithmetic requested for a relation with ln or e".into()))
        }
        Arithmetic::Exact => Ok(true),
        Arithmetic::Enclosure => Ok(false),
        Arithmetic::Auto => Ok(!transcendental && upto <= EvalConfig::AUTO_EXACT_LIMIT),
    }
}

/// Runs the DP for `expr` with extra free cost `scale * free(j)` and base `base`.
fn eval_expr(expr: &RecExpr, base: &Coefficient, transcendental: bool, upto: u64, config: &EvalConfig) -> Result<EvalTable> {
    check_cap(upto, config)?;
    let prec = config.precision;
    let values = if use_exact(transcendental, upto, config)? {
        let rec: Vec<(BigRational, Atom)> =
            expr.recursive_terms().map(|t| Ok((exact_coeff(&t.coeff)?, t.atom))).collect::<Result<_>>()?;
        let free = FreePart::new(expr, prec, upto, true)?;
        run(&rec, exact_coeff(base)?, BigRational::zero(), upto, |n| free.exact_at(n))
    } else {
        let rec: Vec<(Interval, Atom)> =
            expr.recursive_terms().map(|t| (coeff_interval(&t.coeff, prec), t.atom)).collect();
        let mut free = FreePart::new(expr, prec, upto, false)?;
        run(&rec, coeff_interval(base, prec), Interval::zero(prec), upto, |n| free.enclosed_next(n))
    };
    Ok(EvalTable { values })
}

/// `Eval(G)(1..=upto)`.
pub fn eval_uni(rec: &UniRecurrence, upto: u64, config: &EvalConfig) -> Result<EvalTable> {
    eval_expr(rec.expr(), rec.base_cost(), rec.is_transcendental(), upto, config)
}

fn h_value(rec: &BiRecurrence, n: u64, prec: u32) -> Interval {
    let mut logs = LnSeq::new(prec, n);
    let ln_n = logs.nth(n as usize - 1).expect("endless sequence");
    rec.h_part()
        .terms()
        .iter()
        .fold(Interval::zero(prec), |acc, t| &acc + &(&coeff_interval(&t.coeff, prec) * &free_atom_interval(t.atom, n, &ln_n)))
}

fn h_exact(rec: &BiRecurrence, n: u64) -> Result<BigRational> {
    rec.h_part().terms().iter().map(|t| Ok(exact_coeff(&t.coeff)? * free_atom_exact(t.atom, n))).sum()
}

fn bi_transcendental(rec: &BiRecurrence) -> bool {
    rec.e_part().is_transcendental()
        || rec.h_part().is_transcendental()
        || rec.b_part().is_transcendental()
        || rec.base_cost().has_euler()
}

/// Row `T_G(n, 1..=upto)` of the two-dimensional solution, computed directly:
/// `T(n,1) = h(n) c` and `T(n,m) = Subst(e, T)(n,m) + h(n) b(m)`.
pub fn eval_bi(rec: &BiRecurrence, n: u64, upto: u64, config: &EvalConfig) -> Result<EvalTable> {
    check_cap(upto, config)?;
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let prec = config.precision;
    let values = if use_exact(bi_transcendental(rec), upto, config)? {
        let h = h_exact(rec, n)?;
        let rec_terms: Vec<(BigRational, Atom)> =
            rec.e_part().recursive_terms().map(|t| Ok((exact_coeff(&t.coeff)?, t.atom))).collect::<Result<_>>()?;
        let b = FreePart::new(rec.b_part(), prec, upto, true)?;
        let base = &h * exact_coeff(rec.base_cost())?;
        run(&rec_terms, base, BigRational::zero(), upto, |m| &h * b.exact_at(m))
    } else {
        let h = h_value(rec, n, prec);
        let rec_terms: Vec<(Interval, Atom)> =
            rec.e_part().recursive_terms().map(|t| (coeff_interval(&t.coeff, prec), t.atom)).collect();
        let mut b = FreePart::new(rec.b_part(), prec, upto, false)?;
        let base = &h * &coeff_interval(rec.base_cost(), prec);
        run(&rec_terms, base, Interval::zero(prec), upto, |m| &h * &b.enclosed_next(m))
    };
    Ok(EvalTable { values })
}

/// `T_G(n, m)` by the direct two-dimensional recursion.
pub fn eval_bi_at(rec: &BiRecurrence, n: u64, m: u64, config: &EvalConfig) -> Result<Value> {
    let table = eval_bi(rec, n, m, config)?;
    Ok(table.get(m).expect("row covers m").clone())
}

/// `h(n)` of a bivariate relation, exact when possible.
pub fn h_at(rec: &BiRecurrence, n: u64, prec: u32) -> Value {
    if !rec.h_part().is_transcendental() {
        if let Ok(q) = h_exact(rec, n) {
            return Value::Exact(q);
        }
    }
    Value::Enclosure(h_value(rec, n, prec))
}

/// Certified upper bound of `max { (T(n) - c) / f(n) : 2 <= n < limit }`, or zero when
/// no argument exceeds the base cost.
pub fn ratio_max(table: &EvalTable, base: &Coefficient, f: BoundShape, limit: u64, prec: u32) -> Result<BigRational> {
    if limit > table.limit() + 1 {
        return Err(Error::InvalidArgument(format!(
            "table covers 1..={} but arguments below {limit} were requested",
            table.limit()
        )));
    }
    let c = coeff_interval(base, prec);
    let mut best = BigRational::zero();
    let mut logs = LnSeq::new(prec, limit);
    logs.next();
    for n in 2..limit {
        let ln_n = logs.next().expect("endless sequence");
        let v = table.get(n).expect("within table").to_interval(prec);
        let excess = &v - &c;
        if !excess.hi().is_negative() && !excess.hi().is_zero() {
            let r = (&excess / &f.eval(n, &ln_n)).hi().to_rational();
            if r > best {
                best = r;
            }
        }
    }
    Ok(best)
}

/// `d_z`: the largest observed `(T(n) - c)/f(n)` over `2 <= n < z`, rounded up at 1e-3.
///
/// The range is half-open, the same range the synthesis prefix check scans below `N`.
pub fn d_z(rec: &UniRecurrence, f: BoundShape, z: u64, config: &EvalConfig) -> Result<Milli> {
    if z < 2 {
        return Err(Error::InvalidArgument("z must be at least 2".into()));
    }
    let cfg = EvalConfig { arithmetic: Arithmetic::Enclosure, ..config.clone() };
    let table = eval_uni(rec, z.max(2), &cfg)?;
    Ok(Milli::above(&ratio_max(&table, rec.base_cost(), f, z, config.precision)?))
}

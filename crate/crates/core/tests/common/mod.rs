//! Independent oracles shared by the integration tests and the acceptance gate.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use rtbound_core::analyzer::{ratio_limit, uni_synth, AnalysisConfig, AnalysisResult, Verdict};
use rtbound_core::corpus::{corpus_list, sort_select_with, synthesize_entry, table_epsilons, CorpusEntry, CorpusId};
use rtbound_core::evalcore::{eval_bi, eval_uni, h_at, Arithmetic, EvalConfig, Value};
use rtbound_core::numeric::{self, format_rational, Interval, LnSeq};
use rtbound_core::overapprox::{ovap, BoundShape, Constants, PropSweep};
use rtbound_core::pseudopoly::{Endpoint, ExtPoly, PseudoPoly};
use rtbound_core::recdsl::{Atom, BiRecurrence, Coefficient, Relation, UniRecurrence};

/// Working precision of the oracles, well above the analysis precision.
pub const HI: u32 = 124;

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn int(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// A value known as `exact + approx`, keeping rational parts exact so that
/// ties between rational quantities are decided exactly.
#[derive(Clone, Debug)]
pub struct Mixed {
    pub exact: BigRational,
    pub approx: Interval,
}

impl Mixed {
    pub fn zero() -> Self {
        Mixed { exact: BigRational::zero(), approx: Interval::zero(HI) }
    }

    pub fn exact(q: BigRational) -> Self {
        Mixed { exact: q, approx: Interval::zero(HI) }
    }

    pub fn approx(iv: Interval) -> Self {
        Mixed { exact: BigRational::zero(), approx: iv }
    }

    pub fn add(&self, o: &Mixed) -> Mixed {
        Mixed { exact: &self.exact + &o.exact, approx: &self.approx + &o.approx }
    }

    pub fn sub(&self, o: &Mixed) -> Mixed {
        Mixed { exact: &self.exact - &o.exact, approx: &self.approx - &o.approx }
    }

    pub fn scale(&self, q: &BigRational) -> Mixed {
        Mixed { exact: &self.exact * q, approx: &self.approx * &Interval::from_rational(q, HI) }
    }

    /// Multiplication by a relation coefficient `r + k·e`.
    pub fn mul_coeff(&self, c: &Coefficient) -> Mixed {
        let r = self.scale(&c.rational);
        if c.euler.is_zero() {
            return r;
        }
        let ke = &Interval::from_rational(&c.euler, HI) * &numeric::euler(HI);
        let whole = &Interval::from_rational(&self.exact, HI) + &self.approx;
        Mixed { exact: r.exact, approx: &r.approx + &(&ke * &whole) }
    }

    /// Certified `self >= 0`.
    pub fn certainly_nonnegative(&self) -> bool {
        if self.approx.is_point() && self.approx.lo().to_rational().is_zero() {
            return !self.exact.is_negative();
        }
        (&Interval::from_rational(&self.exact, HI) + &self.approx).lo().to_rational() >= BigRational::zero()
    }

    pub fn to_f64(&self) -> f64 {
        numeric::rational_to_f64(&self.exact) + self.approx.midpoint_f64()
    }
}

/// `f(j)` for `j = 0..=limit` (entry 0 unused), with `ln j` enclosed at `HI` bits.
pub fn shape_values(f: BoundShape, limit: u64) -> Vec<Mixed> {
    let mut out = vec![Mixed::zero()];
    let mut logs = LnSeq::new(HI, limit);
    for j in 1..=limit {
        let ln_j = logs.next().expect("endless sequence");
        out.push(match f {
            BoundShape::LogN => Mixed::approx(ln_j),
            BoundShape::Linear => Mixed::exact(int(j)),
            BoundShape::NLogN => Mixed::approx(&Interval::from_int(j, HI) * &ln_j),
        });
    }
    out
}

/// `Subst(e, d·f + c)(n)` for `n = 2..=limit` by literal summation over `h(j) = d·f(j) + c`.
pub fn literal_subst(rec: &UniRecurrence, f: BoundShape, d: &BigRational, limit: u64) -> Vec<(u64, Mixed)> {
    let fv = shape_values(f, limit);
    let base = rec.base_cost();
    let h: Vec<Mixed> = fv
        .iter()
        .map(|v| v.scale(d).add(&Mixed::exact(BigRational::one()).mul_coeff(base)))
        .collect();
    // prefix[k] = h(1) + ... + h(k)
    let mut prefix = vec![Mixed::zero()];
    for j in 1..=limit as usize {
        prefix.push(prefix[j - 1].add(&h[j]));
    }
    let sum_range = |lo: u64, hi: u64| prefix[hi as usize].sub(&prefix[lo as usize - 1]);
    let mut logs = LnSeq::new(HI, limit);
    logs.next();
    (2..=limit)
        .map(|n| {
            let ln_n = logs.next().expect("endless sequence");
            let inv_n = rat(1, n as i64);
            let mut acc = Mixed::zero();
            for t in rec.expr().terms() {
                let v = match t.atom {
                    Atom::One => Mixed::exact(BigRational::one()),
                    Atom::Var => Mixed::exact(int(n)),
                    Atom::LnVar => Mixed::approx(ln_n.clone()),
                    Atom::VarLnVar => Mixed::approx(&Interval::from_int(n, HI) * &ln_n),
                    Atom::InvVar => Mixed::exact(inv_n.clone()),
                    Atom::TPred => h[n as usize - 1].clone(),
                    Atom::TFloorHalf => h[(n / 2) as usize].clone(),
                    Atom::TCeilHalf => h[n.div_ceil(2) as usize].clone(),
                    Atom::AvgAll => sum_range(1, n - 1).scale(&inv_n),
                    Atom::AvgHalves => sum_range(n.div_ceil(2), n - 1).add(&sum_range(n / 2, n - 1)).scale(&inv_n),
                };
                acc = acc.add(&v.mul_coeff(&t.coeff));
            }
            (n, acc)
        })
        .collect()
}

/// Value of a polynomial with rational coefficients at `n`, log terms enclosed.
pub fn ext_value(p: &ExtPoly, n: u64, ln_n: &Interval) -> Mixed {
    let mut acc = Mixed::zero();
    for (m, c) in p.terms() {
        let c = c.as_rational().expect("resolved coefficient");
        let pw = |base: u64, e: i32| {
            let v = num_traits::pow(int(base), e.unsigned_abs() as usize);
            if e >= 0 { v } else { v.recip() }
        };
        let v = c * pw(n, m.a) * pw(n - 1, m.b);
        acc = acc.add(&if m.log { Mixed::approx(&Interval::from_rational(&v, HI) * ln_n) } else { Mixed::exact(v) });
    }
    acc
}

/// `OvAp(e, d·f + c)(n)` with every constant committed upward.
pub fn resolved_ovap(rec: &UniRecurrence, f: BoundShape, consts: &Constants) -> (ExtPoly, ExtPoly) {
    let ov = ovap(rec.expr(), f);
    (ov.p_d.resolve(consts, Endpoint::Upper), ov.p_c(rec.base_cost()).resolve(consts, Endpoint::Upper))
}

/// Failures of `OvAp >= Subst` for `n` in `2..=limit`.
pub fn dominance_failures(rec: &UniRecurrence, f: BoundShape, d: &BigRational, limit: u64, consts: &Constants) -> Vec<String> {
    let (p_d, p_c) = resolved_ovap(rec, f, consts);
    let mut logs = LnSeq::new(HI, limit);
    logs.next();
    let mut out = Vec::new();
    for (n, subst) in literal_subst(rec, f, d, limit) {
        let ln_n = logs.next().expect("endless sequence");
        let over = ext_value(&p_d, n, &ln_n).scale(d).add(&ext_value(&p_c, n, &ln_n));
        if !over.sub(&subst).certainly_nonnegative() {
            out.push(format!("{f:?} d={} n={n}: ovap {} < subst {}", format_rational(d), over.to_f64(), subst.to_f64()));
        }
    }
    out
}

/// A synthesized bound `T(n) <= d·f(n) + c` for a univariate relation.
#[derive(Clone, Debug)]
pub struct SynthCase {
    pub name: String,
    pub entry: CorpusId,
    pub rec: UniRecurrence,
    pub bi: Option<BiRecurrence>,
    pub shape: BoundShape,
    pub eps: BigRational,
    pub result: AnalysisResult,
}

/// Every accepted (entry, ε) synthesis of the corpus, including Sort-by-Select
/// both with the frozen selection bound and with the bound chained per ε.
pub fn synthesized_cases() -> Vec<SynthCase> {
    let cfg = AnalysisConfig::default();
    let mut cases = Vec::new();
    for entry in corpus_list() {
        let rec = entry.univariate().expect("reduces");
        let bi = match &entry.relation {
            Relation::Bi(b) => Some(b.clone()),
            Relation::Uni(_) => None,
        };
        for eps in table_epsilons() {
            if let Ok(result) = uni_synth(&rec, entry.shape, &eps, &cfg) {
                if result.verdict == Verdict::Yes {
                    cases.push(SynthCase {
                        name: format!("{} eps={}", entry.id, format_rational(&eps)),
                        entry: entry.id,
                        rec: rec.clone(),
                        bi: bi.clone(),
                        shape: entry.shape,
                        eps: eps.clone(),
                        result,
                    });
                }
            }
            if entry.id == CorpusId::SortSel {
                cases.extend(chained_sort_select(&entry, &eps, &cfg));
            }
        }
    }
    cases
}

fn chained_sort_select(entry: &CorpusEntry, eps: &BigRational, cfg: &AnalysisConfig) -> Option<SynthCase> {
    let result = synthesize_entry(entry, eps, cfg).ok()?;
    let select = rtbound_core::corpus::corpus_entry(CorpusId::QSelect);
    let d = uni_synth(&select.univariate().ok()?, select.shape, eps, cfg).ok()?.d?;
    Some(SynthCase {
        name: format!("sort_sel chained eps={}", format_rational(eps)),
        entry: CorpusId::SortSel,
        rec: sort_select_with(d),
        bi: None,
        shape: entry.shape,
        eps: eps.clone(),
        result,
    })
}

fn coeff_interval(c: &Coefficient, prec: u32) -> Interval {
    let r = Interval::from_rational(&c.rational, prec);
    if c.euler.is_zero() {
        r
    } else {
        &r + &(&Interval::from_rational(&c.euler, prec) * &numeric::euler(prec))
    }
}

/// Failures of `Eval(G)(n) <= d·f(n) + c` for `2 <= n <= limit`.
pub fn soundness_failures(case: &SynthCase, limit: u64) -> Vec<String> {
    grouped_soundness_failures(&[case], limit)
}

/// Soundness for cases sharing one recurrence: a single table and log sequence serve every bound.
pub fn grouped_soundness_failures(cases: &[&SynthCase], limit: u64) -> Vec<String> {
    const CHECK_PREC: u32 = 64;
    let Some(first) = cases.first() else { return Vec::new() };
    assert!(cases.iter().all(|c| c.rec == first.rec), "cases must share a recurrence");
    let table = eval_uni(&first.rec, limit, &EvalConfig::enclosure(numeric::DEFAULT_PRECISION)).expect("table");
    let c = coeff_interval(first.rec.base_cost(), CHECK_PREC);
    let ds: Vec<Interval> =
        cases.iter().map(|k| Interval::from_rational(&k.result.d.expect("synthesized").to_rational(), CHECK_PREC)).collect();
    let mut logs = LnSeq::new(CHECK_PREC, limit);
    logs.next();
    let mut out = Vec::new();
    for n in 2..=limit {
        let ln_n = logs.next().expect("endless sequence");
        let t = table.get(n).expect("in table").to_interval(CHECK_PREC);
        for (case, d) in cases.iter().zip(&ds) {
            let b = &(d * &case.shape.eval(n, &ln_n)) + &c;
            if !t.certainly_le(&b) && out.len() < 6 {
                out.push(format!("{} n={n}: T={} bound={}", case.name, t, b));
            }
        }
    }
    out
}

/// Cases grouped by recurrence, in first-seen order.
pub fn group_by_recurrence(cases: &[SynthCase]) -> Vec<Vec<&SynthCase>> {
    let mut groups: Vec<Vec<&SynthCase>> = Vec::new();
    for case in cases {
        match groups.iter_mut().find(|g| g[0].rec == case.rec) {
            Some(g) => g.push(case),
            None => groups.push(vec![case]),
        }
    }
    groups
}

/// Failures of `T(n,m) <= d·h(n)·f(m) + c·h(n)` for `1 <= n, m <= limit`.
pub fn bivariate_soundness_failures(case: &SynthCase, limit: u64) -> Vec<String> {
    let bi = case.bi.as_ref().expect("bivariate case");
    let d = case.result.d.expect("synthesized").to_rational();
    let cfg = EvalConfig::enclosure(numeric::DEFAULT_PRECISION);
    let c = coeff_interval(bi.base_cost(), 96);
    let fm: Vec<Interval> = LnSeq::new(96, limit).take(limit as usize).zip(1..).map(|(l, m)| case.shape.eval(m, &l)).collect();
    let mut out = Vec::new();
    for n in 1..=limit {
        let h = h_at(bi, n, 96).to_interval(96);
        let row = eval_bi(bi, n, limit, &cfg).expect("row");
        for m in 1..=limit {
            let t = row.get(m).expect("in row").to_interval(96);
            let fd = &Interval::from_rational(&d, 96) * &fm[m as usize - 1];
            let b = &(&h * &fd) + &(&h * &c);
            if !t.certainly_le(&b) {
                out.push(format!("{} (n,m)=({n},{m}): T={t} bound={b}", case.name));
            }
        }
    }
    out
}

/// Certified `q(n)/p(n) <= bound` with `p(n) > 0`.
pub fn ratio_within(p: &PseudoPoly, q: &PseudoPoly, n: u64, bound: &BigRational) -> bool {
    let ln_n = numeric::ln_int(n, HI);
    let value = |poly: &PseudoPoly| {
        let nn = int(n);
        let horner = |cs: &[BigRational]| cs.iter().rev().fold(BigRational::zero(), |acc, c| acc * &nn + c);
        Mixed { exact: horner(poly.plain_coeffs()), approx: &Interval::from_rational(&horner(poly.log_coeffs()), HI) * &ln_n }
    };
    let pv = value(p);
    let qv = value(q);
    let p_positive = pv.certainly_nonnegative() && pv.to_f64() > 0.0;
    p_positive && pv.scale(bound).sub(&qv).certainly_nonnegative()
}

/// Ratio bound `q/p <= (limit + ε)/(1-ε)` at `n ∈ {N, 2N, 10N, 10^6}` for one synthesized case.
pub fn threshold_failures(case: &SynthCase) -> Vec<String> {
    let r = &case.result;
    let n0 = r.threshold_n.expect("synthesized");
    let bound = (ratio_limit(&r.p, &r.q) + &case.eps) / (BigRational::one() - &case.eps);
    [n0, 2 * n0, 10 * n0, 1_000_000]
        .into_iter()
        .filter(|&n| !ratio_within(&r.p, &r.q, n, &bound))
        .map(|n| format!("{} n={n}: q/p exceeds {}", case.name, numeric::rational_to_f64(&bound)))
        .collect()
}

/// Direct 2-D solution against `h(n)·T_Uni(m)` for `1 <= n, m <= limit`.
pub fn product_form_failures(bi: &BiRecurrence, limit: u64) -> Vec<String> {
    let p = numeric::DEFAULT_PRECISION;
    let uni = bi.reduced().expect("reduces");
    let auto = EvalConfig { arithmetic: Arithmetic::Auto, precision: p, ..EvalConfig::default() };
    let reduced = eval_uni(&uni, limit, &auto).expect("reduced table");
    let direct_cfg = EvalConfig { precision: p + 64, ..auto.clone() };
    let mut out = Vec::new();
    for n in 1..=limit {
        let row = eval_bi(bi, n, limit, &direct_cfg).expect("row");
        let h = h_at(bi, n, p);
        for m in 1..=limit {
            let direct = row.get(m).expect("in row");
            let reduced_m = reduced.get(m).expect("in table");
            let ok = match (direct, reduced_m, &h) {
                (Value::Exact(a), Value::Exact(b), Value::Exact(hn)) => *a == b * hn,
                _ => {
                    let product = &h.to_interval(p) * &reduced_m.to_interval(p);
                    product.encloses(&direct.to_interval(p + 64))
                }
            };
            if !ok {
                out.push(format!("(n,m)=({n},{m}): direct {direct} vs product"));
            }
        }
    }
    out
}

/// Logarithmic and harmonic sum oracle failures at `2..=dense` and the sparse points.
pub fn proposition_failures(dense: u64, sparse: &[u64]) -> Vec<String> {
    let horizon = sparse.iter().copied().max().unwrap_or(dense).max(dense);
    let mut sweep = PropSweep::new(horizon);
    (2..=dense)
        .chain(sparse.iter().copied())
        .flat_map(|n| {
            let report = sweep.report_at(n);
            report.failures().map(|c| format!("n={n}: {} ({})", c.name, c.value)).collect::<Vec<_>>()
        })
        .collect()
}

/// `plain + ln_coeff · ln n` at a fixed `n`, both parts exact.
#[derive(Clone, Debug, PartialEq)]
pub struct LogLinear {
    pub n: u64,
    pub plain: BigRational,
    pub ln_coeff: BigRational,
}

impl LogLinear {
    pub fn of_poly(p: &ExtPoly, n: u64) -> Self {
        let mut out = LogLinear { n, plain: BigRational::zero(), ln_coeff: BigRational::zero() };
        for (m, c) in p.terms() {
            let pw = |base: u64, e: i32| {
                let v = num_traits::pow(int(base), e.unsigned_abs() as usize);
                if e >= 0 { v } else { v.recip() }
            };
            let v = c.as_rational().expect("resolved coefficient") * pw(n, m.a) * pw(n - 1, m.b);
            if m.log {
                out.ln_coeff += v;
            } else {
                out.plain += v;
            }
        }
        out
    }

    pub fn of_shape(f: BoundShape, n: u64) -> Self {
        let (plain, ln_coeff) = match f {
            BoundShape::LogN => (BigRational::zero(), BigRational::one()),
            BoundShape::Linear => (int(n), BigRational::zero()),
            BoundShape::NLogN => (BigRational::zero(), int(n)),
        };
        LogLinear { n, plain, ln_coeff }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        LogLinear { n: self.n, plain: &self.plain * q, ln_coeff: &self.ln_coeff * q }
    }

    pub fn add(&self, o: &LogLinear) -> Self {
        LogLinear { n: self.n, plain: &self.plain + &o.plain, ln_coeff: &self.ln_coeff + &o.ln_coeff }
    }

    pub fn sub(&self, o: &LogLinear) -> Self {
        self.add(&o.scale(&-BigRational::one()))
    }

    pub fn certainly_nonnegative(&self) -> bool {
        if self.ln_coeff.is_zero() {
            return !self.plain.is_negative();
        }
        let ln_n = numeric::ln_int(self.n, HI);
        let v = &Interval::from_rational(&self.plain, HI) + &(&Interval::from_rational(&self.ln_coeff, HI) * &ln_n);
        v.lo().to_rational() >= BigRational::zero()
    }
}

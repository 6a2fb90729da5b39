//! Decision and synthesis of bounds `T(n) <= d·f(n) + c`, and their bivariate wrappers.

mod threshold;

#[cfg(test)]
mod tests;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evalcore::{eval_uni, ratio_max, EvalConfig};
use crate::numeric::Milli;
use crate::overapprox::{ovap, BoundShape, Constants};
use crate::pseudopoly::{to_inequality, PseudoPoly};
use crate::recdsl::{expr_text, BiRecurrence, RecExpr, Relation, UniRecurrence, Var};

pub use threshold::{ratio_limit, threshold_n, threshold_n_with, ThresholdRule, THRESHOLD_CAP};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    Fail,
}

/// Settings shared by every analysis.
#[derive(Clone, Debug, PartialEq)]
pub struct AnalysisConfig {
    pub constants: Constants,
    pub eval: EvalConfig,
    pub rule: ThresholdRule,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig { constants: Constants::default(), eval: EvalConfig::default(), rule: ThresholdRule::default() }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AnalysisResult {
    pub verdict: Verdict,
    /// The shape `f` tried; for bivariate relations the shape in `m`.
    pub shape: BoundShape,
    /// Full bound shape, e.g. `n·ln m` for a bivariate relation.
    pub label: String,
    pub epsilon: Option<BigRational>,
    pub d: Option<Milli>,
    pub threshold_n: Option<u64>,
    pub p: PseudoPoly,
    pub q: PseudoPoly,
    pub prefix_max: Option<Milli>,
    pub threshold_d: Option<Milli>,
    pub diagnostics: Vec<String>,
}

/// The four steps of the decision procedure: template, over-approximation,
/// transformation into `d·p >= q`, and the coefficient check.
pub fn uni_dec(rec: &UniRecurrence, f: BoundShape, config: &AnalysisConfig) -> Result<AnalysisResult> {
    let ov = ovap(rec.expr(), f);
    let ineq = to_inequality(&ov, f, rec.base_cost(), &config.constants)?;
    let (dp, dq) = (ineq.p.degree(), ineq.q.degree());
    let cp = ineq.p.leading_coeff();
    let yes = dp >= dq && cp > BigRational::zero();
    let mut diagnostics = vec![format!("multiplier n^{}", ineq.multiplier.0)];
    if !yes {
        diagnostics.push(format!("deg p = {dp}, deg q = {dq}, C_p = {cp}"));
    }
    Ok(AnalysisResult {
        verdict: if yes { Verdict::Yes } else { Verdict::Fail },
        shape: f,
        label: f.label(),
        epsilon: None,
        d: None,
        threshold_n: None,
        p: ineq.p,
        q: ineq.q,
        prefix_max: None,
        threshold_d: None,
        diagnostics,
    })
}

fn check_epsilon(eps: &BigRational) -> Result<()> {
    if *eps <= BigRational::zero() || *eps >= BigRational::one() {
        return Err(Error::InvalidArgument(format!("epsilon must lie in (0, 1), got {eps}")));
    }
    Ok(())
}

/// Decides, then computes `N`, the threshold constant and the prefix maximum below `N`.
pub fn uni_synth(rec: &UniRecurrence, f: BoundShape, eps: &BigRational, config: &AnalysisConfig) -> Result<AnalysisResult> {
    check_epsilon(eps)?;
    let mut result = uni_dec(rec, f, config)?;
    result.epsilon = Some(eps.clone());
    if result.verdict == Verdict::Fail {
        return Ok(result);
    }
    let n = threshold_n_with(&result.p, &result.q, eps, config.rule)?;
    let threshold_d = (ratio_limit(&result.p, &result.q) + eps) / (BigRational::one() - eps);
    let prefix = if n > 2 {
        let eval = EvalConfig { arithmetic: crate::evalcore::Arithmetic::Enclosure, ..config.eval.clone() };
        let table = eval_uni(rec, n - 1, &eval)?;
        ratio_max(&table, rec.base_cost(), f, n, eval.precision)?
    } else {
        BigRational::zero()
    };
    let d = if prefix > threshold_d { &prefix } else { &threshold_d };
    result.d = Some(Milli::above(d));
    result.threshold_n = Some(n);
    // no argument below N exceeds the base cost: nothing to round up
    result.prefix_max = Some(if prefix.is_zero() { Milli::from_thousandths(0) } else { Milli::above(&prefix) });
    result.threshold_d = Some(Milli::above(&threshold_d));
    Ok(result)
}

/// The univariate relation in `m` obtained by dropping `n` and replacing `h` by 1,
/// together with `h` for reassembling the bound.
pub fn reduce_bi(rec: &BiRecurrence) -> Result<(UniRecurrence, RecExpr)> {
    Ok((rec.reduced()?, rec.h_part().clone()))
}

/// `h(n)·f(m)` as text, dropping a unit factor.
pub fn bivariate_label(h: &RecExpr, f_m: BoundShape) -> String {
    let h_text = expr_text(h, Var::N, false);
    let f_text = f_m.label_in("m");
    match (h_text.as_str(), h.terms().len()) {
        ("1", _) => f_text,
        (_, 1) => format!("{h_text}·{f_text}"),
        _ => format!("({h_text})·{f_text}"),
    }
}

fn relabel(mut result: AnalysisResult, h: &RecExpr) -> AnalysisResult {
    result.label = bivariate_label(h, result.shape);
    result
}

pub fn bi_dec(rec: &BiRecurrence, f_m: BoundShape, config: &AnalysisConfig) -> Result<AnalysisResult> {
    let (uni, h) = reduce_bi(rec)?;
    Ok(relabel(uni_dec(&uni, f_m, config)?, &h))
}

/// The returned `d` certifies `T(n,m) <= d·h(n)·f(m) + c·h(n)`.
pub fn bi_synth(rec: &BiRecurrence, f_m: BoundShape, eps: &BigRational, config: &AnalysisConfig) -> Result<AnalysisResult> {
    let (uni, h) = reduce_bi(rec)?;
    Ok(relabel(uni_synth(&uni, f_m, eps, config)?, &h))
}

/// What to compute for a relation.
#[derive(Clone, Debug, PartialEq)]
pub enum Mode {
    Decide,
    Synthesize(BigRational),
}

/// Which shapes to try.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundChoice {
    Fixed(BoundShape),
    /// `ln n`, then `n`, then `n·ln n`, stopping at the first yes.
    Auto,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    /// The accepted result, or the last rejected one.
    pub result: AnalysisResult,
    /// Shapes rejected before `result`, in the order tried.
    pub rejected: Vec<AnalysisResult>,
}

pub fn analyze_shape(rel: &Relation, f: BoundShape, mode: &Mode, config: &AnalysisConfig) -> Result<AnalysisResult> {
    match (rel, mode) {
        (Relation::Uni(r), Mode::Decide) => uni_dec(r, f, config),
        (Relation::Uni(r), Mode::Synthesize(eps)) => uni_synth(r, f, eps, config),
        (Relation::Bi(r), Mode::Decide) => bi_dec(r, f, config),
        (Relation::Bi(r), Mode::Synthesize(eps)) => bi_synth(r, f, eps, config),
    }
}

pub fn analyze(rel: &Relation, bound: BoundChoice, mode: &Mode, config: &AnalysisConfig) -> Result<Outcome> {
    let shapes: &[BoundShape] = match &bound {
        BoundChoice::Fixed(f) => std::slice::from_ref(f),
        BoundChoice::Auto => &BoundShape::ALL,
    };
    let mut rejected = Vec::new();
    for &f in shapes {
        let result = analyze_shape(rel, f, mode, config)?;
        if result.verdict == Verdict::Yes || rejected.len() + 1 == shapes.len() {
            return Ok(Outcome { result, rejected });
        }
        rejected.push(result);
    }
    unreachable!("at least one shape is tried")
}

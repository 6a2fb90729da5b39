use num_rational::BigRational;
use rtbound_core::analyzer::{AnalysisResult, Verdict};
use rtbound_core::numeric::{format_rational, rational_to_f64, Milli};
use rtbound_core::pseudopoly::PseudoPoly;
use serde::Serialize;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Shape label without the middle dot, e.g. `n ln m`.
pub fn ascii_label(label: &str) -> String {
    label.replace('·', " ")
}

#[derive(Debug, Serialize)]
pub struct PolyReport {
    pub log: Vec<String>,
    pub plain: Vec<String>,
}

impl From<&PseudoPoly> for PolyReport {
    fn from(p: &PseudoPoly) -> Self {
        let text = |cs: &[BigRational]| cs.iter().map(format_rational).collect();
        PolyReport { log: text(p.log_coeffs()), plain: text(p.plain_coeffs()) }
    }
}

#[derive(Debug, Serialize)]
pub struct Attempt {
    pub shape: String,
    pub verdict: Verdict,
}

#[derive(Debug, Serialize)]
pub struct Input {
    pub file: String,
    pub relation: String,
}

#[derive(Debug, Serialize)]
pub struct AnalysisReport {
    pub version: &'static str,
    pub input: Input,
    pub verdict: Verdict,
    pub shape: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<Milli>,
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d_prefix: Option<Milli>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d_threshold: Option<Milli>,
    pub p: PolyReport,
    pub q: PolyReport,
    /// Shapes rejected before this one in automatic mode.
    pub rejected: Vec<Attempt>,
    pub diagnostics: Vec<String>,
    pub time_ms: f64,
}

impl AnalysisReport {
    pub fn new(input: Input, r: &AnalysisResult, rejected: &[AnalysisResult], time_ms: f64) -> Self {
        AnalysisReport {
            version: VERSION,
            input,
            verdict: r.verdict,
            shape: ascii_label(&r.label),
            epsilon: r.epsilon.as_ref().map(rational_to_f64),
            d: r.d,
            n: r.threshold_n,
            d_prefix: r.prefix_max,
            d_threshold: r.threshold_d,
            p: (&r.p).into(),
            q: (&r.q).into(),
            rejected: rejected.iter().map(|a| Attempt { shape: ascii_label(&a.label), verdict: a.verdict }).collect(),
            diagnostics: r.diagnostics.clone(),
            time_ms,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct EvalRow {
    pub arg: u64,
    /// Exact rational, or `[lo, hi]` for an enclosure.
    pub value: String,
    pub lo: f64,
    pub hi: f64,
}

#[derive(Debug, Serialize)]
pub struct EvalReport {
    pub version: &'static str,
    pub input: Input,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    pub exact: bool,
    pub values: Vec<EvalRow>,
    pub time_ms: f64,
}

#[derive(Debug, Serialize)]
pub struct CorpusCell {
    pub epsilon: f64,
    pub verdict: Option<Verdict>,
    #[serde(rename = "N")]
    pub n: Option<u64>,
    pub d: Option<Milli>,
    pub d_prefix: Option<Milli>,
    pub d_threshold: Option<Milli>,
    pub error: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct CorpusDecision {
    pub shape: String,
    pub verdict: Option<Verdict>,
    pub error: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct CorpusEntryReport {
    pub id: String,
    pub shape: String,
    pub decisions: Vec<CorpusDecision>,
    pub cells: Vec<CorpusCell>,
    pub d100: Option<Milli>,
}

#[derive(Debug, Serialize)]
pub struct CheckReport {
    pub id: String,
    pub cell: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

#[derive(Debug, Serialize)]
pub struct CorpusReport {
    pub version: &'static str,
    pub entries: Vec<CorpusEntryReport>,
    pub checks: Vec<CheckReport>,
    pub pass: bool,
    pub time_ms: f64,
}

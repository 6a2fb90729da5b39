use std::thread;

use num_rational::BigRational;

use super::{corpus_list, sort_select_with, CorpusEntry, CorpusId, Fixtures};
use crate::analyzer::{analyze_shape, uni_synth, AnalysisConfig, AnalysisResult, Mode, Verdict};
use crate::error::{Error, Result};
use crate::evalcore::d_z;
use crate::numeric::{format_rational, Milli};
use crate::overapprox::BoundShape;

/// Largest accepted deviation of a constant, in thousandths.
pub const D_TOLERANCE: i64 = 5;

/// Argument limit of the empirical constant reported next to each entry.
pub const EMPIRICAL_LIMIT: u64 = 100;

#[derive(Clone, Debug, PartialEq)]
pub enum CellKind {
    Decision(BoundShape),
    Threshold(BigRational),
    Constant(BigRational),
    Empirical,
}

impl CellKind {
    pub fn describe(&self) -> String {
        match self {
            CellKind::Decision(f) => format!("decision {}", f.label()),
            CellKind::Threshold(eps) => format!("N at eps={}", format_rational(eps)),
            CellKind::Constant(eps) => format!("d at eps={}", format_rational(eps)),
            CellKind::Empirical => format!("d_{EMPIRICAL_LIMIT}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CellCheck {
    pub id: CorpusId,
    pub kind: CellKind,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

/// Everything computed for one entry; analysis errors are kept as text.
#[derive(Clone, Debug, PartialEq)]
pub struct EntryRun {
    pub id: CorpusId,
    pub decisions: Vec<(BoundShape, std::result::Result<AnalysisResult, String>)>,
    pub synth: Vec<(BigRational, std::result::Result<AnalysisResult, String>)>,
    pub empirical: std::result::Result<Milli, String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Reproduction {
    pub runs: Vec<EntryRun>,
    pub checks: Vec<CellCheck>,
}

impl Reproduction {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CellCheck> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn run(&self, id: CorpusId) -> Option<&EntryRun> {
        self.runs.iter().find(|r| r.id == id)
    }
}

/// Synthesis for one entry; Sort-by-Select takes the selection bound synthesized at the same epsilon.
pub fn synthesize_entry(entry: &CorpusEntry, eps: &BigRational, config: &AnalysisConfig) -> Result<AnalysisResult> {
    if entry.id != CorpusId::SortSel {
        return analyze_shape(&entry.relation, entry.shape, &Mode::Synthesize(eps.clone()), config);
    }
    let select = super::corpus_entry(CorpusId::QSelect);
    let inner = uni_synth(&select.univariate()?, select.shape, eps, config)?;
    let d = inner
        .d
        .ok_or_else(|| Error::Structure("selection bound has no constant".into()))?;
    let mut result = uni_synth(&sort_select_with(d), entry.shape, eps, config)?;
    result.diagnostics.push(format!("selection bound {d}·n + 1"));
    Ok(result)
}

fn run_entry(entry: &CorpusEntry, epsilons: &[BigRational], config: &AnalysisConfig) -> EntryRun {
    let decisions = BoundShape::ALL
        .into_iter()
        .filter(|f| entry.expected.decisions.contains_key(f))
        .map(|f| (f, analyze_shape(&entry.relation, f, &Mode::Decide, config).map_err(|e| e.to_string())))
        .collect();
    let synth = epsilons
        .iter()
        .map(|eps| (eps.clone(), synthesize_entry(entry, eps, config).map_err(|e| e.to_string())))
        .collect();
    let empirical = entry
        .univariate()
        .and_then(|u| d_z(&u, entry.shape, EMPIRICAL_LIMIT, &config.eval))
        .map_err(|e| e.to_string());
    EntryRun { id: entry.id, decisions, synth, empirical }
}

fn check_run(run: &EntryRun, fixtures: &Fixtures) -> Vec<CellCheck> {
    let Some(expected) = fixtures.entry(run.id) else {
        return Vec::new();
    };
    let mut checks = Vec::new();
    let mut push = |kind, expected: String, actual: String, pass| {
        checks.push(CellCheck { id: run.id, kind, expected, actual, pass })
    };
    for (f, got) in &run.decisions {
        let want = expected.decisions[f];
        let (actual, pass) = match got {
            Ok(r) => (verdict_text(r.verdict).to_string(), r.verdict == want),
            Err(e) => (format!("error: {e}"), false),
        };
        push(CellKind::Decision(*f), verdict_text(want).into(), actual, pass);
    }
    for (eps, got) in &run.synth {
        let Some(cell) = expected.cell(eps) else { continue };
        let (n, d) = match got {
            Ok(r) => (r.threshold_n, r.d),
            Err(e) => {
                let msg = format!("error: {e}");
                push(CellKind::Threshold(eps.clone()), cell.n.to_string(), msg.clone(), false);
                push(CellKind::Constant(eps.clone()), cell.d.to_string(), msg, false);
                continue;
            }
        };
        let n_text = n.map_or("-".into(), |n| n.to_string());
        push(CellKind::Threshold(eps.clone()), cell.n.to_string(), n_text, n == Some(cell.n));
        let d_text = d.map_or("-".into(), |d| d.to_string());
        let d_pass = d.is_some_and(|d| d.distance(cell.d) <= D_TOLERANCE);
        push(CellKind::Constant(eps.clone()), cell.d.to_string(), d_text, d_pass);
    }
    let (actual, pass) = match &run.empirical {
        Ok(d) => (d.to_string(), d.distance(expected.d100) <= D_TOLERANCE),
        Err(e) => (format!("error: {e}"), false),
    };
    push(CellKind::Empirical, expected.d100.to_string(), actual, pass);
    checks
}

pub fn verdict_text(v: Verdict) -> &'static str {
    match v {
        Verdict::Yes => "yes",
        Verdict::Fail => "fail",
    }
}

/// Runs every entry at `epsilons` and compares with `fixtures`.
///
/// Entries are analyzed on separate threads; results are ordered by entry, then epsilon.
pub fn reproduce(epsilons: &[BigRational], fixtures: &Fixtures, config: &AnalysisConfig) -> Reproduction {
    let entries = corpus_list();
    let runs: Vec<EntryRun> = thread::scope(|s| {
        let handles: Vec<_> = entries.iter().map(|e| s.spawn(move || run_entry(e, epsilons, config))).collect();
        handles.into_iter().map(|h| h.join().expect("analysis thread panicked")).collect()
    });
    let checks = runs.iter().flat_map(|r| check_run(r, fixtures)).collect();
    Reproduction { runs, checks }
}

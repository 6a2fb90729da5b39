use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use num_rational::BigRational;
use rtbound_core::analyzer::{analyze as run_analysis, AnalysisConfig, AnalysisResult, BoundChoice, Mode, Verdict};
use rtbound_core::corpus::{corpus_list, reproduce, verdict_text, Fixtures};
use rtbound_core::evalcore::{eval_bi, eval_uni, EvalConfig, Value};
use rtbound_core::numeric::{format_directed, format_rational, parse_decimal};
use rtbound_core::overapprox::BoundShape;
use rtbound_core::recdsl::{parse_relation, Relation};
use rtbound_core::{Error, Result};

use crate::report::*;
use crate::{BoundArg, ModeArg};

const EXIT_FAIL: u8 = 2;

/// Writes one line to stdout; a closed pipe (e.g. `| head`) ends the process quietly.
fn emit(args: fmt::Arguments) {
    if let Err(e) = writeln!(io::stdout().lock(), "{args}") {
        if e.kind() == io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        panic!("failed writing to stdout: {e}");
    }
}

macro_rules! out {
    ($($arg:tt)*) => { emit(format_args!($($arg)*)) };
}

/// Decimals shown for enclosure endpoints, rounded outward.
const ENCLOSURE_PLACES: u32 = 15;

fn read_relation(file: &Path) -> Result<(Relation, Input)> {
    let text = fs::read_to_string(file)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", file.display())))?;
    let relation = parse_relation(&text)?;
    let input = Input { file: file.display().to_string(), relation: relation.to_string() };
    Ok((relation, input))
}

fn parse_epsilon(text: &str) -> Result<BigRational> {
    parse_decimal(text.trim()).ok_or_else(|| Error::InvalidArgument(format!("epsilon '{text}' is not a decimal number")))
}

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1000.0
}

fn print_json<T: serde::Serialize>(value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    out!("{text}");
    Ok(())
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "-".into(), |v| v.to_string())
}

fn bound_text(r: &AnalysisResult, rel: &Relation) -> Option<String> {
    let d = r.d?;
    Some(match rel {
        Relation::Uni(u) => format!("T(n) <= {d}·{} + {}", r.label, u.base_cost()),
        Relation::Bi(b) => {
            let h = rtbound_core::recdsl::expr_text(b.h_part(), rtbound_core::recdsl::Var::N, false);
            format!("T(n,m) <= {d}·{} + {}·({h})", r.label, b.base_cost())
        }
    })
}

pub fn analyze(file: &Path, bound: BoundArg, mode: ModeArg, epsilon: &str, json: bool) -> Result<ExitCode> {
    let start = Instant::now();
    let (relation, input) = read_relation(file)?;
    let bound = match bound {
        BoundArg::Logn => BoundChoice::Fixed(BoundShape::LogN),
        BoundArg::N => BoundChoice::Fixed(BoundShape::Linear),
        BoundArg::Nlogn => BoundChoice::Fixed(BoundShape::NLogN),
        BoundArg::Auto => BoundChoice::Auto,
    };
    let mode = match mode {
        ModeArg::Decide => Mode::Decide,
        ModeArg::Synth => Mode::Synthesize(parse_epsilon(epsilon)?),
    };
    let outcome = run_analysis(&relation, bound, &mode, &AnalysisConfig::default())?;
    let r = &outcome.result;
    let report = AnalysisReport::new(input, r, &outcome.rejected, elapsed_ms(start));
    if json {
        print_json(&report)?;
    } else {
        for a in &report.rejected {
            out!("{:<12}{} ({})", "tried:", verdict_text(a.verdict), a.shape);
        }
        out!("{:<12}{}", "verdict:", verdict_text(r.verdict));
        out!("{:<12}{}", "shape:", r.label);
        if let Some(eps) = &r.epsilon {
            out!("{:<12}{}", "epsilon:", format_rational(eps));
        }
        if r.verdict == Verdict::Yes && r.epsilon.is_some() {
            out!("{:<12}{}", "d:", opt(r.d));
            out!("{:<12}{}", "N:", opt(r.threshold_n));
            out!("{:<12}{}", "d_prefix:", opt(r.prefix_max));
            out!("{:<12}{}", "d_thresh:", opt(r.threshold_d));
        }
        out!("{:<12}{}", "p:", r.p);
        out!("{:<12}{}", "q:", r.q);
        if let Some(b) = bound_text(r, &relation) {
            out!("{:<12}{b}", "bound:");
        }
        out!("{:<12}{:.3}", "time_ms:", report.time_ms);
    }
    Ok(if r.verdict == Verdict::Yes { ExitCode::SUCCESS } else { ExitCode::from(EXIT_FAIL) })
}

fn value_row(arg: u64, v: &Value) -> EvalRow {
    let (lo, hi) = match v {
        Value::Exact(q) => {
            let f = rtbound_core::numeric::rational_to_f64(q);
            (f, f)
        }
        Value::Enclosure(iv) => (iv.lo().to_f64(), iv.hi().to_f64()),
    };
    let value = match v {
        Value::Exact(q) => format_rational(q),
        Value::Enclosure(iv) if iv.is_point() => format_rational(&iv.lo().to_rational()),
        Value::Enclosure(iv) => format!(
            "[{}, {}]",
            format_directed(&iv.lo().to_rational(), ENCLOSURE_PLACES, false),
            format_directed(&iv.hi().to_rational(), ENCLOSURE_PLACES, true)
        ),
    };
    EvalRow { arg, value, lo, hi }
}

pub fn eval(file: &Path, upto: u64, n: Option<u64>, json: bool) -> Result<ExitCode> {
    let start = Instant::now();
    let (relation, input) = read_relation(file)?;
    let config = EvalConfig::default();
    let table = match (&relation, n) {
        (Relation::Uni(r), None) => eval_uni(r, upto, &config)?,
        (Relation::Uni(_), Some(_)) => {
            return Err(Error::InvalidArgument("--n applies to bivariate relations only".into()))
        }
        (Relation::Bi(r), Some(n)) => eval_bi(r, n, upto, &config)?,
        (Relation::Bi(_), None) => return Err(Error::InvalidArgument("bivariate relations need --n".into())),
    };
    let values: Vec<EvalRow> = table.values().iter().zip(1..).map(|(v, k)| value_row(k, v)).collect();
    let report = EvalReport { version: VERSION, input, n, exact: table.is_exact(), values, time_ms: elapsed_ms(start) };
    if json {
        print_json(&report)?;
    } else {
        let var = if n.is_some() { "m" } else { "n" };
        for row in &report.values {
            out!("{var}={:<8}{}", row.arg, row.value);
        }
    }
    Ok(ExitCode::SUCCESS)
}

pub fn corpus(epsilons: &[String], fixtures: Option<&Path>, json: bool) -> Result<ExitCode> {
    let start = Instant::now();
    let eps: Vec<BigRational> = epsilons.iter().map(|e| parse_epsilon(e)).collect::<Result<_>>()?;
    let fixtures = match fixtures {
        Some(path) => Fixtures::from_json(
            &fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?,
        )?,
        None => Fixtures::builtin(),
    };
    let rep = reproduce(&eps, &fixtures, &AnalysisConfig::default());
    let time_ms = elapsed_ms(start);
    let shapes = corpus_list();
    let entries = rep
        .runs
        .iter()
        .zip(&shapes)
        .map(|(run, entry)| {
            let label = run
                .synth
                .iter()
                .find_map(|(_, r)| r.as_ref().ok().map(|r| r.label.clone()))
                .unwrap_or_else(|| entry.shape.label());
            CorpusEntryReport {
                id: run.id.to_string(),
                shape: ascii_label(&label),
                decisions: run
                    .decisions
                    .iter()
                    .map(|(f, r)| CorpusDecision {
                        shape: ascii_label(&f.label()),
                        verdict: r.as_ref().ok().map(|r| r.verdict),
                        error: r.as_ref().err().cloned(),
                    })
                    .collect(),
                cells: run
                    .synth
                    .iter()
                    .map(|(eps, r)| CorpusCell {
                        epsilon: rtbound_core::numeric::rational_to_f64(eps),
                        verdict: r.as_ref().ok().map(|r| r.verdict),
                        n: r.as_ref().ok().and_then(|r| r.threshold_n),
                        d: r.as_ref().ok().and_then(|r| r.d),
                        d_prefix: r.as_ref().ok().and_then(|r| r.prefix_max),
                        d_threshold: r.as_ref().ok().and_then(|r| r.threshold_d),
                        error: r.as_ref().err().cloned(),
                    })
                    .collect(),
                d100: run.empirical.as_ref().ok().copied(),
            }
        })
        .collect();
    let checks: Vec<CheckReport> = rep
        .checks
        .iter()
        .map(|c| CheckReport {
            id: c.id.to_string(),
            cell: c.kind.describe(),
            expected: c.expected.clone(),
            actual: c.actual.clone(),
            pass: c.pass,
        })
        .collect();
    let pass = rep.all_pass();
    if json {
        print_json(&CorpusReport { version: VERSION, entries, checks, pass, time_ms })?;
    } else {
        out!("{:<10} {:<16} {:>10} {:>10}  status", "entry", "cell", "expected", "actual");
        for c in &checks {
            let status = if c.pass { "ok" } else { "MISMATCH" };
            let actual = if c.actual.chars().count() > 40 { format!("{}...", c.actual.chars().take(40).collect::<String>()) } else { c.actual.clone() };
            out!("{:<10} {:<16} {:>10} {:>10}  {status}", c.id, c.cell, c.expected, actual);
        }
        let failed = checks.iter().filter(|c| !c.pass).count();
        out!("{} of {} cells match ({failed} mismatched), {:.1} ms", checks.len() - failed, checks.len(), time_ms);
    }
    Ok(if pass { ExitCode::SUCCESS } else { ExitCode::from(EXIT_FAIL) })
}

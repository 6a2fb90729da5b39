use num_rational::BigRational;
use proptest::prelude::*;

use super::*;
use crate::recdsl::{parse_bi, parse_relation, parse_uni, Atom};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn uni(src: &str) -> UniRecurrence {
    parse_uni(src).unwrap()
}

const R_SEARCH: &str = include_str!("../../corpus/r_search.rec");
const Q_SORT: &str = include_str!("../../corpus/q_sort.rec");
const Q_SELECT: &str = include_str!("../../corpus/q_select.rec");
const DIAM_A: &str = include_str!("../../corpus/diam_a.rec");
const COUPON: &str = include_str!("../../corpus/coupon.rec");
const RES_A: &str = include_str!("../../corpus/res_a.rec");
const RES_B: &str = include_str!("../../corpus/res_b.rec");

fn near(d: Milli, expected: &str) -> bool {
    d.distance(Milli::parse(expected).unwrap()) <= 5
}

#[test]
fn quicksort_decisions() {
    let cfg = AnalysisConfig::default();
    let rec = uni(Q_SORT);
    assert_eq!(uni_dec(&rec, BoundShape::LogN, &cfg).unwrap().verdict, Verdict::Fail);
    assert_eq!(uni_dec(&rec, BoundShape::Linear, &cfg).unwrap().verdict, Verdict::Fail);
    assert_eq!(uni_dec(&rec, BoundShape::NLogN, &cfg).unwrap().verdict, Verdict::Yes);
}

#[test]
fn quickselect_decisions() {
    let cfg = AnalysisConfig::default();
    let rec = uni(Q_SELECT);
    assert_eq!(uni_dec(&rec, BoundShape::LogN, &cfg).unwrap().verdict, Verdict::Fail);
    assert_eq!(uni_dec(&rec, BoundShape::Linear, &cfg).unwrap().verdict, Verdict::Yes);
}

#[test]
fn thresholds_of_known_inequalities() {
    let cfg = AnalysisConfig::default();
    let rs = uni_dec(&uni(R_SEARCH), BoundShape::LogN, &cfg).unwrap();
    assert_eq!(threshold_n(&rs.p, &rs.q, &q(1, 2)).unwrap(), 13);
    let qs = uni_dec(&uni(Q_SORT), BoundShape::NLogN, &cfg).unwrap();
    assert_eq!(threshold_n(&qs.p, &qs.q, &q(1, 2)).unwrap(), 10);
    let one = PseudoPoly::from_ints(&[], &[1]);
    assert_eq!(threshold_n(&one, &one, &q(1, 100)).unwrap(), 2);
}

#[test]
fn threshold_rejects_bad_inputs() {
    let one = PseudoPoly::from_ints(&[], &[1]);
    let lin = PseudoPoly::from_ints(&[], &[0, 1]);
    assert!(matches!(threshold_n(&one, &lin, &q(1, 2)), Err(Error::InvalidArgument(_))));
    assert!(matches!(threshold_n(&one, &one, &q(1, 1)), Err(Error::InvalidArgument(_))));
    assert!(matches!(threshold_n(&one, &one, &q(0, 1)), Err(Error::InvalidArgument(_))));
}

#[test]
fn threshold_beyond_cap_is_a_resource_error() {
    // x(N) = 10^9 / N stays above ε until N > 10^7 · 10^2.
    let p = PseudoPoly::new(vec![], vec![q(1_000_000_000, 1), q(1, 1)]);
    let one = PseudoPoly::from_ints(&[], &[1]);
    assert!(matches!(threshold_n(&p, &one, &q(1, 100)), Err(Error::Resource(_))));
}

#[test]
fn strict_rule_is_never_earlier() {
    let cfg = AnalysisConfig::default();
    let rs = uni_dec(&uni(R_SEARCH), BoundShape::LogN, &cfg).unwrap();
    for eps in [q(1, 2), q(3, 10), q(1, 10)] {
        let screened = threshold_n(&rs.p, &rs.q, &eps).unwrap();
        let strict = threshold_n_with(&rs.p, &rs.q, &eps, ThresholdRule::Strict).unwrap();
        assert!(strict >= screened.saturating_sub(1), "{eps}: {strict} vs {screened}");
    }
}

#[test]
fn randomized_search_synthesis() {
    let r = uni_synth(&uni(R_SEARCH), BoundShape::LogN, &q(1, 100), &AnalysisConfig::default()).unwrap();
    assert_eq!(r.threshold_n, Some(1398));
    assert!(near(r.d.unwrap(), "19.762"), "{:?}", r.d);
    assert_eq!(r.d, r.threshold_d.max(r.prefix_max));
}

#[test]
fn quickselect_synthesis() {
    let r = uni_synth(&uni(Q_SELECT), BoundShape::Linear, &q(1, 10), &AnalysisConfig::default()).unwrap();
    assert_eq!(r.threshold_n, Some(160));
    assert_eq!(r.d, Some(Milli::parse("9.001").unwrap()));
}

#[test]
fn diameter_prefix_dominates_small_threshold() {
    // The method's own N is larger than the published one; the constant still comes from n = 2.
    let r = uni_synth(&uni(DIAM_A), BoundShape::NLogN, &q(1, 2), &AnalysisConfig::default()).unwrap();
    assert_eq!(r.verdict, Verdict::Yes);
    assert!(r.prefix_max.unwrap() > Milli::parse("4.5").unwrap());
}

#[test]
fn failing_decision_has_no_constant() {
    let r = uni_synth(&uni(Q_SORT), BoundShape::LogN, &q(1, 2), &AnalysisConfig::default()).unwrap();
    assert_eq!(r.verdict, Verdict::Fail);
    assert!(r.d.is_none() && r.threshold_n.is_none());
}

#[test]
fn reductions() {
    let (u, h) = reduce_bi(&parse_bi(COUPON).unwrap()).unwrap();
    assert_eq!(u.to_string(), "rel T(n) = 1/n + T(n-1)\nbase T(1) = 1\n");
    assert_eq!(h.coeff(Atom::Var), Some(&crate::recdsl::Coefficient::one()));
    let (u, h) = reduce_bi(&parse_bi(RES_B).unwrap()).unwrap();
    assert_eq!(u.to_string(), "rel T(n) = e + T(n-1)\nbase T(1) = 1\n");
    assert_eq!(h.coeff(Atom::One), Some(&crate::recdsl::Coefficient::one()));
    let (u, _) = reduce_bi(&parse_bi(RES_A).unwrap()).unwrap();
    assert_eq!(u.expr().coeff(Atom::InvVar), Some(&crate::recdsl::Coefficient::euler_multiple(q(1, 1))));
    assert_eq!(u.base_cost(), &crate::recdsl::Coefficient::one());
}

#[test]
fn bivariate_synthesis() {
    let cfg = AnalysisConfig::default();
    let r = bi_synth(&parse_bi(COUPON).unwrap(), BoundShape::LogN, &q(1, 100), &cfg).unwrap();
    assert_eq!(r.label, "n·ln m");
    assert!(near(r.d.unwrap(), "1.021"));
    let r = bi_synth(&parse_bi(RES_A).unwrap(), BoundShape::LogN, &q(1, 2), &cfg).unwrap();
    assert!(near(r.d.unwrap(), "6.437"), "{:?}", r.d);
    let r = bi_synth(&parse_bi(RES_B).unwrap(), BoundShape::Linear, &q(1, 100), &cfg).unwrap();
    assert_eq!(r.label, "m");
    assert!(near(r.d.unwrap(), "2.756"));
}

#[test]
fn auto_mode_stops_at_first_yes() {
    let rel = parse_relation(COUPON).unwrap();
    let out = analyze(&rel, BoundChoice::Auto, &Mode::Synthesize(q(1, 2)), &AnalysisConfig::default()).unwrap();
    assert!(out.rejected.is_empty());
    assert_eq!(out.result.label, "n·ln m");
    assert_eq!(out.result.d, Some(Milli::parse("3.001").unwrap()));
    let rel = parse_relation(Q_SORT).unwrap();
    let out = analyze(&rel, BoundChoice::Auto, &Mode::Decide, &AnalysisConfig::default()).unwrap();
    assert_eq!(out.rejected.len(), 2);
    assert_eq!(out.result.shape, BoundShape::NLogN);
}

#[test]
fn auto_mode_reports_last_failure() {
    let rel = parse_relation("rel T(n) = n*n + T(n-1)").ok();
    assert!(rel.is_none());
    let rel = parse_relation("rel T(n) = 2*T(floor(n/2)) + 2*T(ceil(n/2)) + 1\nbase T(1) = 1").unwrap();
    let out = analyze(&rel, BoundChoice::Auto, &Mode::Decide, &AnalysisConfig::default()).unwrap();
    assert_eq!(out.result.verdict, Verdict::Fail);
    assert_eq!(out.rejected.len(), 2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]
    #[test]
    fn verdict_matches_coefficient_test(k in 1i64..6, c in 1i64..10, shape in 0usize..3) {
        let src = format!("rel T(n) = {c}*n + {k}*avg_all(T)\nbase T(1) = 1");
        let f = BoundShape::ALL[shape];
        let r = uni_dec(&uni(&src), f, &AnalysisConfig::default()).unwrap();
        let yes = r.p.degree() >= r.q.degree() && r.p.leading_coeff() > BigRational::zero();
        prop_assert_eq!(r.verdict == Verdict::Yes, yes);
    }

    #[test]
    fn synthesized_constant_is_max_of_parts(e in 1i64..99) {
        let eps = q(e, 100);
        let r = uni_synth(&uni(Q_SELECT), BoundShape::Linear, &eps, &AnalysisConfig::default()).unwrap();
        prop_assert_eq!(r.d, r.threshold_d.max(r.prefix_max));
        prop_assert!(r.threshold_n.unwrap() >= 2);
    }
}

#[test]
fn exact_ties_separate_the_rules() {
    // x(N) = 16/N for this p, so x(160) equals ε = 0.1 exactly.
    let r = uni_dec(&uni(Q_SELECT), BoundShape::Linear, &AnalysisConfig::default()).unwrap();
    let eps = q(1, 10);
    assert_eq!(threshold_n_with(&r.p, &r.q, &eps, ThresholdRule::Screened).unwrap(), 160);
    assert_eq!(threshold_n_with(&r.p, &r.q, &eps, ThresholdRule::Strict).unwrap(), 161);
}

use num_rational::BigRational;
use proptest::prelude::*;

use super::*;
use crate::error::Error;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[test]
fn parses_randomized_search() {
    let r = parse_uni("rel T(n) = 6 + avg_halves(T)\nbase T(1) = 1").unwrap();
    assert_eq!(r.expr().terms().len(), 2);
    assert_eq!(r.expr().coeff(Atom::One), Some(&Coefficient::from_int(6)));
    assert_eq!(r.expr().coeff(Atom::AvgHalves), Some(&Coefficient::one()));
    assert_eq!(r.base_cost(), &Coefficient::one());
}

#[test]
fn parses_quicksort_with_comment() {
    let src = "# quick sort\nrel T(n) = 2*n + 2*avg_all(T)   # partition + recursion\nbase T(1) = 1\n";
    let r = parse_uni(src).unwrap();
    assert_eq!(r.expr().coeff(Atom::Var), Some(&Coefficient::from_int(2)));
    assert_eq!(r.expr().coeff(Atom::AvgAll), Some(&Coefficient::from_int(2)));
}

#[test]
fn parses_coupon_collector() {
    let r = parse_bi("rel T(n,m) = {n} * {1/m} + T(n,m-1)\nbase T(n,1) = {n} * 1").unwrap();
    assert_eq!(r.h_part().coeff(Atom::Var), Some(&Coefficient::one()));
    assert_eq!(r.b_part().coeff(Atom::InvVar), Some(&Coefficient::one()));
    assert_eq!(r.e_part().coeff(Atom::TPred), Some(&Coefficient::one()));
    let reduced = r.reduced().unwrap();
    assert_eq!(reduced.to_string(), "rel T(n) = 1/n + T(n-1)\nbase T(1) = 1\n");
}

#[test]
fn euler_constants() {
    let r = parse_bi("rel T(n,m) = T(n,m-1) + {1} * {e}\nbase T(n,1) = {1} * 1").unwrap();
    assert_eq!(r.b_part().coeff(Atom::One), Some(&Coefficient::euler_multiple(q(1, 1))));
    let r = parse_uni("rel T(n) = 2*e*n + T(n-1)\nbase T(1) = 0.5*e").unwrap();
    assert_eq!(r.expr().coeff(Atom::Var), Some(&Coefficient::euler_multiple(q(2, 1))));
    assert!(r.is_transcendental());
}

#[test]
fn rejects_zero_base_cost() {
    let err = parse_uni("rel T(n) = 1 + T(n-1)\nbase T(1) = 0").unwrap_err();
    assert!(matches!(err, Error::Validation(_)), "{err:?}");
}

#[test]
fn rejects_fractional_scalar_factor() {
    let err = parse_uni("rel T(n) = 0.5*n + T(n-1)\nbase T(1) = 1").unwrap_err();
    assert!(matches!(err, Error::Validation(_)), "{err:?}");
    assert!(parse_uni("rel T(n) = 0.5 + T(n-1)\nbase T(1) = 1").is_ok());
}

#[test]
fn syntax_errors_carry_positions() {
    let err = parse_uni("rel T(n) = n + T(n-2)\nbase T(1) = 1").unwrap_err();
    match err {
        Error::Syntax { line, column, .. } => assert_eq!((line, column), (1, 20)),
        other => panic!("{other:?}"),
    }
    let err = parse_uni("rel T(n) = n + T(n-1)\nbase T(1) = 1\nextra").unwrap_err();
    assert!(matches!(err, Error::Syntax { line: 3, .. }));
    assert!(matches!(parse_uni("rel T(n) = n^2 + T(n-1)\nbase T(1) = 1"), Err(Error::Syntax { .. })));
}

#[test]
fn requires_both_kinds_of_term() {
    assert!(matches!(parse_uni("rel T(n) = 2*T(n-1)\nbase T(1) = 1"), Err(Error::Validation(_))));
    assert!(matches!(parse_uni("rel T(n) = n + 1\nbase T(1) = 1"), Err(Error::Validation(_))));
}

#[test]
fn bivariate_base_must_reuse_h() {
    let err = parse_bi("rel T(n,m) = T(n,m-1) + {n} * {1}\nbase T(n,1) = {ln(n)} * 1").unwrap_err();
    assert!(matches!(err, Error::Validation(_)));
}

#[test]
fn like_atoms_merge() {
    let r = parse_uni("rel T(n) = n + 2*n + e*n + T(n-1) + T(n-1)\nbase T(1) = 1").unwrap();
    let c = r.expr().coeff(Atom::Var).unwrap();
    assert_eq!(c.rational, q(3, 1));
    assert_eq!(c.euler, q(1, 1));
    assert_eq!(r.expr().coeff(Atom::TPred), Some(&Coefficient::from_int(2)));
    let printed = r.to_string();
    assert_eq!(parse_uni(&printed).unwrap(), r);
}

fn atom_strategy() -> impl Strategy<Value = Atom> {
    prop_oneof![
        Just(Atom::One),
        Just(Atom::Var),
        Just(Atom::LnVar),
        Just(Atom::VarLnVar),
        Just(Atom::InvVar),
    ]
}

fn rec_strategy() -> impl Strategy<Value = Atom> {
    prop::sample::select(Atom::RECURSIVE.to_vec())
}

fn coeff_strategy() -> impl Strategy<Value = Coefficient> {
    (1i64..5000, 0u32..4, any::<bool>()).prop_map(|(n, places, e)| {
        let v = BigRational::new(n.into(), 10i64.pow(places).into());
        let v = if v < BigRational::from_integer(1.into()) { v + BigRational::from_integer(1.into()) } else { v };
        if e {
            Coefficient::euler_multiple(v)
        } else {
            Coefficient::rational(v)
        }
    })
}

fn uni_strategy() -> impl Strategy<Value = UniRecurrence> {
    (
        prop::collection::vec((coeff_strategy(), atom_strategy()), 1..4),
        prop::collection::vec((coeff_strategy(), rec_strategy()), 1..4),
        coeff_strategy(),
    )
        .prop_map(|(free, rec, base)| {
            let terms = free.into_iter().chain(rec).map(|(coeff, atom)| Term { coeff, atom });
            UniRecurrence::new(RecExpr::new(terms), base).unwrap()
        })
}

proptest! {
    #[test]
    fn printing_round_trips(rel in uni_strategy()) {
        let text = rel.to_string();
        let back = parse_uni(&text).unwrap();
        prop_assert_eq!(back, rel);
    }

    #[test]
    fn bivariate_printing_round_trips(
        rec in prop::collection::vec((coeff_strategy(), rec_strategy()), 1..3),
        h in prop::collection::vec((coeff_strategy(), prop::sample::select(vec![Atom::One, Atom::Var, Atom::LnVar, Atom::VarLnVar])), 1..3),
        b in prop::collection::vec((coeff_strategy(), atom_strategy()), 1..3),
        base in coeff_strategy(),
    ) {
        let mk = |v: Vec<(Coefficient, Atom)>| RecExpr::new(v.into_iter().map(|(coeff, atom)| Term { coeff, atom }));
        let rel = BiRecurrence::new(mk(rec), mk(h), mk(b), base).unwrap();
        let back = parse_bi(&rel.to_string()).unwrap();
        prop_assert_eq!(back, rel);
    }
}

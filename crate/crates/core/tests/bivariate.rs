mod common;

use proptest::prelude::*;
use rtbound_core::corpus::{corpus_entry, CorpusId};
use rtbound_core::recdsl::{parse_bi, Relation};

use common::*;

#[test]
fn direct_solution_factors_through_reduction() {
    for id in [CorpusId::Coupon, CorpusId::ResA, CorpusId::ResB] {
        let Relation::Bi(bi) = corpus_entry(id).relation else { panic!("{id} is bivariate") };
        let failures = product_form_failures(&bi, 200);
        assert!(failures.is_empty(), "{id}: {failures:#?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]
    #[test]
    fn generated_relations_factor(h_idx in 0usize..4, b_idx in 0usize..5, e_idx in 0usize..3, c in 1u32..5) {
        let h = ["1", "n", "ln(n)", "2*n*ln(n)"][h_idx];
        let b = ["1", "1/m", "ln(m)", "m", "e*m"][b_idx];
        let e = ["T(n,m-1)", "avg_all(T)", "T(n,floor(m/2)) + T(n,ceil(m/2))"][e_idx];
        let src = format!("rel T(n,m) = {e} + {{{h}}} * {{{b}}}\nbase T(n,1) = {{{h}}} * {c}");
        let bi = parse_bi(&src).unwrap();
        let failures = product_form_failures(&bi, 40);
        prop_assert!(failures.is_empty(), "{}: {:?}", src, failures);
    }
}

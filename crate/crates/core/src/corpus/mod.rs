//! The nine benchmark recurrences and their published results.

mod fixtures;
mod reproduce;


use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::Milli;
use crate::overapprox::BoundShape;
use crate::recdsl::{parse_relation, parse_uni, Relation, UniRecurrence};

pub use fixtures::{Fixtures, EntryFixture, SynthCell};
pub use reproduce::{
    reproduce, synthesize_entry, verdict_text, CellCheck, CellKind, EntryRun, Reproduction, D_TOLERANCE, EMPIRICAL_LIMIT,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CorpusId {
    RSearch,
    QSort,
    QSelect,
    DiamA,
    DiamB,
    SortSel,
    Coupon,
    ResA,
    ResB,
}

impl CorpusId {
    pub const ALL: [CorpusId; 9] = [
        CorpusId::RSearch,
        CorpusId::QSort,
        CorpusId::QSelect,
        CorpusId::DiamA,
        CorpusId::DiamB,
        CorpusId::SortSel,
        CorpusId::Coupon,
        CorpusId::ResA,
        CorpusId::ResB,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CorpusId::RSearch => "r_search",
            CorpusId::QSort => "q_sort",
            CorpusId::QSelect => "q_select",
            CorpusId::DiamA => "diam_a",
            CorpusId::DiamB => "diam_b",
            CorpusId::SortSel => "sort_sel",
            CorpusId::Coupon => "coupon",
            CorpusId::ResA => "res_a",
            CorpusId::ResB => "res_b",
        }
    }

    /// Short name as used in result tables.
    pub fn title(self) -> &'static str {
        match self {
            CorpusId::RSearch => "R.-Sear.",
            CorpusId::QSort => "Q.-Sort",
            CorpusId::QSelect => "Q.-Select",
            CorpusId::DiamA => "Diam. A",
            CorpusId::DiamB => "Diam. B",
            CorpusId::SortSel => "Sort-Sel.",
            CorpusId::Coupon => "Coupon",
            CorpusId::ResA => "Res. A",
            CorpusId::ResB => "Res. B",
        }
    }

    /// Text of the shipped `.rec` file.
    pub fn source(self) -> &'static str {
        match self {
            CorpusId::RSearch => include_str!("../../corpus/r_search.rec"),
            CorpusId::QSort => include_str!("../../corpus/q_sort.rec"),
            CorpusId::QSelect => include_str!("../../corpus/q_select.rec"),
            CorpusId::DiamA => include_str!("../../corpus/diam_a.rec"),
            CorpusId::DiamB => include_str!("../../corpus/diam_b.rec"),
            CorpusId::SortSel => include_str!("../../corpus/sort_sel.rec"),
            CorpusId::Coupon => include_str!("../../corpus/coupon.rec"),
            CorpusId::ResA => include_str!("../../corpus/res_a.rec"),
            CorpusId::ResB => include_str!("../../corpus/res_b.rec"),
        }
    }
}

impl fmt::Display for CorpusId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CorpusId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        CorpusId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown corpus entry '{s}'")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CorpusEntry {
    pub id: CorpusId,
    pub relation: Relation,
    /// The shape the published results were obtained with; in `m` for bivariate entries.
    pub shape: BoundShape,
    pub expected: EntryFixture,
}

impl CorpusEntry {
    pub fn is_bivariate(&self) -> bool {
        matches!(self.relation, Relation::Bi(_))
    }

    /// The relation whose solution the bound is stated for: the entry itself, or the
    /// reduced relation in `m` of a bivariate entry.
    pub fn univariate(&self) -> Result<UniRecurrence> {
        match &self.relation {
            Relation::Uni(r) => Ok(r.clone()),
            Relation::Bi(r) => r.reduced(),
        }
    }
}

/// Every entry, with Sort-by-Select using the frozen selection bound `8.091·n + 1`.
pub fn corpus_list() -> Vec<CorpusEntry> {
    let fixtures = Fixtures::builtin();
    CorpusId::ALL
        .into_iter()
        .map(|id| {
            let relation = parse_relation(id.source()).expect("shipped corpus parses");
            let expected = fixtures.entry(id).expect("fixture for every entry").clone();
            let shape = expected.accepted_shape().expect("every entry has an accepted shape");
            CorpusEntry { id, relation, shape, expected }
        })
        .collect()
}

pub fn corpus_entry(id: CorpusId) -> CorpusEntry {
    corpus_list().into_iter().find(|e| e.id == id).expect("all ids are listed")
}

/// Sort-by-Select with the selection step bounded by `select_d·n + 1`.
pub fn sort_select_with(select_d: Milli) -> UniRecurrence {
    let src = format!("rel T(n) = 5 + {select_d}*n + T(floor(n/2)) + T(ceil(n/2))\nbase T(1) = 1\n");
    parse_uni(&src).expect("well-formed relation")
}

/// The frozen selection constant used by the shipped Sort-by-Select entry.
pub fn frozen_select_constant() -> Milli {
    Milli::from_thousandths(8091)
}

/// The published epsilons, largest first.
pub fn table_epsilons() -> Vec<BigRational> {
    ["0.5", "0.3", "0.1", "0.01"].iter().map(|s| crate::numeric::parse_decimal(s).expect("decimal")).collect()
}

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::CorpusId;
use crate::analyzer::Verdict;
use crate::error::{Error, Result};
use crate::numeric::{parse_decimal, Milli};
use crate::overapprox::BoundShape;

/// Published synthesis result for one epsilon.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SynthCell {
    /// Decimal text, kept exact.
    pub epsilon: String,
    #[serde(rename = "N")]
    pub n: u64,
    pub d: Milli,
}

impl SynthCell {
    pub fn epsilon(&self) -> Result<BigRational> {
        parse_decimal(&self.epsilon).ok_or_else(|| Error::InvalidArgument(format!("bad epsilon '{}'", self.epsilon)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryFixture {
    pub id: CorpusId,
    /// Verdict per shape tried, failures and the accepted shape alike.
    pub decisions: BTreeMap<BoundShape, Verdict>,
    pub d100: Milli,
    pub cells: Vec<SynthCell>,
}

impl EntryFixture {
    pub fn accepted_shape(&self) -> Option<BoundShape> {
        self.decisions.iter().find(|(_, v)| **v == Verdict::Yes).map(|(s, _)| *s)
    }

    pub fn cell(&self, eps: &BigRational) -> Option<&SynthCell> {
        self.cells.iter().find(|c| c.epsilon().ok().as_ref() == Some(eps))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fixtures {
    pub entries: Vec<EntryFixture>,
}

impl Fixtures {
    pub fn builtin() -> Self {
        Fixtures::from_json(include_str!("../../corpus/fixtures.json")).expect("shipped fixtures load")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidArgument(format!("fixtures: {e}")))
    }

    pub fn entry(&self, id: CorpusId) -> Option<&EntryFixture> {
        self.entries.iter().find(|e| e.id == id)
    }
}

use thiserror::Error;

use crate::grammar::SymbolId;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("input is empty")]
    EmptyInput,
    #[error("record {0} is empty")]
    EmptyRecord(usize),
    #[error("string is not a Lyndon word of length >= 2")]
    NotFactorizable,
    #[error("expansion of {len} characters exceeds the cap of {cap}")]
    ExpansionTooLarge { len: u64, cap: u64 },
    #[error("heavy/light threshold must exceed 1, got {0}")]
    InvalidThreshold(usize),
    #[error("symbol {0} is not in the ordered marker index")]
    SymbolNotIndexed(SymbolId),
    #[error("children of symbol {0} are not in the ordered marker index")]
    ChildrenNotIndexed(SymbolId),
    #[error("malformed grammar: {0}")]
    MalformedGrammar(String),
    #[error("grammar is not lexicographically sorted at symbol {0}")]
    UnsortedGrammar(SymbolId),
    #[error("{variant} takes a single text, got {records} records")]
    SingleTextRequired { variant: &'static str, records: usize },
    #[error("input contains a byte that renders like a sentinel")]
    SentinelClash,
    #[error("input of {len} exceeds the oracle limit of {limit}")]
    TooLarge { len: usize, limit: usize },
    #[error("text of {len} characters exceeds the Lyndon array memory budget ({budget} bytes)")]
    LyndonArrayTooLarge { len: usize, budget: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

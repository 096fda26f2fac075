//! Lyndon grammar construction and BWT derivation.
//!
//! The pipeline parses each text right to left into a Lyndon straight-line
//! program, sorts the grammar symbols by the strings they generate and
//! derives a run-length encoded BWT variant from the sorted grammar.
//!
//! ```
//! use lgbwt::{derive, BuildOptions, BwtVariant, SequenceCollection};
//!
//! let input = SequenceCollection::from_strings(["banana"]).unwrap();
//! let out = derive(BwtVariant::DollarBwt, &input, &BuildOptions::default()).unwrap();
//! assert_eq!(out.rendered().to_vec(), b"annb$aa");
//! ```

pub mod alphabet;
pub mod builder;
pub mod collection;
pub mod deriver;
pub mod error;
pub mod grammar;
pub mod lyndon;
pub mod oracle;
pub mod rle;
pub mod sorter;

pub use alphabet::{lift, CharClass, ExtChar};
pub use builder::{
    build_collection_parallel, build_sequence, build_with_heavy_light, BuildOptions,
    ComparisonStrategy, Dictionary, Item, OrderedMarkerIndex, Parser,
};
pub use collection::{Record, SequenceCollection};
pub use deriver::{derive, derive_bbwt, render, variant_text, BwtVariant, Derivation};
pub use error::{Error, Result};
pub use grammar::{Grammar, Rule, SymbolId};
pub use rle::RleString;
pub use sorter::{first_symbol_forest, sort_grammar, FirstSymbolForest, SortedGrammar};

//! Company-centric relation extraction from dependency-parsed financial news.
//!
//! The pipeline consumes paragraphs that were already tokenized, tagged,
//! parsed and entity-annotated upstream ([`corpus`]), navigates their
//! dependency trees ([`deptree`]) with a small set of relation heuristics
//! ([`relex`]), labels money phrases and person mentions with a static
//! embedding classifier ([`semvec`]), and renders the result in the
//! `company, variable, value, date|` target format ([`records`]).
//! Predictions are scored against gold targets position by position
//! ([`evalkit`]).

pub mod cli;
pub mod corpus;
pub mod deptree;
pub mod error;
pub mod evalkit;
pub(crate) mod jsonl;
pub mod records;
pub mod relex;
pub mod semvec;

pub use corpus::{AnnotatedDocument, EntityLabel, EntitySpan, GoldExample, NounChunk, Pos, Token};
pub use deptree::TreeView;
pub use error::{Error, Result};
pub use evalkit::{Counts, EvalConfig, EvalReport, MatchMode};
pub use records::{RecordDate, RelationRecord, VariableName};
pub use relex::{PairwiseRelation, RelationKind, Rule};
pub use semvec::{EmbeddingTable, LexiconConfig, MoneyClass, PersonClass};

//! Berge-hypergraph toolkit: containment oracle with explicit witnesses,
//! greedy shadow-graph embeddings, exhaustive Ramsey lemma verification,
//! extremal lower-bound constructions, and desk-scale bound checks.

pub mod berge;
pub mod constructions;
pub mod embeddings;
pub mod error;
pub mod exec;
pub mod extremal;
pub mod graph;
pub mod hypergraph;
pub mod io;
pub mod matching;
pub mod pattern;
pub mod ramsey;

pub use berge::{berge_girth, contains_berge, is_linear, verify_witness, BergeWitness};
pub use error::{Error, Result};
pub use exec::Exec;
pub use graph::Graph;
pub use hypergraph::{count_report, CountReport, Hypergraph};
pub use pattern::PatternFamily;

//! Vector-space retrieval with TF-IDF weighting whose IDF logarithm base is a
//! free parameter, plus the evaluation harness that sweeps that base over a
//! grid and scores each setting with eleven-level precision, MAP and MAP@30.
//!
//! The pipeline is: [`collection_io`] parses a test collection, [`textpipe`]
//! turns text into stemmed terms, [`index`] builds the inverted index,
//! [`weighting`] and [`retrieval`] rank documents by cosine similarity,
//! [`evaluation`] scores rankings against judgments, and [`sweep`] repeats
//! the whole thing for every base on a grid.

pub mod cli;
pub mod collection_io;
pub mod error;
pub mod evaluation;
pub mod index;
pub mod retrieval;
pub mod sweep;
pub mod textpipe;
pub mod weighting;

pub type DocId = u32;
pub type QueryId = u32;

pub use error::{Error, Result};

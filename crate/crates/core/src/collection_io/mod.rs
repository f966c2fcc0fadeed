//! Readers for the classic small test collections and the canonical
//! JSON-lines / TSV exchange format.

mod lisa;
mod npl;
mod qrels;
mod smart;

use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index::InvertedIndex;
use crate::{DocId, QueryId};

pub use qrels::{parse_qrels, Qrels, QrelsFormat};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawDocument {
    pub id: DocId,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawQuery {
    pub id: QueryId,
    pub text: String,
}

/// Native layout of a document or query file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Smart,
    Npl,
    Lisa,
    Jsonl,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CollectionStats {
    pub n_docs: usize,
    pub n_distinct_terms: usize,
    pub size_bytes: u64,
}

/// SMART documents: `.T` and `.W` sections form the text.
pub fn parse_smart(content: &str) -> Result<Vec<RawDocument>> {
    parse_documents(content, Format::Smart)
}

pub fn parse_documents(content: &str, format: Format) -> Result<Vec<RawDocument>> {
    let records = match format {
        Format::Smart => smart::parse_records(content, &['T', 'W'])?,
        Format::Npl => npl::parse_blocks(content)?,
        Format::Lisa => lisa::parse_documents(content)?,
        Format::Jsonl => return checked(parse_jsonl::<RawDocument>(content)?, |d| d.id),
    };
    checked(records.into_iter().map(|(id, text)| RawDocument { id, text }).collect(), |d| d.id)
}

/// SMART queries take their text from `.W` only.
pub fn parse_queries(content: &str, format: Format) -> Result<Vec<RawQuery>> {
    let records = match format {
        Format::Smart => smart::parse_records(content, &['W'])?,
        Format::Npl => npl::parse_blocks(content)?,
        Format::Lisa => lisa::parse_queries(content)?,
        Format::Jsonl => return checked(parse_jsonl::<RawQuery>(content)?, |q| q.id),
    };
    checked(records.into_iter().map(|(id, text)| RawQuery { id, text }).collect(), |q| q.id)
}

fn checked<T>(items: Vec<T>, id: impl Fn(&T) -> u32) -> Result<Vec<T>> {
    let mut seen = BTreeSet::new();
    for item in &items {
        if !seen.insert(id(item)) {
            return Err(Error::DuplicateId(id(item)));
        }
    }
    Ok(items)
}

fn parse_jsonl<T: for<'de> Deserialize<'de>>(content: &str) -> Result<Vec<T>> {
    content
        .lines()
        .enumerate()
        .filter(|(_, line)| !line.trim().is_empty())
        .map(|(idx, line)| serde_json::from_str(line).map_err(|e| Error::parse(idx + 1, e.to_string())))
        .collect()
}

/// One `{"id":..,"text":..}` object per line, LF-terminated.
pub fn to_jsonl<T: Serialize>(items: &[T]) -> String {
    let mut out = String::new();
    for item in items {
        out.push_str(&serde_json::to_string(item).expect("records serialize"));
        out.push('\n');
    }
    out
}

/// Give queries ids 1..=n in file order. CRAN's query file numbers its
/// queries non-consecutively while its judgments use positions.
pub fn renumber_sequential(queries: Vec<RawQuery>) -> Vec<RawQuery> {
    queries.into_iter().enumerate().map(|(i, q)| RawQuery { id: i as QueryId + 1, text: q.text }).collect()
}

/// `size_bytes` counts indexable text; callers with file sizes at hand can
/// overwrite it.
pub fn collection_stats(docs: &[RawDocument], index: &InvertedIndex) -> CollectionStats {
    CollectionStats {
        n_docs: docs.len(),
        n_distinct_terms: index.n_terms(),
        size_bytes: docs.iter().map(|d| d.text.len() as u64).sum(),
    }
}

/// Read and concatenate the parsed records of several files (LISA ships its
/// documents in fourteen parts). Duplicate ids across files are rejected.
pub fn load_documents<P: AsRef<Path>>(paths: &[P], format: Format) -> Result<Vec<RawDocument>> {
    let mut docs = Vec::new();
    for path in paths {
        docs.extend(parse_documents(&read(path.as_ref())?, format)?);
    }
    checked(docs, |d| d.id)
}

pub fn load_queries(path: &Path, format: Format) -> Result<Vec<RawQuery>> {
    parse_queries(&read(path)?, format)
}

pub fn load_qrels(path: &Path, format: QrelsFormat) -> Result<Qrels> {
    parse_qrels(&read(path)?, format)
}

fn read(path: &Path) -> Result<String> {
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    // Some of the old collections carry stray Latin-1 bytes.
    Ok(String::from_utf8_lossy(&bytes).into_owned())
}

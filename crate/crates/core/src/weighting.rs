//! TF-IDF weights with the IDF logarithm taken in an arbitrary base.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::index::{InvertedIndex, TermId};
use crate::DocId;

/// The logarithm base used for IDF. Always positive and different from 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightScheme {
    base: f64,
    ln_base: f64,
}

impl WeightScheme {
    pub fn new(base: f64) -> Result<Self> {
        if !base.is_finite() || base <= 0.0 || base == 1.0 {
            return Err(Error::InvalidBase(base));
        }
        Ok(WeightScheme { base, ln_base: base.ln() })
    }

    pub fn base(&self) -> f64 {
        self.base
    }

    fn log(&self, x: f64) -> f64 {
        x.ln() / self.ln_base
    }
}

impl Default for WeightScheme {
    fn default() -> Self {
        WeightScheme::new(10.0).expect("10 is a valid base")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TermWeight {
    pub term: String,
    pub weight: f64,
}

/// log_b(x) by change of base: ln(x) / ln(b).
pub fn log_base(x: f64, base: f64) -> Result<f64> {
    let scheme = WeightScheme::new(base)?;
    if x <= 0.0 || !x.is_finite() {
        return Err(Error::Domain(x));
    }
    Ok(scheme.log(x))
}

/// log_b(N / df). Zero exactly when the term occurs in every document.
pub fn idf(index: &InvertedIndex, term: &str, scheme: &WeightScheme) -> Result<f64> {
    let id = index.term_id(term).ok_or_else(|| Error::TermNotInCollection(term.to_string()))?;
    Ok(idf_of(index, id, scheme))
}

pub(crate) fn idf_of(index: &InvertedIndex, id: TermId, scheme: &WeightScheme) -> f64 {
    let df = index.doc_freq_of(id);
    let n = index.n_docs();
    if df == n {
        return 0.0;
    }
    scheme.log(n as f64 / df as f64)
}

pub fn tfidf(tf: u32, idf_value: f64) -> f64 {
    f64::from(tf) * idf_value
}

/// IDF of every dictionary term under one scheme, indexed by term id.
#[derive(Debug, Clone)]
pub struct IdfTable {
    values: Vec<f64>,
}

impl IdfTable {
    pub fn new(index: &InvertedIndex, scheme: &WeightScheme) -> Self {
        let values = (0..index.n_terms() as TermId).map(|id| idf_of(index, id, scheme)).collect();
        IdfTable { values }
    }

    pub fn get(&self, id: TermId) -> f64 {
        self.values[id as usize]
    }
}

pub fn weigh_document(index: &InvertedIndex, doc_id: DocId, scheme: &WeightScheme) -> Result<Vec<TermWeight>> {
    let slot = index.doc_slot(doc_id).ok_or(Error::UnknownDocument(doc_id))?;
    Ok(index
        .doc_terms(slot)
        .iter()
        .map(|&(id, tf)| TermWeight { term: index.term(id).to_string(), weight: tfidf(tf, idf_of(index, id, scheme)) })
        .collect())
}

/// Query term frequencies counted within the query; terms the collection
/// never saw are dropped. Sorted by term id.
pub(crate) fn query_term_counts<S: AsRef<str>>(index: &InvertedIndex, tokens: &[S]) -> Vec<(TermId, u32)> {
    let mut counts: BTreeMap<TermId, u32> = BTreeMap::new();
    for token in tokens {
        if let Some(id) = index.term_id(token.as_ref()) {
            *counts.entry(id).or_insert(0) += 1;
        }
    }
    counts.into_iter().collect()
}

pub fn weigh_query<S: AsRef<str>>(index: &InvertedIndex, tokens: &[S], scheme: &WeightScheme) -> Vec<TermWeight> {
    query_term_counts(index, tokens)
        .into_iter()
        .map(|(id, tf)| TermWeight { term: index.term(id).to_string(), weight: tfidf(tf, idf_of(index, id, scheme)) })
        .collect()
}

//! Immutable inverted index with raw term frequencies.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::DocId;

pub type TermId = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Posting {
    pub doc_id: DocId,
    pub tf: u32,
}

/// Term dictionary sorted lexicographically, postings sorted by doc id, plus
/// a forward view (per document, its terms in term-id order) for weighting
/// and norms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvertedIndex {
    terms: Vec<String>,
    term_ids: HashMap<String, TermId>,
    postings: Vec<Vec<Posting>>,
    doc_ids: Vec<DocId>,
    doc_terms: Vec<Vec<(TermId, u32)>>,
}

pub fn build_index(docs: &[(DocId, Vec<String>)]) -> Result<InvertedIndex> {
    InvertedIndex::build(docs.iter().map(|(id, tokens)| (*id, tokens.as_slice())))
}

impl InvertedIndex {
    pub fn build<'a, I, S>(docs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (DocId, &'a [S])>,
        S: AsRef<str> + 'a,
    {
        let mut per_doc: BTreeMap<DocId, BTreeMap<String, u32>> = BTreeMap::new();
        for (id, tokens) in docs {
            let mut counts = BTreeMap::new();
            for token in tokens {
                *counts.entry(token.as_ref().to_string()).or_insert(0u32) += 1;
            }
            if per_doc.insert(id, counts).is_some() {
                return Err(Error::DuplicateId(id));
            }
        }
        Self::from_counts(per_doc)
    }

    fn from_counts(per_doc: BTreeMap<DocId, BTreeMap<String, u32>>) -> Result<Self> {
        if per_doc.is_empty() {
            return Err(Error::EmptyCollection);
        }
        let mut dictionary: BTreeMap<&str, Vec<Posting>> = BTreeMap::new();
        for (&doc_id, counts) in &per_doc {
            for (term, &tf) in counts {
                dictionary.entry(term.as_str()).or_default().push(Posting { doc_id, tf });
            }
        }
        let terms: Vec<String> = dictionary.keys().map(|t| t.to_string()).collect();
        let term_ids: HashMap<String, TermId> =
            terms.iter().enumerate().map(|(i, t)| (t.clone(), i as TermId)).collect();
        let postings: Vec<Vec<Posting>> = dictionary.into_values().collect();

        let doc_ids: Vec<DocId> = per_doc.keys().copied().collect();
        // Term ids follow lexicographic order, so each BTreeMap already iterates in id order.
        let doc_terms =
            per_doc.values().map(|counts| counts.iter().map(|(t, &tf)| (term_ids[t], tf)).collect()).collect();

        Ok(InvertedIndex { terms, term_ids, postings, doc_ids, doc_terms })
    }

    /// N: every document, including those with no indexable terms.
    pub fn n_docs(&self) -> usize {
        self.doc_ids.len()
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn term_id(&self, term: &str) -> Option<TermId> {
        self.term_ids.get(term).copied()
    }

    pub fn term(&self, id: TermId) -> &str {
        &self.terms[id as usize]
    }

    pub fn terms(&self) -> &[String] {
        &self.terms
    }

    pub fn doc_freq(&self, term: &str) -> usize {
        self.term_id(term).map_or(0, |id| self.doc_freq_of(id))
    }

    pub fn doc_freq_of(&self, id: TermId) -> usize {
        self.postings[id as usize].len()
    }

    pub fn term_freq(&self, term: &str, doc_id: DocId) -> u32 {
        let Some(id) = self.term_id(term) else { return 0 };
        let postings = &self.postings[id as usize];
        postings.binary_search_by_key(&doc_id, |p| p.doc_id).map_or(0, |i| postings[i].tf)
    }

    pub fn postings(&self, id: TermId) -> &[Posting] {
        &self.postings[id as usize]
    }

    /// Document ids in ascending order; a document's position here is its slot.
    pub fn doc_ids(&self) -> &[DocId] {
        &self.doc_ids
    }

    pub fn doc_slot(&self, doc_id: DocId) -> Option<usize> {
        self.doc_ids.binary_search(&doc_id).ok()
    }

    /// (term id, tf) pairs of the document in `slot`, sorted by term id.
    pub fn doc_terms(&self, slot: usize) -> &[(TermId, u32)] {
        &self.doc_terms[slot]
    }

    /// Number of distinct terms in a document.
    pub fn doc_length(&self, doc_id: DocId) -> Option<usize> {
        self.doc_slot(doc_id).map(|s| self.doc_terms[s].len())
    }

    pub fn to_snapshot(&self) -> String {
        let snapshot = Snapshot {
            format: SNAPSHOT_FORMAT.to_string(),
            version: SNAPSHOT_VERSION,
            docs: self
                .doc_ids
                .iter()
                .zip(&self.doc_terms)
                .map(|(&id, terms)| SnapshotDoc {
                    id,
                    terms: terms.iter().map(|&(t, tf)| (self.term(t).to_string(), tf)).collect(),
                })
                .collect(),
        };
        serde_json::to_string(&snapshot).expect("snapshot serializes")
    }

    pub fn from_snapshot(content: &str) -> Result<Self> {
        let snapshot: Snapshot = serde_json::from_str(content).map_err(|e| Error::Snapshot(e.to_string()))?;
        if snapshot.format != SNAPSHOT_FORMAT || snapshot.version != SNAPSHOT_VERSION {
            return Err(Error::Snapshot(format!("unsupported snapshot {} v{}", snapshot.format, snapshot.version)));
        }
        let mut per_doc = BTreeMap::new();
        for doc in snapshot.docs {
            let mut counts = BTreeMap::new();
            for (term, tf) in doc.terms {
                if tf == 0 || counts.insert(term, tf).is_some() {
                    return Err(Error::Snapshot(format!("invalid term list for document {}", doc.id)));
                }
            }
            if per_doc.insert(doc.id, counts).is_some() {
                return Err(Error::DuplicateId(doc.id));
            }
        }
        Self::from_counts(per_doc)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_snapshot()).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let content = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_snapshot(&content)
    }
}

const SNAPSHOT_FORMAT: &str = "logbase-ir-index";
const SNAPSHOT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct Snapshot {
    format: String,
    version: u32,
    docs: Vec<SnapshotDoc>,
}

#[derive(Serialize, Deserialize)]
struct SnapshotDoc {
    id: DocId,
    terms: Vec<(String, u32)>,
}

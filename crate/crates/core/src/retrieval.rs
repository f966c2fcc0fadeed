//! Cosine-similarity ranking over the inverted index.

use std::collections::{BTreeMap, HashMap};

use crate::collection_io::RawQuery;
use crate::error::{Error, Result};
use crate::index::InvertedIndex;
use crate::textpipe::{pipeline, Stoplist};
use crate::weighting::{query_term_counts, tfidf, IdfTable, TermWeight, WeightScheme};
use crate::{DocId, QueryId};

/// Scores closer than this are ties and ordered by ascending doc id.
///
/// Rescaling every weight by the same factor leaves cosine unchanged in exact
/// arithmetic, but the rounded results can differ in the last bits. Treating
/// near-equal scores as ties keeps the ordering identical across bases.
pub const TIE_EPSILON: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankedEntry {
    pub doc_id: DocId,
    pub score: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankedList {
    pub query_id: QueryId,
    pub entries: Vec<RankedEntry>,
}

impl RankedList {
    /// Sort by descending score, ties (within [`TIE_EPSILON`]) by ascending doc id.
    pub fn from_scores(query_id: QueryId, mut entries: Vec<RankedEntry>) -> Self {
        entries.sort_by(|a, b| b.score.total_cmp(&a.score).then(a.doc_id.cmp(&b.doc_id)));
        let mut start = 0;
        for i in 1..=entries.len() {
            if i == entries.len() || entries[i - 1].score - entries[i].score > TIE_EPSILON {
                entries[start..i].sort_by_key(|e| e.doc_id);
                start = i;
            }
        }
        RankedList { query_id, entries }
    }

    pub fn doc_ids(&self) -> impl Iterator<Item = DocId> + '_ {
        self.entries.iter().map(|e| e.doc_id)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Σ a·b / (‖a‖‖b‖) over terms; 0 when either vector has zero norm.
pub fn cosine(a: &[TermWeight], b: &[TermWeight]) -> f64 {
    let lookup: HashMap<&str, f64> = b.iter().map(|w| (w.term.as_str(), w.weight)).collect();
    let dot: f64 = a.iter().filter_map(|w| lookup.get(w.term.as_str()).map(|v| w.weight * v)).sum();
    let norm = |v: &[TermWeight]| v.iter().map(|w| w.weight * w.weight).sum::<f64>().sqrt();
    let (na, nb) = (norm(a), norm(b));
    if na == 0.0 || nb == 0.0 {
        0.0
    } else {
        dot / (na * nb)
    }
}

/// Ranks queries against an index under one fixed base. IDF values and
/// document norms are computed once here and reused for every query.
pub struct Scorer<'a> {
    index: &'a InvertedIndex,
    idf: IdfTable,
    doc_norms: Vec<f64>,
}

impl<'a> Scorer<'a> {
    pub fn new(index: &'a InvertedIndex, scheme: &WeightScheme) -> Self {
        let idf = IdfTable::new(index, scheme);
        let doc_norms = (0..index.n_docs())
            .map(|slot| {
                index
                    .doc_terms(slot)
                    .iter()
                    .map(|&(id, tf)| {
                        let w = tfidf(tf, idf.get(id));
                        w * w
                    })
                    .sum::<f64>()
                    .sqrt()
            })
            .collect();
        Scorer { index, idf, doc_norms }
    }

    /// Rank already-processed query tokens. Documents sharing no term with
    /// the query are left out.
    pub fn rank_tokens<S: AsRef<str>>(&self, query_id: QueryId, tokens: &[S]) -> RankedList {
        let query: Vec<(u32, f64)> = query_term_counts(self.index, tokens)
            .into_iter()
            .map(|(id, tf)| (id, tfidf(tf, self.idf.get(id))))
            .collect();
        let query_norm = query.iter().map(|(_, w)| w * w).sum::<f64>().sqrt();

        // Accumulate in term-id order, then doc order, so sums are reproducible.
        let mut dots: BTreeMap<usize, f64> = BTreeMap::new();
        for &(id, qw) in &query {
            let idf = self.idf.get(id);
            for posting in self.index.postings(id) {
                let slot = self.index.doc_slot(posting.doc_id).expect("posting refers to indexed doc");
                *dots.entry(slot).or_insert(0.0) += qw * tfidf(posting.tf, idf);
            }
        }

        let entries = dots
            .into_iter()
            .map(|(slot, dot)| {
                let doc_norm = self.doc_norms[slot];
                let score = if query_norm == 0.0 || doc_norm == 0.0 { 0.0 } else { dot / (query_norm * doc_norm) };
                RankedEntry { doc_id: self.index.doc_ids()[slot], score }
            })
            .collect();
        RankedList::from_scores(query_id, entries)
    }
}

pub fn rank(index: &InvertedIndex, query: &RawQuery, scheme: &WeightScheme, stoplist: &Stoplist) -> RankedList {
    Scorer::new(index, scheme).rank_tokens(query.id, &pipeline(&query.text, stoplist))
}

/// Run file: `query_id<TAB>doc_id<TAB>rank<TAB>score`, ranks from 1.
pub fn write_run(lists: &[RankedList]) -> String {
    let mut out = String::new();
    for list in lists {
        for (i, e) in list.entries.iter().enumerate() {
            out.push_str(&format!("{}\t{}\t{}\t{}\n", list.query_id, e.doc_id, i + 1, e.score));
        }
    }
    out
}

/// Parse a run file in our four-column layout or the six-column TREC layout
/// (`qid Q0 doc rank score tag`). Entries are ordered by the rank column.
pub fn parse_run(content: &str) -> Result<Vec<RankedList>> {
    let mut by_query: BTreeMap<QueryId, Vec<(u32, RankedEntry)>> = BTreeMap::new();
    for (idx, line) in content.lines().enumerate() {
        let line_no = idx + 1;
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let (q, d, r, s) = match tokens.len() {
            0 => continue,
            4 => (tokens[0], tokens[1], tokens[2], tokens[3]),
            6 => (tokens[0], tokens[2], tokens[3], tokens[4]),
            n => return Err(Error::parse(line_no, format!("expected 4 or 6 columns, found {n}"))),
        };
        let int =
            |t: &str| t.parse::<u32>().map_err(|_| Error::parse(line_no, format!("expected integer, found `{t}`")));
        let score = s
            .parse::<f64>()
            .ok()
            .filter(|s| s.is_finite())
            .ok_or_else(|| Error::parse(line_no, format!("invalid score `{s}`")))?;
        by_query.entry(int(q)?).or_default().push((int(r)?, RankedEntry { doc_id: int(d)?, score }));
    }
    by_query
        .into_iter()
        .map(|(query_id, mut rows)| {
            rows.sort_by_key(|(rank, e)| (*rank, e.doc_id));
            let mut seen = std::collections::BTreeSet::new();
            for (_, e) in &rows {
                if !seen.insert(e.doc_id) {
                    return Err(Error::parse(0, format!("query {query_id} lists document {} twice", e.doc_id)));
                }
            }
            Ok(RankedList { query_id, entries: rows.into_iter().map(|(_, e)| e).collect() })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::build_index;

    fn tw(pairs: &[(&str, f64)]) -> Vec<TermWeight> {
        pairs.iter().map(|(t, w)| TermWeight { term: t.to_string(), weight: *w }).collect()
    }

    #[test]
    fn cosine_examples() {
        let xy = tw(&[("x", 1.0), ("y", 1.0)]);
        assert!((cosine(&xy, &xy) - 1.0).abs() < 1e-12);
        assert_eq!(cosine(&tw(&[("x", 1.0)]), &tw(&[("y", 1.0)])), 0.0);
        assert!((cosine(&xy, &tw(&[("x", 1.0)])) - 0.5f64.sqrt()).abs() < 1e-12);
        assert_eq!(cosine(&xy, &tw(&[("x", 0.0)])), 0.0);
        assert_eq!(cosine(&[], &xy), 0.0);
    }

    fn toy() -> InvertedIndex {
        build_index(&[(1, vec!["apple".into(), "pie".into()]), (2, vec!["banana".into(), "split".into()])]).unwrap()
    }

    #[test]
    fn non_overlapping_documents_omitted() {
        let list = Scorer::new(&toy(), &WeightScheme::default()).rank_tokens(1, &["apple"]);
        assert_eq!(list.len(), 1);
        assert_eq!(list.entries[0].doc_id, 1);
        assert!(list.entries[0].score > 0.0);
    }

    #[test]
    fn empty_query_gives_empty_list() {
        let index = toy();
        let scorer = Scorer::new(&index, &WeightScheme::default());
        assert!(scorer.rank_tokens(1, &["cherry"]).is_empty());
        assert!(scorer.rank_tokens::<&str>(1, &[]).is_empty());
    }

    #[test]
    fn self_match_scores_one() {
        let index = build_index(&[
            (1, vec!["heart".into(), "valve".into(), "valve".into()]),
            (2, vec!["heart".into(), "lung".into()]),
            (3, vec!["kidney".into(), "valve".into(), "lung".into()]),
        ])
        .unwrap();
        for base in [0.1, 2.0, 10.0, 77.7] {
            let list =
                Scorer::new(&index, &WeightScheme::new(base).unwrap()).rank_tokens(1, &["heart", "valve", "valve"]);
            assert_eq!(list.entries[0].doc_id, 1);
            assert!((list.entries[0].score - 1.0).abs() < 1e-9);
            assert!(list.entries[1].score < 1.0 - 1e-6);
        }
    }

    #[test]
    fn zero_idf_terms_score_zero() {
        // "common" appears everywhere, so its weight vanishes.
        let index = build_index(&[(1, vec!["common".into()]), (2, vec!["common".into(), "rare".into()])]).unwrap();
        let list = Scorer::new(&index, &WeightScheme::default()).rank_tokens(1, &["common"]);
        assert_eq!(list.doc_ids().collect::<Vec<_>>(), vec![1, 2]);
        assert!(list.entries.iter().all(|e| e.score == 0.0));
    }

    #[test]
    fn ties_broken_by_doc_id() {
        let list = RankedList::from_scores(
            1,
            vec![
                RankedEntry { doc_id: 9, score: 0.5 },
                RankedEntry { doc_id: 3, score: 0.5 + 1e-15 },
                RankedEntry { doc_id: 4, score: 0.9 },
                RankedEntry { doc_id: 1, score: 0.1 },
            ],
        );
        assert_eq!(list.doc_ids().collect::<Vec<_>>(), vec![4, 3, 9, 1]);
    }

    #[test]
    fn rank_uses_pipeline() {
        let index = build_index(&[(1, vec!["poni".into()]), (2, vec!["hors".into()])]).unwrap();
        let q = RawQuery { id: 5, text: "The ponies!".into() };
        let list = rank(&index, &q, &WeightScheme::default(), &Stoplist::smart());
        assert_eq!(list.query_id, 5);
        assert_eq!(list.doc_ids().collect::<Vec<_>>(), vec![1]);
    }

    #[test]
    fn run_file_round_trip() {
        let lists = vec![RankedList {
            query_id: 2,
            entries: vec![RankedEntry { doc_id: 7, score: 0.75 }, RankedEntry { doc_id: 3, score: 0.1 }],
        }];
        let text = write_run(&lists);
        assert_eq!(text, "2\t7\t1\t0.75\n2\t3\t2\t0.1\n");
        assert_eq!(parse_run(&text).unwrap(), lists);
        let trec = parse_run("2 Q0 3 2 0.1 tag\n2 Q0 7 1 0.75 tag\n").unwrap();
        assert_eq!(trec, lists);
        assert!(parse_run("1 2 3\n").is_err());
        assert!(parse_run("1 2 1 0.5\n1 2 2 0.4\n").is_err());
    }
}

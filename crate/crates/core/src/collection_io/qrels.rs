use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::{DocId, QueryId};

use super::npl;

/// Layout of a relevance-judgment file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum QrelsFormat {
    /// Sniff the column count of the first non-empty line.
    #[default]
    Auto,
    /// `query_id doc_id` (also the canonical TSV).
    Pairs,
    /// `query_id doc_id grade` (CRAN).
    Graded,
    /// `query_id 0 doc_id grade` (MED, TREC).
    Trec,
    /// `query_id doc_id 0 0.000000` (CISI).
    Cisi,
    /// NPL `rlv-ass`: id line, doc ids, `/` terminator.
    Npl,
    /// LISA `LISA.REL`: `Query <n>` header, doc ids ended by `-1`.
    Lisa,
}

/// Relevance judgments: query id to the set of relevant document ids.
///
/// Every stored set is non-empty. Queries that appear in the input with no
/// relevant documents are listed in [`Qrels::dropped`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Qrels {
    judged: BTreeMap<QueryId, BTreeSet<DocId>>,
    dropped: Vec<QueryId>,
}

impl Qrels {
    pub fn from_pairs<I: IntoIterator<Item = (QueryId, DocId)>>(pairs: I) -> Self {
        let mut judged: BTreeMap<QueryId, BTreeSet<DocId>> = BTreeMap::new();
        for (q, d) in pairs {
            judged.entry(q).or_default().insert(d);
        }
        Qrels { judged, dropped: Vec::new() }
    }

    pub fn relevant(&self, query: QueryId) -> Option<&BTreeSet<DocId>> {
        self.judged.get(&query)
    }

    pub fn query_ids(&self) -> impl Iterator<Item = QueryId> + '_ {
        self.judged.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (QueryId, &BTreeSet<DocId>)> {
        self.judged.iter().map(|(q, d)| (*q, d))
    }

    pub fn len(&self) -> usize {
        self.judged.len()
    }

    pub fn is_empty(&self) -> bool {
        self.judged.is_empty()
    }

    /// Queries that were named in the input but had no relevant documents.
    pub fn dropped(&self) -> &[QueryId] {
        &self.dropped
    }

    /// Canonical form: `query_id<TAB>doc_id`, sorted.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for (q, docs) in &self.judged {
            for d in docs {
                out.push_str(&format!("{q}\t{d}\n"));
            }
        }
        out
    }
}

pub fn parse_qrels(content: &str, format: QrelsFormat) -> Result<Qrels> {
    let format = match format {
        QrelsFormat::Auto => sniff(content)?,
        f => f,
    };
    match format {
        QrelsFormat::Npl => parse_npl(content),
        QrelsFormat::Lisa => parse_lisa(content),
        columns => parse_columns(content, columns),
    }
}

fn sniff(content: &str) -> Result<QrelsFormat> {
    let Some(first) = content.lines().find(|l| !l.trim().is_empty()) else {
        return Ok(QrelsFormat::Pairs);
    };
    let tokens: Vec<&str> = first.split_whitespace().collect();
    match tokens.len() {
        2 => Ok(QrelsFormat::Pairs),
        3 => Ok(QrelsFormat::Graded),
        // TREC puts a literal 0 in the second column; doc ids start at 1.
        4 if tokens[1] == "0" => Ok(QrelsFormat::Trec),
        4 => Ok(QrelsFormat::Cisi),
        n => Err(Error::parse(1, format!("cannot infer qrels layout from {n} columns"))),
    }
}

fn parse_id(token: &str, line: usize) -> Result<u32> {
    token.parse::<u32>().map_err(|_| Error::parse(line, format!("expected integer id, found `{token}`")))
}

fn parse_columns(content: &str, format: QrelsFormat) -> Result<Qrels> {
    let (width, doc_col) = match format {
        QrelsFormat::Pairs => (2, 1),
        QrelsFormat::Graded => (3, 1),
        QrelsFormat::Trec => (4, 2),
        QrelsFormat::Cisi => (4, 1),
        _ => unreachable!("block formats handled separately"),
    };
    let mut pairs = Vec::new();
    for (idx, line) in content.lines().enumerate() {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        if tokens.len() != width {
            return Err(Error::parse(idx + 1, format!("expected {width} columns, found {}", tokens.len())));
        }
        pairs.push((parse_id(tokens[0], idx + 1)?, parse_id(tokens[doc_col], idx + 1)?));
    }
    Ok(Qrels::from_pairs(pairs))
}

fn parse_npl(content: &str) -> Result<Qrels> {
    let mut qrels = Qrels::default();
    for (query, body) in npl::parse_blocks(content)? {
        let docs = body.split_whitespace().map(|t| parse_id(t, 0)).collect::<Result<BTreeSet<_>>>()?;
        insert_or_drop(&mut qrels, query, docs);
    }
    Ok(qrels)
}

fn parse_lisa(content: &str) -> Result<Qrels> {
    let mut qrels = Qrels::default();
    let mut current: Option<(QueryId, BTreeSet<DocId>)> = None;
    for (idx, raw) in content.lines().enumerate() {
        let line = raw.trim();
        if let Some(rest) = line.strip_prefix("Query") {
            if let Some((q, docs)) = current.take() {
                insert_or_drop(&mut qrels, q, docs);
            }
            current = Some((parse_id(rest.trim(), idx + 1)?, BTreeSet::new()));
            continue;
        }
        let numbers: Option<Vec<i64>> = line.split_whitespace().map(|t| t.parse().ok()).collect();
        // Lines with words ("2 Relevant Refs:") are descriptive.
        let Some(numbers) = numbers else { continue };
        let Some((_, docs)) = current.as_mut() else {
            if numbers.is_empty() {
                continue;
            }
            return Err(Error::parse(idx + 1, "document ids before first `Query` header"));
        };
        for n in numbers {
            if n == -1 {
                break;
            }
            let id = u32::try_from(n).map_err(|_| Error::parse(idx + 1, format!("invalid doc id {n}")))?;
            docs.insert(id);
        }
    }
    if let Some((q, docs)) = current {
        insert_or_drop(&mut qrels, q, docs);
    }
    Ok(qrels)
}

fn insert_or_drop(qrels: &mut Qrels, query: QueryId, docs: BTreeSet<DocId>) {
    if docs.is_empty() {
        qrels.dropped.push(query);
    } else {
        qrels.judged.entry(query).or_default().extend(docs);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(ids: &[u32]) -> BTreeSet<u32> {
        ids.iter().copied().collect()
    }

    #[test]
    fn two_column() {
        let q = parse_qrels("1 13\n1 14\n2 13", QrelsFormat::Pairs).unwrap();
        assert_eq!(q.relevant(1), Some(&set(&[13, 14])));
        assert_eq!(q.relevant(2), Some(&set(&[13])));
        assert_eq!(q.len(), 2);
    }

    #[test]
    fn four_column_trec() {
        let q = parse_qrels("1 0 13 1", QrelsFormat::Trec).unwrap();
        assert_eq!(q.relevant(1), Some(&set(&[13])));
    }

    #[test]
    fn duplicates_collapse() {
        let q = parse_qrels("1 13\n1 13", QrelsFormat::Pairs).unwrap();
        assert_eq!(q.relevant(1), Some(&set(&[13])));
    }

    #[test]
    fn sniffing() {
        assert_eq!(sniff("1 0 13 1\n").unwrap(), QrelsFormat::Trec);
        assert_eq!(sniff("1     28\t0\t0.000000\n").unwrap(), QrelsFormat::Cisi);
        assert_eq!(sniff("1 184 2\n").unwrap(), QrelsFormat::Graded);
        assert_eq!(sniff("1\t2\n").unwrap(), QrelsFormat::Pairs);
        let cisi = parse_qrels("1     28\t0\t0.000000\n1 35 0 0.000000\n", QrelsFormat::Auto).unwrap();
        assert_eq!(cisi.relevant(1), Some(&set(&[28, 35])));
        let cran = parse_qrels("1 184 2\n1 29 -1\n", QrelsFormat::Auto).unwrap();
        assert_eq!(cran.relevant(1), Some(&set(&[29, 184])));
    }

    #[test]
    fn bad_token_reports_line() {
        let err = parse_qrels("1 13\n1 x\n", QrelsFormat::Pairs).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn npl_blocks() {
        let q = parse_qrels("1\n  1239  1502\n  4462\n   /\n2\n   /\n", QrelsFormat::Npl).unwrap();
        assert_eq!(q.relevant(1), Some(&set(&[1239, 1502, 4462])));
        assert_eq!(q.dropped(), &[2]);
    }

    #[test]
    fn lisa_blocks() {
        let content = "Query 1\n2 Relevant Refs:\n3392 3396 -1\n\nQuery 2\n0 Relevant Refs:\n-1\n";
        let q = parse_qrels(content, QrelsFormat::Lisa).unwrap();
        assert_eq!(q.relevant(1), Some(&set(&[3392, 3396])));
        assert_eq!(q.dropped(), &[2]);
    }

    #[test]
    fn tsv_round_trip() {
        let q = parse_qrels("2 5\n1 13\n1 4\n", QrelsFormat::Pairs).unwrap();
        assert_eq!(q.to_tsv(), "1\t4\n1\t13\n2\t5\n");
        assert_eq!(parse_qrels(&q.to_tsv(), QrelsFormat::Auto).unwrap(), q);
    }

    proptest! {
        #[test]
        fn order_insensitive(pairs in proptest::collection::vec((1u32..20, 1u32..50), 1..40), seed in any::<u64>()) {
            let lines: Vec<String> = pairs.iter().map(|(q, d)| format!("{q} {d}")).collect();
            let mut shuffled = lines.clone();
            // deterministic permutation driven by the seed
            let n = shuffled.len();
            for i in (1..n).rev() {
                let j = (seed.wrapping_mul(i as u64 + 1).rotate_left(17) % (i as u64 + 1)) as usize;
                shuffled.swap(i, j);
            }
            let a = parse_qrels(&lines.join("\n"), QrelsFormat::Pairs).unwrap();
            let b = parse_qrels(&shuffled.join("\n"), QrelsFormat::Pairs).unwrap();
            prop_assert_eq!(&a, &b);
            prop_assert_eq!(parse_qrels(&a.to_tsv(), QrelsFormat::Pairs).unwrap(), a);
        }
    }
}

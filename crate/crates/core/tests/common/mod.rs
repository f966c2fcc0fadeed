//! Random toy corpora and a dense brute-force ranker shared by the
//! integration tests and the acceptance harness.
#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::Rng;

pub type Corpus = Vec<(u32, Vec<String>)>;
pub type Queries = Vec<(u32, Vec<String>)>;

fn word(i: usize) -> String {
    format!("t{i:02}")
}

/// Up to `max_docs` documents over a vocabulary of at most `max_terms`
/// terms, and up to `max_queries` queries. Queries may contain a term no
/// document uses. Doc ids are sparse and shuffled.
pub fn random_corpus<R: Rng>(rng: &mut R, max_docs: usize, max_terms: usize, max_queries: usize) -> (Corpus, Queries) {
    let n_docs = rng.random_range(1..=max_docs);
    let n_terms = rng.random_range(1..=max_terms);
    let mut ids: Vec<u32> = (1..=(n_docs as u32 * 3)).collect();
    for i in (1..ids.len()).rev() {
        ids.swap(i, rng.random_range(0..=i));
    }
    let docs = ids[..n_docs]
        .iter()
        .map(|&id| {
            let len = rng.random_range(1..=12);
            (id, (0..len).map(|_| word(rng.random_range(0..n_terms))).collect())
        })
        .collect();
    let n_queries = rng.random_range(1..=max_queries);
    let queries = (1..=n_queries as u32)
        .map(|q| {
            let len = rng.random_range(1..=4);
            (q, (0..len).map(|_| word(rng.random_range(0..=n_terms))).collect())
        })
        .collect();
    (docs, queries)
}

/// Ranks `query` against `docs` with full term-by-document matrices:
/// w = tf * log_b(N/df), score = cosine, documents without a shared term
/// omitted, scores within 1e-12 ordered by doc id.
pub fn dense_rank(docs: &Corpus, query: &[String], base: f64) -> Vec<(u32, f64)> {
    let vocab: Vec<&String> = docs.iter().flat_map(|(_, t)| t).collect::<BTreeSet<_>>().into_iter().collect();
    let n = docs.len() as f64;
    let tf = |tokens: &[String], term: &str| tokens.iter().filter(|t| t.as_str() == term).count() as f64;
    let idf: Vec<f64> = vocab
        .iter()
        .map(|term| {
            let df = docs.iter().filter(|(_, t)| t.contains(term)).count() as f64;
            (n / df).ln() / base.ln()
        })
        .collect();
    let q: Vec<f64> = vocab.iter().zip(&idf).map(|(term, w)| tf(query, term) * w).collect();
    let q_norm = q.iter().map(|x| x * x).sum::<f64>().sqrt();

    let mut scored: Vec<(u32, f64)> = Vec::new();
    for (id, tokens) in docs {
        let shares = vocab.iter().any(|term| tf(query, term) > 0.0 && tf(tokens, term) > 0.0);
        if !shares {
            continue;
        }
        let d: Vec<f64> = vocab.iter().zip(&idf).map(|(term, w)| tf(tokens, term) * w).collect();
        let d_norm = d.iter().map(|x| x * x).sum::<f64>().sqrt();
        let dot: f64 = q.iter().zip(&d).map(|(a, b)| a * b).sum();
        let score = if q_norm == 0.0 || d_norm == 0.0 { 0.0 } else { dot / (q_norm * d_norm) };
        scored.push((*id, score));
    }
    scored.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    let mut start = 0;
    for i in 1..=scored.len() {
        if i == scored.len() || scored[i - 1].1 - scored[i].1 > 1e-12 {
            scored[start..i].sort_by_key(|e| e.0);
            start = i;
        }
    }
    scored
}

/// At least `count` bases drawn from (0, 1) and (1, 100], half from each side.
pub fn sample_bases<R: Rng>(rng: &mut R, count: usize) -> Vec<f64> {
    (0..count).map(|i| if i % 2 == 0 { rng.random_range(0.01..0.99) } else { rng.random_range(1.01..=100.0) }).collect()
}

/// Published eleven-level precisions of a single reference query, with
/// their means.
pub const REFERENCE_LEVELS: [f64; 11] = [0.867, 0.675, 0.570, 0.520, 0.500, 0.420, 0.350, 0.340, 0.330, 0.313, 0.000];
pub const REFERENCE_MAP: f64 = 0.444;
pub const REFERENCE_MAP_AT_30: f64 = 0.658;
pub const REFERENCE_TOLERANCE: f64 = 0.0005;

/// (recall, precision) points that bucket onto [`REFERENCE_LEVELS`].
pub const REFERENCE_POINTS: [(f64, f64); 17] = [
    (0.00, 1.00),
    (0.00, 0.86),
    (0.02, 0.74),
    (0.11, 0.69),
    (0.13, 0.66),
    (0.20, 0.57),
    (0.34, 0.52),
    (0.42, 0.50),
    (0.52, 0.49),
    (0.54, 0.35),
    (0.64, 0.35),
    (0.70, 0.34),
    (0.81, 0.33),
    (0.86, 0.33),
    (0.89, 0.32),
    (0.90, 0.29),
    (0.96, 0.00),
];

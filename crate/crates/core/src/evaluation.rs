//! Precision/recall at every rank, bucketing onto eleven fixed recall levels,
//! and the two summary means reported by the experiment.
//!
//! `map11` and `map_at_30` are not the classical TREC measures: `map11` is the
//! mean of the eleven level precisions, and `map_at_30` is the mean of the
//! precisions at recall levels 0.0 to 0.3. Neither is precision at rank 30.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::collection_io::Qrels;
use crate::error::{Error, Result};
use crate::retrieval::RankedList;
use crate::{DocId, QueryId};

pub const LEVELS: usize = 11;
pub const DEFAULT_CUTOFF: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrPoint {
    pub rank: usize,
    pub recall: f64,
    pub precision: f64,
}

/// Precision at recall levels 0.0, 0.1, ..., 1.0.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct ElevenLevels(pub [f64; LEVELS]);

impl ElevenLevels {
    pub fn values(&self) -> &[f64; LEVELS] {
        &self.0
    }

    pub fn level_label(i: usize) -> String {
        format!("{:.1}", i as f64 / 10.0)
    }
}

/// How observed points become level precisions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Interpolation {
    /// Mean of the precisions whose recall falls in the level's range.
    #[default]
    BucketMean,
    /// Highest precision at any recall at or above the level.
    Standard,
}

/// Whether queries are bucketed separately and averaged, or all points are
/// pooled and bucketed once.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Aggregation {
    #[default]
    PerQuery,
    Pooled,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvalConfig {
    pub cutoff: usize,
    pub interpolation: Interpolation,
    pub aggregation: Aggregation,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            cutoff: DEFAULT_CUTOFF,
            interpolation: Interpolation::BucketMean,
            aggregation: Aggregation::PerQuery,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvalSummary {
    pub levels: ElevenLevels,
    pub map: f64,
    pub map_at_30: f64,
}

impl EvalSummary {
    pub fn from_levels(levels: ElevenLevels) -> Self {
        EvalSummary { levels, map: map11(&levels), map_at_30: map_at_30(&levels) }
    }
}

/// Level precisions plus the levels that received no point.
#[derive(Debug, Clone, PartialEq)]
pub struct Bucketed {
    pub levels: ElevenLevels,
    pub empty: Vec<usize>,
}

/// Precision and recall at each rank 1..=min(cutoff, |ranked|).
pub fn pr_curve(ranked: &RankedList, relevant: &BTreeSet<DocId>, cutoff: usize) -> Result<Vec<PrPoint>> {
    if relevant.is_empty() {
        return Err(Error::EmptyRelevantSet(ranked.query_id));
    }
    let total = relevant.len() as f64;
    let mut hits = 0usize;
    Ok(ranked
        .doc_ids()
        .take(cutoff)
        .enumerate()
        .map(|(i, doc)| {
            if relevant.contains(&doc) {
                hits += 1;
            }
            let rank = i + 1;
            PrPoint { rank, recall: hits as f64 / total, precision: hits as f64 / rank as f64 }
        })
        .collect())
}

/// Level index for a recall value: [0, 0.05) -> 0, [L-0.05, L+0.05) -> L,
/// [0.95, 1.0] -> 10. Recall is quantized to 1e-9 first so that values such
/// as 7/20 land on the boundary they mean rather than one ulp below it.
pub fn level_of(recall: f64) -> usize {
    let nanos = (recall.clamp(0.0, 1.0) * 1e9).round() as u64;
    (((nanos * 10 + 500_000_000) / 1_000_000_000) as usize).min(LEVELS - 1)
}

pub fn bucket_to_levels(points: &[PrPoint]) -> Bucketed {
    let mut sums = [0.0; LEVELS];
    let mut counts = [0usize; LEVELS];
    for p in points {
        let level = level_of(p.recall);
        sums[level] += p.precision;
        counts[level] += 1;
    }
    let mut levels = [0.0; LEVELS];
    let mut empty = Vec::new();
    for i in 0..LEVELS {
        if counts[i] == 0 {
            empty.push(i);
        } else {
            levels[i] = sums[i] / counts[i] as f64;
        }
    }
    Bucketed { levels: ElevenLevels(levels), empty }
}

/// Conventional interpolation: max precision over points with recall >= level.
pub fn interpolate_standard(points: &[PrPoint]) -> Bucketed {
    let mut levels = [0.0; LEVELS];
    let mut empty = Vec::new();
    for (i, slot) in levels.iter_mut().enumerate() {
        let best = points
            .iter()
            .filter(|p| level_at_or_above(p.recall, i))
            .map(|p| p.precision)
            .fold(None, |acc: Option<f64>, p| Some(acc.map_or(p, |a| a.max(p))));
        match best {
            Some(v) => *slot = v,
            None => empty.push(i),
        }
    }
    Bucketed { levels: ElevenLevels(levels), empty }
}

fn level_at_or_above(recall: f64, level: usize) -> bool {
    (recall * 1e9).round() as u64 >= level as u64 * 100_000_000
}

pub fn average_over_queries(per_query: &[ElevenLevels]) -> Result<ElevenLevels> {
    if per_query.is_empty() {
        return Err(Error::NoQueries);
    }
    let mut out = [0.0; LEVELS];
    for levels in per_query {
        for (acc, v) in out.iter_mut().zip(levels.values()) {
            *acc += v;
        }
    }
    let n = per_query.len() as f64;
    out.iter_mut().for_each(|v| *v /= n);
    Ok(ElevenLevels(out))
}

/// Mean of all eleven level precisions.
pub fn map11(levels: &ElevenLevels) -> f64 {
    levels.values().iter().sum::<f64>() / LEVELS as f64
}

/// Mean of the level precisions at recall 0.0, 0.1, 0.2 and 0.3.
pub fn map_at_30(levels: &ElevenLevels) -> f64 {
    levels.values()[..4].iter().sum::<f64>() / 4.0
}

#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub summary: EvalSummary,
    /// Per-query level precisions in query id order (empty when pooled).
    pub per_query: Vec<(QueryId, ElevenLevels)>,
    /// (query, level) pairs whose bucket received no point. Pooled runs
    /// report query id 0.
    pub empty_buckets: Vec<(QueryId, usize)>,
}

/// Evaluate ranked lists against judgments. Every judged query is scored;
/// a judged query without a ranked list counts as retrieving nothing.
/// Ranked lists for unjudged queries are ignored.
pub fn evaluate(runs: &[RankedList], qrels: &Qrels, config: &EvalConfig) -> Result<Evaluation> {
    if qrels.is_empty() {
        return Err(Error::NoQueries);
    }
    let empty_list = |q| RankedList { query_id: q, entries: Vec::new() };
    let interpolate = |points: &[PrPoint]| match config.interpolation {
        Interpolation::BucketMean => bucket_to_levels(points),
        Interpolation::Standard => interpolate_standard(points),
    };

    let mut curves = Vec::with_capacity(qrels.len());
    for (query, relevant) in qrels.iter() {
        let points = match runs.iter().find(|r| r.query_id == query) {
            Some(list) => pr_curve(list, relevant, config.cutoff)?,
            None => pr_curve(&empty_list(query), relevant, config.cutoff)?,
        };
        curves.push((query, points));
    }

    match config.aggregation {
        Aggregation::PerQuery => {
            let mut per_query = Vec::with_capacity(curves.len());
            let mut empty_buckets = Vec::new();
            for (query, points) in &curves {
                let bucketed = interpolate(points);
                empty_buckets.extend(bucketed.empty.iter().map(|&l| (*query, l)));
                per_query.push((*query, bucketed.levels));
            }
            let levels: Vec<ElevenLevels> = per_query.iter().map(|(_, l)| *l).collect();
            let summary = EvalSummary::from_levels(average_over_queries(&levels)?);
            Ok(Evaluation { summary, per_query, empty_buckets })
        }
        Aggregation::Pooled => {
            let pooled: Vec<PrPoint> = curves.into_iter().flat_map(|(_, p)| p).collect();
            let bucketed = interpolate(&pooled);
            Ok(Evaluation {
                summary: EvalSummary::from_levels(bucketed.levels),
                per_query: Vec::new(),
                empty_buckets: bucketed.empty.iter().map(|&l| (0, l)).collect(),
            })
        }
    }
}

pub fn csv_header() -> String {
    let mut cols = vec!["base".to_string()];
    cols.extend((0..LEVELS).map(|i| format!("level_{}", ElevenLevels::level_label(i))));
    cols.push("map".into());
    cols.push("map_at_30".into());
    cols.join(",")
}

pub fn csv_row(base_label: &str, summary: &EvalSummary) -> String {
    let mut cols = vec![base_label.to_string()];
    cols.extend(summary.levels.values().iter().map(|v| v.to_string()));
    cols.push(summary.map.to_string());
    cols.push(summary.map_at_30.to_string());
    cols.join(",")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::retrieval::RankedEntry;

    fn ranked(docs: &[u32]) -> RankedList {
        RankedList { query_id: 1, entries: docs.iter().map(|&doc_id| RankedEntry { doc_id, score: 0.0 }).collect() }
    }

    fn point(recall: f64, precision: f64) -> PrPoint {
        PrPoint { rank: 1, recall, precision }
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn curve_example() {
        let relevant: BTreeSet<u32> = [1, 3, 10, 11, 12, 13].into_iter().collect();
        let pts = pr_curve(&ranked(&[1, 2, 3]), &relevant, 1000).unwrap();
        let expected = [(1, 1.0 / 6.0, 1.0), (2, 1.0 / 6.0, 0.5), (3, 2.0 / 6.0, 2.0 / 3.0)];
        assert_eq!(pts.len(), 3);
        for (p, (r, rec, prec)) in pts.iter().zip(expected) {
            assert_eq!(p.rank, r);
            assert!(close(p.recall, rec) && close(p.precision, prec));
        }
    }

    #[test]
    fn curve_edge_cases() {
        let relevant: BTreeSet<u32> = [1, 2, 3, 4].into_iter().collect();
        let all = pr_curve(&ranked(&[1, 2, 3]), &relevant, 1000).unwrap();
        assert!(all.iter().all(|p| p.precision == 1.0));
        let none = pr_curve(&ranked(&[7, 8, 9]), &relevant, 2).unwrap();
        assert_eq!(none.len(), 2);
        assert!(none.iter().all(|p| p.precision == 0.0 && p.recall == 0.0));
        assert!(matches!(pr_curve(&ranked(&[1]), &BTreeSet::new(), 10), Err(Error::EmptyRelevantSet(1))));
    }

    #[test]
    fn bucket_examples() {
        let b = bucket_to_levels(&[point(0.02, 1.0), point(0.04, 0.8)]);
        assert!(close(b.levels.0[0], 0.9));
        assert!(b.levels.0[1..].iter().all(|&v| v == 0.0));
        assert_eq!(b.empty, (1..11).collect::<Vec<_>>());

        let b = bucket_to_levels(&[point(0.5, 0.42)]);
        assert!(close(b.levels.0[5], 0.42));
    }

    #[test]
    fn boundaries() {
        assert_eq!(level_of(0.0), 0);
        assert_eq!(level_of(0.0499), 0);
        assert_eq!(level_of(0.05), 1);
        assert_eq!(level_of(0.15), 2);
        assert_eq!(level_of(7.0 / 20.0), 4);
        assert_eq!(level_of(0.9499), 9);
        assert_eq!(level_of(0.95), 10);
        assert_eq!(level_of(1.0), 10);
    }

    #[test]
    fn standard_interpolation() {
        let pts = [point(0.2, 0.5), point(0.4, 0.8), point(0.6, 0.3)];
        let b = interpolate_standard(&pts);
        assert_eq!(b.levels.0[0], 0.8);
        assert_eq!(b.levels.0[4], 0.8);
        assert_eq!(b.levels.0[5], 0.3);
        assert_eq!(b.levels.0[6], 0.3);
        assert_eq!(b.levels.0[7], 0.0);
        assert_eq!(b.empty, vec![7, 8, 9, 10]);
    }

    #[test]
    fn averaging() {
        let one = ElevenLevels([0.3; LEVELS]);
        assert_eq!(average_over_queries(&[one]).unwrap(), one);
        let mut a = [0.0; LEVELS];
        a[0] = 1.0;
        let avg = average_over_queries(&[ElevenLevels(a), ElevenLevels([0.0; LEVELS])]).unwrap();
        assert_eq!(avg.0[0], 0.5);
        assert!(matches!(average_over_queries(&[]), Err(Error::NoQueries)));
    }

    #[test]
    fn summary_means() {
        assert_eq!(map11(&ElevenLevels([1.0; LEVELS])), 1.0);
        assert_eq!(map11(&ElevenLevels([0.0; LEVELS])), 0.0);
        assert!(close(map_at_30(&ElevenLevels([0.37; LEVELS])), 0.37));
        let mut l = [0.0; LEVELS];
        l[..3].copy_from_slice(&[1.0, 1.0, 1.0]);
        assert_eq!(map_at_30(&ElevenLevels(l)), 0.75);
    }

    #[test]
    fn evaluate_missing_run_counts_as_empty() {
        let qrels = Qrels::from_pairs([(1, 5), (2, 6)]);
        let runs = vec![ranked(&[5])];
        let eval = evaluate(&runs, &qrels, &EvalConfig::default()).unwrap();
        assert_eq!(eval.per_query.len(), 2);
        assert_eq!(eval.per_query[1].1, ElevenLevels([0.0; LEVELS]));
        assert!(eval.empty_buckets.iter().filter(|(q, _)| *q == 2).count() == LEVELS);
        // query 1: single point at recall 1.0, precision 1.0
        assert_eq!(eval.per_query[0].1 .0[10], 1.0);
        assert_eq!(eval.summary.levels.0[10], 0.5);
    }

    #[test]
    fn pooled_aggregation() {
        let qrels = Qrels::from_pairs([(1, 5), (2, 6)]);
        let runs = vec![ranked(&[5]), RankedList { query_id: 2, entries: vec![RankedEntry { doc_id: 9, score: 0.0 }] }];
        let config = EvalConfig { aggregation: Aggregation::Pooled, ..EvalConfig::default() };
        let eval = evaluate(&runs, &qrels, &config).unwrap();
        assert_eq!(eval.summary.levels.0[0], 0.0);
        assert_eq!(eval.summary.levels.0[10], 1.0);
        assert!(eval.per_query.is_empty());
    }

    #[test]
    fn csv_shape() {
        assert_eq!(
            csv_header(),
            "base,level_0.0,level_0.1,level_0.2,level_0.3,level_0.4,level_0.5,level_0.6,level_0.7,level_0.8,level_0.9,level_1.0,map,map_at_30"
        );
        let row = csv_row("10.0", &EvalSummary::from_levels(ElevenLevels([0.5; LEVELS])));
        assert_eq!(row.split(',').count(), 14);
        assert!(row.starts_with("10.0,0.5,"));
    }
}

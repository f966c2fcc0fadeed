//! Evaluate every logarithm base on a grid for one collection.

mod cache;
mod grid;
mod report;

use std::collections::BTreeMap;
use std::path::Path;

use rayon::prelude::*;

use crate::collection_io::{Qrels, RawQuery};
use crate::error::{Error, Result};
use crate::evaluation::{csv_header, csv_row, evaluate, EvalConfig, EvalSummary, LEVELS};
use crate::index::InvertedIndex;
use crate::retrieval::{RankedList, Scorer};
use crate::textpipe::{pipeline, Stoplist};
use crate::weighting::WeightScheme;
use crate::QueryId;

pub use cache::{digest, SweepCache};
pub use grid::{BaseGrid, GridBase};
pub use report::{best_standard_worst, top_k_report, Metric, ReportRow, ReportTable};

/// A query after the text pipeline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreparedQuery {
    pub id: QueryId,
    pub tokens: Vec<String>,
}

pub fn prepare_queries(queries: &[RawQuery], stoplist: &Stoplist) -> Vec<PreparedQuery> {
    queries.iter().map(|q| PreparedQuery { id: q.id, tokens: pipeline(&q.text, stoplist) }).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub collection_name: String,
    pub per_base: BTreeMap<GridBase, EvalSummary>,
    pub skipped: Vec<(GridBase, String)>,
}

pub struct SweepOptions<'a> {
    pub eval: EvalConfig,
    /// Worker threads; 0 lets the pool decide.
    pub jobs: usize,
    pub cache: Option<&'a SweepCache>,
}

impl Default for SweepOptions<'_> {
    fn default() -> Self {
        SweepOptions { eval: EvalConfig::default(), jobs: 1, cache: None }
    }
}

/// Every judged query must exist in the query set.
pub fn check_consistency(queries: &[PreparedQuery], qrels: &Qrels) -> Result<()> {
    let missing: Vec<QueryId> = qrels.query_ids().filter(|q| !queries.iter().any(|p| p.id == *q)).collect();
    if missing.is_empty() {
        Ok(())
    } else {
        Err(Error::QrelsMismatch(missing))
    }
}

/// Rank the judged queries under one base.
pub fn rank_judged(
    index: &InvertedIndex,
    queries: &[PreparedQuery],
    qrels: &Qrels,
    scheme: &WeightScheme,
) -> Vec<RankedList> {
    let scorer = Scorer::new(index, scheme);
    queries.iter().filter(|q| qrels.relevant(q.id).is_some()).map(|q| scorer.rank_tokens(q.id, &q.tokens)).collect()
}

pub fn evaluate_base(
    index: &InvertedIndex,
    queries: &[PreparedQuery],
    qrels: &Qrels,
    scheme: &WeightScheme,
    config: &EvalConfig,
) -> Result<EvalSummary> {
    Ok(evaluate(&rank_judged(index, queries, qrels, scheme), qrels, config)?.summary)
}

pub fn run_sweep(
    name: &str,
    index: &InvertedIndex,
    queries: &[PreparedQuery],
    qrels: &Qrels,
    grid: &BaseGrid,
    options: &SweepOptions<'_>,
) -> Result<SweepResult> {
    check_consistency(queries, qrels)?;
    let (excluded, bases): (Vec<GridBase>, Vec<GridBase>) = grid.values().into_iter().partition(GridBase::is_one);

    let work = || -> Result<Vec<(GridBase, EvalSummary)>> {
        bases
            .par_iter()
            .map(|base| {
                if let Some(hit) = options.cache.and_then(|c| c.get(base)) {
                    return Ok((*base, *hit));
                }
                let scheme = WeightScheme::new(base.value())?;
                let summary = evaluate_base(index, queries, qrels, &scheme, &options.eval)?;
                if let Some(cache) = options.cache {
                    cache.record(base, &summary)?;
                }
                Ok((*base, summary))
            })
            .collect()
    };
    let pool = rayon::ThreadPoolBuilder::new().num_threads(options.jobs).build().expect("thread pool");
    let per_base = pool.install(work)?.into_iter().collect();

    Ok(SweepResult {
        collection_name: name.to_string(),
        per_base,
        skipped: excluded.into_iter().map(|b| (b, "invalid-base".to_string())).collect(),
    })
}

/// Digest over everything a per-base result depends on.
pub fn collection_digest(
    index: &InvertedIndex,
    queries: &[PreparedQuery],
    qrels: &Qrels,
    config: &EvalConfig,
) -> String {
    let queries: String = queries.iter().map(|q| format!("{}\t{}\n", q.id, q.tokens.join(" "))).collect();
    let config = format!("{config:?}");
    digest(&[index.to_snapshot().as_bytes(), queries.as_bytes(), qrels.to_tsv().as_bytes(), config.as_bytes()])
}

impl SweepResult {
    /// Header plus one row per evaluated base, ascending.
    pub fn to_csv(&self) -> String {
        let mut out = csv_header();
        out.push('\n');
        for (base, summary) in &self.per_base {
            out.push_str(&csv_row(&base.to_string(), summary));
            out.push('\n');
        }
        out
    }
}

pub fn emit_csv(result: &SweepResult, path: &Path) -> Result<()> {
    std::fs::write(path, result.to_csv()).map_err(|e| Error::io(path, e))
}

/// Write the CSV, the report tables and the plot data into `dir`.
pub fn write_outputs(result: &SweepResult, dir: &Path, top_k: usize) -> Result<Vec<std::path::PathBuf>> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut written = Vec::new();
    let mut put = |name: String, content: String| -> Result<()> {
        let path = dir.join(name);
        std::fs::write(&path, content).map_err(|e| Error::io(&path, e))?;
        written.push(path);
        Ok(())
    };

    put("sweep.csv".into(), result.to_csv())?;
    let skipped: String = result.skipped.iter().map(|(b, why)| format!("{b}\t{why}\n")).collect();
    put("skipped.tsv".into(), skipped)?;
    if result.per_base.is_empty() {
        return Ok(written);
    }

    for metric in [Metric::Map, Metric::MapAt30] {
        let top = top_k_report(result, metric, top_k);
        put(format!("top{}_{}.txt", top_k, metric.slug()), top.render_text())?;
        put(format!("top{}_{}.csv", top_k, metric.slug()), top.to_csv())?;

        let by_base: String = std::iter::once(format!("base,{}\n", metric.slug()))
            .chain(result.per_base.iter().map(|(b, s)| format!("{b},{}\n", metric.of(s))))
            .collect();
        put(format!("plot_{}_by_base.csv", metric.slug()), by_base)?;

        match best_standard_worst(result, metric) {
            Ok(table) => {
                put(format!("best_standard_worst_{}.txt", metric.slug()), table.render_text())?;
                let mut curves = String::from("base");
                for i in 0..LEVELS {
                    curves.push_str(&format!(",{}", crate::evaluation::ElevenLevels::level_label(i)));
                }
                curves.push('\n');
                for row in &table.rows {
                    curves.push_str(&row.base.to_string());
                    for v in row.summary.levels.values() {
                        curves.push_str(&format!(",{v}"));
                    }
                    curves.push('\n');
                }
                put(format!("plot_levels_best_standard_worst_{}.csv", metric.slug()), curves)?;
            }
            Err(Error::MissingStandardBase) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(written)
}

//! Ranked comparison tables over a sweep: top-k bases per metric and the
//! best / base-10 / worst comparison, as plain text or CSV.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::evaluation::{ElevenLevels, EvalSummary, LEVELS};

use super::{GridBase, SweepResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    Map,
    MapAt30,
}

impl Metric {
    pub fn of(&self, summary: &EvalSummary) -> f64 {
        match self {
            Metric::Map => summary.map,
            Metric::MapAt30 => summary.map_at_30,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Metric::Map => "MAP",
            Metric::MapAt30 => "MAP@30",
        }
    }

    pub fn slug(&self) -> &'static str {
        match self {
            Metric::Map => "map",
            Metric::MapAt30 => "map_at_30",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub base: GridBase,
    pub summary: EvalSummary,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportTable {
    pub title: String,
    pub metric: Metric,
    pub rows: Vec<ReportRow>,
}

/// Descending by metric, ties by smaller base.
fn ranked_rows(result: &SweepResult, metric: Metric) -> Vec<ReportRow> {
    let mut rows: Vec<ReportRow> =
        result.per_base.iter().map(|(base, summary)| ReportRow { base: *base, summary: *summary }).collect();
    rows.sort_by(|a, b| metric.of(&b.summary).total_cmp(&metric.of(&a.summary)).then(a.base.cmp(&b.base)));
    rows
}

pub fn top_k_report(result: &SweepResult, metric: Metric, k: usize) -> ReportTable {
    let mut rows = ranked_rows(result, metric);
    rows.truncate(k.max(1));
    ReportTable {
        title: format!("{} with top {} log values for {}", result.collection_name, k.max(1), metric.label()),
        metric,
        rows,
    }
}

/// Rows: best base, base 10, worst base. Ties resolve to the smaller base
/// on both ends.
pub fn best_standard_worst(result: &SweepResult, metric: Metric) -> Result<ReportTable> {
    let standard = result
        .per_base
        .iter()
        .find(|(base, _)| base.value() == 10.0)
        .map(|(base, summary)| ReportRow { base: *base, summary: *summary })
        .ok_or(Error::MissingStandardBase)?;
    let rows = ranked_rows(result, metric);
    let best = rows[0].clone();
    let worst_value = metric.of(&rows[rows.len() - 1].summary);
    let worst =
        rows.iter().find(|r| metric.of(&r.summary) == worst_value).cloned().expect("worst value comes from rows");
    Ok(ReportTable {
        title: format!("{} compare the best, standard and worst for {}", result.collection_name, metric.label()),
        metric,
        rows: vec![best, standard, worst],
    })
}

impl ReportTable {
    /// Aligned text: `LOG`, eleven recall-level columns, then the metric.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{}", self.title).unwrap();
        write!(out, "{:>8}", "LOG").unwrap();
        for i in 0..LEVELS {
            write!(out, " {:>7}", ElevenLevels::level_label(i)).unwrap();
        }
        writeln!(out, " {:>9}", self.metric.label()).unwrap();
        for row in &self.rows {
            write!(out, "{:>8}", row.base.to_string()).unwrap();
            for v in row.summary.levels.values() {
                write!(out, " {:>7.4}", v).unwrap();
            }
            writeln!(out, " {:>9.6}", self.metric.of(&row.summary)).unwrap();
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("log");
        for i in 0..LEVELS {
            write!(out, ",{}", ElevenLevels::level_label(i)).unwrap();
        }
        writeln!(out, ",{}", self.metric.slug()).unwrap();
        for row in &self.rows {
            write!(out, "{}", row.base).unwrap();
            for v in row.summary.levels.values() {
                write!(out, ",{v}").unwrap();
            }
            writeln!(out, ",{}", self.metric.of(&row.summary)).unwrap();
        }
        out
    }
}

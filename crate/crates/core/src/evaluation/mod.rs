//! Measurement machinery: confusion counts, per-SDG precision/recall/F1
//! with micro/macro aggregation, the precision/recall acceptance gate,
//! two-annotator precision estimation, journal-set recall estimation,
//! multi-method benchmarking and mapping comparison.

mod benchmark;
mod compare;
mod dataset;
mod gate;
mod metrics;

use thiserror::Error;

use crate::Sdg;

pub use benchmark::{benchmark, BenchmarkCell, BenchmarkMatrix};
pub use compare::{
    compare_mappings, render_comparison_text, write_comparison_csv, ComparisonRow,
};
pub use dataset::{ValidationDataset, ValidationItem};
pub use gate::{
    estimate_precision, estimate_recall, gate, GateConfig, GateDecision, GateViolation, Verdict,
};
pub use metrics::{confusion, f1_report, percent_cell, ClassMetrics, ConfusionCounts, MetricsReport};

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("cannot access {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{dataset}:{line}: malformed dataset line: {message}")]
    MalformedLine {
        dataset: String,
        line: usize,
        message: String,
    },
    #[error("dataset {dataset}: item {id} has an empty gold set")]
    EmptyGold { dataset: String, id: String },
    #[error("dataset {dataset}: duplicate item id {id}")]
    DuplicateItem { dataset: String, id: String },
    #[error("no annotations to estimate precision from")]
    EmptyAnnotations,
    #[error("recall set {dataset} is empty")]
    EmptyRecallSet { dataset: String },
    #[error("recall set {dataset}: item {id} does not carry SDG {sdg} in its gold labels")]
    GoldMissingTarget {
        dataset: String,
        id: String,
        sdg: Sdg,
    },
}

//! Mapping engine that assigns UN Sustainable Development Goal labels to
//! publication records.
//!
//! The pipeline is two-staged: a bank of Boolean/proximity queries over
//! titles, abstracts and author keywords produces the authoritative mapping,
//! and a TF-IDF logistic-regression classifier trained on those query hits
//! adds high-confidence predictions on top. The crate also carries the
//! measurement machinery needed to audit such mappings: precision/recall
//! gating, micro/macro F1 benchmarking against validation datasets, mapping
//! comparison, and query-development aids (term suggestion, citation
//! expansion, review sampling, journal concentration).
//!
//! Numeric code is generic over the scalar type via [`Scalar`]; the aliases
//! at the crate root pin `f64`, which is what the CLI and the on-disk
//! artifact formats use.

pub mod asjc;
pub mod classifier;
pub mod combiner;
pub mod corpus;
pub mod engine;
pub mod evaluation;
pub mod query;
pub mod querydev;
mod scalar;
mod sdg;

pub use scalar::Scalar;
pub use sdg::{Sdg, SdgRangeError};

/// Scalar type used by the CLI and the on-disk artifact formats.
pub type DefaultScalar = f64;

/// TF-IDF model over the default scalar.
pub type Tfidf = classifier::TfidfModel<DefaultScalar>;
/// Per-SDG logistic-regression ensemble over the default scalar.
pub type LogReg = classifier::LogRegModel<DefaultScalar>;
/// Serializable model artifact over the default scalar.
pub type Artifact = classifier::ModelArtifact<DefaultScalar>;
/// Per-record per-SDG probability table over the default scalar.
pub type Scores = classifier::ScoreTable<DefaultScalar>;
/// Metrics report over the default scalar.
pub type Metrics = evaluation::MetricsReport<DefaultScalar>;

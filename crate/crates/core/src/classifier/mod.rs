//! TF-IDF featurization and one-vs-rest logistic regression trained by
//! weak supervision from query-bank output.

mod artifact;
mod labels;
mod logreg;
mod scores;
mod tfidf;

use rayon::prelude::*;
use serde::de::DeserializeOwned;
use serde::Serialize;
use thiserror::Error;

use crate::corpus::Corpus;
use crate::engine::SdgMapping;
use crate::{Scalar, Sdg};

pub use artifact::{ArtifactError, ModelArtifact, FORMAT_VERSION};
pub(crate) use labels::sample_without_replacement;
pub use labels::{build_training_set, SdgTrainingSet, TrainingSets};
pub use logreg::{
    logistic_loss, loss_gradient, predict, sigmoid, train_binary, Hyperparams, LogRegModel,
    SdgWeights,
};
pub use scores::{score_corpus, ScoreError, ScoreTable};
pub use tfidf::{document_tokens, fit_tfidf, SparseVector, TfidfConfig, TfidfModel};

#[derive(Debug, Error)]
pub enum TrainError {
    #[error("corpus is empty")]
    EmptyCorpus,
    #[error("vocabulary is empty after applying min_df / max_vocab")]
    EmptyVocabulary,
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("training labels need at least one positive and one negative")]
    DegenerateLabels,
    #[error("non-finite loss at iteration {iteration}")]
    NonFiniteLoss { iteration: u32 },
}

/// Full pipeline configuration for [`train_all`].
#[derive(Debug, Clone, PartialEq)]
pub struct ClassifierConfig<S> {
    pub tfidf: TfidfConfig,
    pub iterations: u32,
    pub learning_rate: S,
    pub l2: S,
    pub negatives_ratio: u32,
    /// Decision threshold stored with the model; the combination stage
    /// keeps predictions at or above it.
    pub threshold: S,
}

impl<S: Scalar> Default for ClassifierConfig<S> {
    fn default() -> Self {
        ClassifierConfig {
            tfidf: TfidfConfig::default(),
            iterations: 500,
            learning_rate: S::of_f64(0.5),
            l2: S::of_f64(1e-4),
            negatives_ratio: 10,
            threshold: S::of_f64(0.95),
        }
    }
}

/// Result of [`train_all`]: the artifact plus SDGs skipped for lack of
/// query positives.
#[derive(Debug, Clone)]
pub struct TrainOutcome<S> {
    pub artifact: ModelArtifact<S>,
    pub skipped: Vec<Sdg>,
}

/// Fit TF-IDF on the whole corpus and train one binary model per SDG with
/// query positives. Training of distinct SDGs runs in parallel; the result
/// is deterministic for fixed corpus, mapping, config and seed.
pub fn train_all<S: Scalar + Serialize + DeserializeOwned>(
    corpus: &Corpus,
    mapping: &SdgMapping,
    config: &ClassifierConfig<S>,
    seed: u64,
) -> Result<TrainOutcome<S>, TrainError> {
    if config.learning_rate <= S::zero() {
        return Err(TrainError::InvalidConfig(
            "learning rate must be positive".to_string(),
        ));
    }
    if config.l2 < S::zero() {
        return Err(TrainError::InvalidConfig(
            "l2 strength must be nonnegative".to_string(),
        ));
    }
    if config.threshold <= S::zero() || config.threshold > S::one() {
        return Err(TrainError::InvalidConfig(
            "threshold must lie in (0, 1]".to_string(),
        ));
    }

    let tfidf = fit_tfidf::<S>(corpus, config.tfidf.clone())?;
    let vectors: Vec<SparseVector<S>> = corpus.iter().map(|r| tfidf.vectorize(r)).collect();
    let training = build_training_set(mapping, corpus, config.negatives_ratio, seed)?;

    let trained: Vec<(Sdg, SdgWeights<S>)> = training
        .sets
        .par_iter()
        .map(|set| {
            let features: Vec<&SparseVector<S>> = set
                .positives
                .iter()
                .chain(&set.negatives)
                .map(|&doc| &vectors[doc as usize])
                .collect();
            let mut labels = vec![true; set.positives.len()];
            labels.extend(std::iter::repeat_n(false, set.negatives.len()));
            train_binary(
                &features,
                &labels,
                tfidf.vocab_len(),
                config.iterations,
                config.learning_rate,
                config.l2,
            )
            .map(|weights| (set.sdg, weights))
        })
        .collect::<Result<_, _>>()?;

    let model = LogRegModel {
        models: trained.into_iter().collect(),
        hyper: Hyperparams {
            iterations: config.iterations,
            learning_rate: config.learning_rate,
            l2: config.l2,
            negatives_ratio: config.negatives_ratio,
            seed,
        },
        threshold: config.threshold,
    };
    Ok(TrainOutcome {
        artifact: ModelArtifact::new(tfidf, model),
        skipped: training.skipped,
    })
}

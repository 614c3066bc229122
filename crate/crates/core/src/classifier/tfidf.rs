//! TF-IDF featurization over a shared vocabulary.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::asjc;
use crate::corpus::{normalize, Corpus, PublicationRecord};
use crate::Scalar;

use super::TrainError;

/// Vocabulary construction settings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TfidfConfig {
    /// Keep terms occurring in at least this many documents.
    pub min_df: u32,
    /// Cap the vocabulary at this size, keeping the highest-df terms
    /// (ties broken lexicographically).
    pub max_vocab: usize,
    /// Include pre-extracted full-text terms when a record carries them.
    pub use_fulltext_terms: bool,
    /// Include synthetic `asjc_<code>` tokens plus the code's top-level
    /// area name.
    pub use_subject_areas: bool,
}

impl Default for TfidfConfig {
    fn default() -> Self {
        TfidfConfig {
            min_df: 2,
            max_vocab: 50_000,
            use_fulltext_terms: true,
            use_subject_areas: true,
        }
    }
}

/// Fitted vocabulary with inverse-document-frequency weights.
///
/// `idf(t) = ln((1 + N) / (1 + df(t))) + 1`, so every retained term has
/// `idf >= 1`, with equality exactly when the term occurs in all documents.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TfidfModel<S> {
    vocabulary: BTreeMap<String, u32>,
    idf: Vec<S>,
    config: TfidfConfig,
    trained_docs: u64,
}

/// Sparse document vector over the vocabulary; L2-normalized unless empty.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SparseVector<S> {
    pub indices: Vec<u32>,
    pub values: Vec<S>,
}

impl<S: Scalar> SparseVector<S> {
    pub fn zero() -> Self {
        SparseVector {
            indices: Vec::new(),
            values: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.indices.len()
    }

    pub fn l2_norm(&self) -> S {
        self.values
            .iter()
            .map(|&v| v * v)
            .fold(S::zero(), |a, b| a + b)
            .sqrt()
    }

    pub fn dot_dense(&self, dense: &[S]) -> S {
        self.indices
            .iter()
            .zip(&self.values)
            .map(|(&i, &v)| dense[i as usize] * v)
            .fold(S::zero(), |a, b| a + b)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, S)> + '_ {
        self.indices.iter().copied().zip(self.values.iter().copied())
    }
}

/// The bag of tokens the classifier sees for one record: title, abstract
/// and author keywords, plus full-text terms and subject-area tokens when
/// configured and present.
pub fn document_tokens(record: &PublicationRecord, config: &TfidfConfig) -> Vec<String> {
    let mut tokens = normalize(&record.title);
    tokens.extend(normalize(&record.abstract_text));
    for entry in &record.author_keywords {
        tokens.extend(normalize(entry));
    }
    if config.use_fulltext_terms {
        if let Some(terms) = &record.fulltext_terms {
            for term in terms {
                tokens.extend(normalize(term));
            }
        }
    }
    if config.use_subject_areas {
        for &code in &record.asjc_codes {
            tokens.push(format!("asjc_{code}"));
            if let Some(name) = asjc::area_of_code(code) {
                tokens.extend(normalize(name));
            }
        }
    }
    tokens
}

/// Fit a vocabulary and idf weights on a corpus.
pub fn fit_tfidf<S: Scalar>(corpus: &Corpus, config: TfidfConfig) -> Result<TfidfModel<S>, TrainError> {
    if corpus.is_empty() {
        return Err(TrainError::EmptyCorpus);
    }
    let mut df: BTreeMap<String, u32> = BTreeMap::new();
    for record in corpus.iter() {
        let distinct: BTreeSet<String> = document_tokens(record, &config).into_iter().collect();
        for term in distinct {
            *df.entry(term).or_default() += 1;
        }
    }
    let mut retained: Vec<(String, u32)> = df
        .into_iter()
        .filter(|(_, d)| *d >= config.min_df.max(1))
        .collect();
    if retained.len() > config.max_vocab {
        retained.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
        retained.truncate(config.max_vocab);
        retained.sort_by(|a, b| a.0.cmp(&b.0));
    }
    if retained.is_empty() {
        return Err(TrainError::EmptyVocabulary);
    }

    let n = S::of_usize(corpus.len());
    let mut vocabulary = BTreeMap::new();
    let mut idf = Vec::with_capacity(retained.len());
    for (i, (term, d)) in retained.into_iter().enumerate() {
        vocabulary.insert(term, i as u32);
        idf.push(((n + S::one()) / (S::of_usize(d as usize) + S::one())).ln() + S::one());
    }
    Ok(TfidfModel {
        vocabulary,
        idf,
        config,
        trained_docs: corpus.len() as u64,
    })
}

impl<S: Scalar> TfidfModel<S> {
    pub fn vocab_len(&self) -> usize {
        self.idf.len()
    }

    pub fn config(&self) -> &TfidfConfig {
        &self.config
    }

    pub fn trained_docs(&self) -> u64 {
        self.trained_docs
    }

    pub fn index_of(&self, term: &str) -> Option<u32> {
        self.vocabulary.get(term).copied()
    }

    pub fn idf_of(&self, term: &str) -> Option<S> {
        self.index_of(term).map(|i| self.idf[i as usize])
    }

    /// Terms in index order (the vocabulary is lexicographic, with indices
    /// forming the dense range `0..len`).
    pub fn terms(&self) -> impl Iterator<Item = (&str, u32)> {
        self.vocabulary.iter().map(|(t, &i)| (t.as_str(), i))
    }

    /// Count-weighted, idf-scaled, L2-normalized vector of one record.
    /// Out-of-vocabulary tokens are ignored.
    pub fn vectorize(&self, record: &PublicationRecord) -> SparseVector<S> {
        let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
        for token in document_tokens(record, &self.config) {
            if let Some(&i) = self.vocabulary.get(&token) {
                *counts.entry(i).or_default() += 1;
            }
        }
        if counts.is_empty() {
            return SparseVector::zero();
        }
        let mut indices = Vec::with_capacity(counts.len());
        let mut values = Vec::with_capacity(counts.len());
        for (i, count) in counts {
            indices.push(i);
            values.push(S::of_usize(count as usize) * self.idf[i as usize]);
        }
        let norm = values
            .iter()
            .map(|&v| v * v)
            .fold(S::zero(), |a, b| a + b)
            .sqrt();
        for v in &mut values {
            *v = *v / norm;
        }
        SparseVector { indices, values }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn doc(id: &str, title: &str) -> PublicationRecord {
        PublicationRecord {
            title: title.to_string(),
            ..PublicationRecord::new(id)
        }
    }

    fn text_only(min_df: u32) -> TfidfConfig {
        TfidfConfig {
            min_df,
            use_fulltext_terms: false,
            use_subject_areas: false,
            ..TfidfConfig::default()
        }
    }

    #[test]
    fn universal_term_has_idf_exactly_one() {
        let corpus = Corpus::from_records(vec![doc("d1", "poverty")]).unwrap();
        let model: TfidfModel<f64> = fit_tfidf(&corpus, text_only(1)).unwrap();
        assert_eq!(model.vocab_len(), 1);
        assert_eq!(model.idf_of("poverty"), Some(1.0));
    }

    #[test]
    fn half_frequency_term_matches_formula() {
        let corpus =
            Corpus::from_records(vec![doc("d1", "poverty"), doc("d2", "hunger")]).unwrap();
        let model: TfidfModel<f64> = fit_tfidf(&corpus, text_only(1)).unwrap();
        let expected = (3.0f64 / 2.0).ln() + 1.0;
        assert_relative_eq!(model.idf_of("poverty").unwrap(), expected, epsilon = 1e-12);
        assert_relative_eq!(model.idf_of("hunger").unwrap(), expected, epsilon = 1e-12);
    }

    #[test]
    fn min_df_can_empty_the_vocabulary() {
        let corpus =
            Corpus::from_records(vec![doc("d1", "alpha"), doc("d2", "beta")]).unwrap();
        let err = fit_tfidf::<f64>(&corpus, text_only(2)).unwrap_err();
        assert!(matches!(err, TrainError::EmptyVocabulary));
    }

    #[test]
    fn empty_corpus_is_an_error() {
        let corpus = Corpus::from_records(vec![]).unwrap();
        assert!(matches!(
            fit_tfidf::<f64>(&corpus, text_only(1)),
            Err(TrainError::EmptyCorpus)
        ));
    }

    #[test]
    fn vocabulary_cap_keeps_high_df_terms_with_lexicographic_ties() {
        let corpus = Corpus::from_records(vec![
            doc("d1", "common zebra apple"),
            doc("d2", "common zebra apple"),
            doc("d3", "common rare"),
        ])
        .unwrap();
        let config = TfidfConfig {
            max_vocab: 2,
            ..text_only(1)
        };
        let model: TfidfModel<f64> = fit_tfidf(&corpus, config).unwrap();
        // df: common=3, apple=2, zebra=2, rare=1; cap 2 keeps common + apple
        assert!(model.index_of("common").is_some());
        assert!(model.index_of("apple").is_some());
        assert!(model.index_of("zebra").is_none());
        // indices are dense and lexicographic
        assert_eq!(model.index_of("apple"), Some(0));
        assert_eq!(model.index_of("common"), Some(1));
    }

    #[test]
    fn vector_of_oov_document_is_zero() {
        let corpus =
            Corpus::from_records(vec![doc("d1", "poverty"), doc("d2", "poverty")]).unwrap();
        let model: TfidfModel<f64> = fit_tfidf(&corpus, text_only(1)).unwrap();
        let v = model.vectorize(&doc("q", "unrelated words"));
        assert!(v.is_zero());
        assert_eq!(v.l2_norm(), 0.0);
    }

    #[test]
    fn single_term_vector_normalizes_to_one() {
        let corpus = Corpus::from_records(vec![doc("d1", "poverty")]).unwrap();
        let model: TfidfModel<f64> = fit_tfidf(&corpus, text_only(1)).unwrap();
        let v = model.vectorize(&doc("q", "poverty poverty"));
        assert_eq!(v.values, vec![1.0]);
    }

    #[test]
    fn equal_count_equal_idf_terms_split_evenly() {
        let corpus = Corpus::from_records(vec![doc("d1", "water energy")]).unwrap();
        let model: TfidfModel<f64> = fit_tfidf(&corpus, text_only(1)).unwrap();
        let v = model.vectorize(&doc("q", "water energy"));
        let inv_sqrt2 = 1.0 / 2.0f64.sqrt();
        assert_eq!(v.values.len(), 2);
        assert_relative_eq!(v.values[0], inv_sqrt2, epsilon = 1e-12);
        assert_relative_eq!(v.values[1], inv_sqrt2, epsilon = 1e-12);
        assert_relative_eq!(v.l2_norm(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn subject_areas_become_synthetic_tokens() {
        let mut r = doc("d1", "trial");
        r.asjc_codes = vec![2713];
        let tokens = document_tokens(&r, &TfidfConfig::default());
        assert!(tokens.contains(&"asjc_2713".to_string()));
        assert!(tokens.contains(&"medicine".to_string()));
        let without = document_tokens(&r, &text_only(1));
        assert!(!without.contains(&"asjc_2713".to_string()));
    }

    #[test]
    fn fulltext_terms_join_the_bag_when_enabled() {
        let mut r = doc("d1", "title");
        r.fulltext_terms = Some(vec!["soil degradation".to_string()]);
        let with = document_tokens(&r, &TfidfConfig::default());
        assert!(with.contains(&"degradation".to_string()));
        assert!(!document_tokens(&r, &text_only(1)).contains(&"degradation".to_string()));
    }
}

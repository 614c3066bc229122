//! Analyst-support tooling for query development: TF-IDF term suggestion
//! from matched sets, one-hop citation expansion for recall auditing,
//! random precision-sample worksheets, and specialized-journal
//! concentration reports.

mod worksheet;

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::classifier::{fit_tfidf, TfidfConfig, TrainError};
use crate::corpus::{normalize_journal, Corpus};
use crate::engine::SdgMapping;
use crate::{Scalar, Sdg};

pub use worksheet::{
    load_filled_worksheet, read_filled_worksheet, sample_for_review, write_worksheet, Worksheet,
    WorksheetRow,
};

#[derive(Debug, Error)]
pub enum DevError {
    #[error("positive set is empty")]
    EmptyPositiveSet,
    #[error("record id {0} is not in the corpus")]
    UnknownId(String),
    #[error("requested count must be at least 1")]
    InvalidCount,
    #[error(transparent)]
    Fit(#[from] TrainError),
    #[error("cannot access {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("worksheet row {row}: {message}")]
    Worksheet { row: usize, message: String },
    #[error("worksheet row {row}: missing verdict for analyst {analyst}")]
    MissingVerdict { row: usize, analyst: u8 },
}

/// Single tokens ranked by mean TF-IDF weight over the positive records.
///
/// The vocabulary is fitted on the whole corpus with the same formula and
/// tokenizer the classifier uses, restricted to the query-matchable text
/// fields and without a df floor, so rare discriminative terms surface and
/// any suggestion can be pasted into a query verbatim. Ties break
/// lexicographically; `k` larger than the vocabulary returns the full
/// ranking.
pub fn suggest_terms<S: Scalar>(
    positive_ids: &BTreeSet<String>,
    corpus: &Corpus,
    k: usize,
) -> Result<Vec<(String, S)>, DevError> {
    if k == 0 {
        return Err(DevError::InvalidCount);
    }
    let positives = resolve_positives(positive_ids, corpus)?;
    let config = TfidfConfig {
        min_df: 1,
        max_vocab: usize::MAX,
        use_fulltext_terms: false,
        use_subject_areas: false,
    };
    let tfidf = fit_tfidf::<S>(corpus, config)?;

    let mut sums = vec![S::zero(); tfidf.vocab_len()];
    for &doc in &positives {
        let vector = tfidf.vectorize(&corpus.records()[doc as usize]);
        for (i, v) in vector.iter() {
            sums[i as usize] = sums[i as usize] + v;
        }
    }
    let count = S::of_usize(positives.len());
    let mut ranking: Vec<(String, S)> = tfidf
        .terms()
        .map(|(term, i)| (term.to_string(), sums[i as usize] / count))
        .collect();
    ranking.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then_with(|| a.0.cmp(&b.0)));
    ranking.truncate(k);
    Ok(ranking)
}

/// Author-keyword entries of the positive records, ranked as candidate
/// phrases by document frequency within the positives (ties
/// lexicographic). Entries are normalized to the query tokenization.
pub fn suggest_keyword_phrases(
    positive_ids: &BTreeSet<String>,
    corpus: &Corpus,
    k: usize,
) -> Result<Vec<(String, u64)>, DevError> {
    if k == 0 {
        return Err(DevError::InvalidCount);
    }
    let positives = resolve_positives(positive_ids, corpus)?;
    let mut df: BTreeMap<String, u64> = BTreeMap::new();
    for &doc in &positives {
        let record = &corpus.records()[doc as usize];
        let distinct: BTreeSet<String> = record
            .author_keywords
            .iter()
            .map(|entry| crate::corpus::normalize(entry).join(" "))
            .filter(|phrase| !phrase.is_empty())
            .collect();
        for phrase in distinct {
            *df.entry(phrase).or_default() += 1;
        }
    }
    let mut ranking: Vec<(String, u64)> = df.into_iter().collect();
    ranking.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    ranking.truncate(k);
    Ok(ranking)
}

fn resolve_positives(
    positive_ids: &BTreeSet<String>,
    corpus: &Corpus,
) -> Result<Vec<u32>, DevError> {
    if positive_ids.is_empty() {
        return Err(DevError::EmptyPositiveSet);
    }
    positive_ids
        .iter()
        .map(|id| {
            corpus
                .doc_index(id)
                .ok_or_else(|| DevError::UnknownId(id.clone()))
        })
        .collect()
}

/// Records one citation hop away from the result set: everything outside
/// it that cites a member or is cited by a member.
pub fn citation_expand(result_ids: &BTreeSet<String>, corpus: &Corpus) -> BTreeSet<String> {
    let mut expanded = BTreeSet::new();
    for record in corpus.iter() {
        if result_ids.contains(&record.id) {
            // members' outgoing citations (records cited by the result set)
            for reference in &record.references {
                if !result_ids.contains(reference) && corpus.contains(reference) {
                    expanded.insert(reference.clone());
                }
            }
        } else if record
            .references
            .iter()
            .any(|reference| result_ids.contains(reference))
        {
            // non-members citing into the result set
            expanded.insert(record.id.clone());
        }
    }
    expanded
}

/// One journal's concentration of mapped records.
#[derive(Debug, Clone, PartialEq)]
pub struct JournalShare<S> {
    /// Normalized journal name.
    pub journal: String,
    pub matched: u64,
    pub total: u64,
    pub share: S,
}

/// Journals ranked by the share of their records mapped to `sdg`
/// (descending, then matched count descending, then name). Journals with
/// no matches are excluded, so every share lies in (0, 1].
pub fn journal_concentration<S: Scalar>(
    mapping: &SdgMapping,
    sdg: Sdg,
    corpus: &Corpus,
) -> Vec<JournalShare<S>> {
    let mut totals: BTreeMap<String, (u64, u64)> = BTreeMap::new();
    for record in corpus.iter() {
        let journal = normalize_journal(&record.journal_name);
        if journal.is_empty() {
            continue;
        }
        let entry = totals.entry(journal).or_default();
        entry.1 += 1;
        if mapping.contains(&record.id, sdg) {
            entry.0 += 1;
        }
    }
    let mut shares: Vec<JournalShare<S>> = totals
        .into_iter()
        .filter(|(_, (matched, _))| *matched > 0)
        .map(|(journal, (matched, total))| JournalShare {
            journal,
            matched,
            total,
            share: S::of_usize(matched as usize) / S::of_usize(total as usize),
        })
        .collect();
    shares.sort_by(|a, b| {
        b.share
            .partial_cmp(&a.share)
            .unwrap()
            .then_with(|| b.matched.cmp(&a.matched))
            .then_with(|| a.journal.cmp(&b.journal))
    });
    shares
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::PublicationRecord;
    use approx::assert_relative_eq;

    fn sdg(n: u8) -> Sdg {
        Sdg::new(n).unwrap()
    }

    fn titled(id: &str, title: &str) -> PublicationRecord {
        PublicationRecord {
            title: title.to_string(),
            ..PublicationRecord::new(id)
        }
    }

    fn four_doc_corpus() -> Corpus {
        Corpus::from_records(vec![
            titled("d1", "study microfinance access"),
            titled("d2", "study microfinance poverty"),
            titled("d3", "study growth"),
            titled("d4", "study policy"),
        ])
        .unwrap()
    }

    #[test]
    fn discriminative_terms_outrank_ubiquitous_ones() {
        let corpus = four_doc_corpus();
        let positives: BTreeSet<String> = ["d1", "d2"].iter().map(|s| s.to_string()).collect();
        let ranking: Vec<(String, f64)> = suggest_terms(&positives, &corpus, 10).unwrap();

        // independent recomputation of the committed formula
        let idf = |df: f64| (5.0 / (1.0 + df)).ln() + 1.0;
        let idf_study = idf(4.0);
        let idf_micro = idf(2.0);
        let idf_rare = idf(1.0);
        let norm = (idf_study * idf_study + idf_micro * idf_micro + idf_rare * idf_rare).sqrt();
        let expected_micro = idf_micro / norm;
        let expected_study = idf_study / norm;
        let expected_rare = idf_rare / norm / 2.0;

        assert_eq!(ranking[0].0, "microfinance");
        assert_relative_eq!(ranking[0].1, expected_micro, epsilon = 1e-12);
        assert_eq!(ranking[1].0, "study");
        assert_relative_eq!(ranking[1].1, expected_study, epsilon = 1e-12);
        // access and poverty tie; lexicographic order breaks it
        assert_eq!(ranking[2].0, "access");
        assert_eq!(ranking[3].0, "poverty");
        assert_relative_eq!(ranking[2].1, expected_rare, epsilon = 1e-12);
        assert_relative_eq!(ranking[3].1, expected_rare, epsilon = 1e-12);

        assert!(ranking.iter().all(|(_, s)| *s >= 0.0));
        assert!(ranking.windows(2).all(|w| w[0].1 >= w[1].1));
    }

    #[test]
    fn whole_corpus_positives_rank_the_shared_term_first() {
        let corpus = four_doc_corpus();
        let positives: BTreeSet<String> = ["d1", "d2", "d3", "d4"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let ranking: Vec<(String, f64)> = suggest_terms(&positives, &corpus, 1).unwrap();
        assert_eq!(ranking[0].0, "study");
    }

    #[test]
    fn oversized_k_returns_the_full_ranking() {
        let corpus = four_doc_corpus();
        let positives: BTreeSet<String> = ["d1"].iter().map(|s| s.to_string()).collect();
        let ranking: Vec<(String, f64)> = suggest_terms(&positives, &corpus, 1000).unwrap();
        assert_eq!(ranking.len(), 6); // access growth microfinance policy poverty study
    }

    #[test]
    fn empty_positive_set_is_rejected() {
        let corpus = four_doc_corpus();
        assert!(matches!(
            suggest_terms::<f64>(&BTreeSet::new(), &corpus, 5),
            Err(DevError::EmptyPositiveSet)
        ));
        let unknown: BTreeSet<String> = ["nope".to_string()].into_iter().collect();
        assert!(matches!(
            suggest_terms::<f64>(&unknown, &corpus, 5),
            Err(DevError::UnknownId(_))
        ));
    }

    #[test]
    fn keyword_phrases_rank_by_positive_df() {
        let mut a = titled("a", "");
        a.author_keywords = vec!["Coastal Management".into(), "aquaculture".into()];
        let mut b = titled("b", "");
        b.author_keywords = vec!["coastal management".into()];
        let c = titled("c", "");
        let corpus = Corpus::from_records(vec![a, b, c]).unwrap();
        let positives: BTreeSet<String> = ["a", "b"].iter().map(|s| s.to_string()).collect();
        let phrases = suggest_keyword_phrases(&positives, &corpus, 10).unwrap();
        assert_eq!(phrases[0], ("coastal management".to_string(), 2));
        assert_eq!(phrases[1], ("aquaculture".to_string(), 1));
    }

    #[test]
    fn expansion_follows_both_edge_directions() {
        let mut a = PublicationRecord::new("A");
        a.references = vec!["C".to_string()];
        let mut b = PublicationRecord::new("B");
        b.references = vec!["A".to_string()];
        let c = PublicationRecord::new("C");
        let corpus = Corpus::from_records(vec![a, b, c]).unwrap();
        let seed: BTreeSet<String> = ["A".to_string()].into_iter().collect();
        let expanded = citation_expand(&seed, &corpus);
        assert_eq!(
            expanded,
            ["B".to_string(), "C".to_string()].into_iter().collect()
        );
    }

    #[test]
    fn expansion_excludes_the_seed_set() {
        let mut a = PublicationRecord::new("A");
        a.references = vec!["B".to_string()];
        let mut b = PublicationRecord::new("B");
        b.references = vec!["A".to_string()];
        let corpus = Corpus::from_records(vec![a, b]).unwrap();
        let all: BTreeSet<String> = ["A".to_string(), "B".to_string()].into_iter().collect();
        assert!(citation_expand(&all, &corpus).is_empty());
    }

    #[test]
    fn dangling_references_are_ignored() {
        let mut a = PublicationRecord::new("A");
        a.references = vec!["ghost".to_string()];
        let corpus = Corpus::from_records(vec![a]).unwrap();
        let seed: BTreeSet<String> = ["A".to_string()].into_iter().collect();
        assert!(citation_expand(&seed, &corpus).is_empty());
    }

    #[test]
    fn journals_rank_by_share_then_count() {
        let mut records = Vec::new();
        for i in 0..4 {
            let mut r = titled(&format!("a{i}"), "");
            r.journal_name = "Journal A".to_string();
            records.push(r);
        }
        for i in 0..10 {
            let mut r = titled(&format!("b{i}"), "");
            r.journal_name = "Journal B".to_string();
            records.push(r);
        }
        let mut unmatched = titled("c0", "");
        unmatched.journal_name = "Journal C".to_string();
        records.push(unmatched);
        let corpus = Corpus::from_records(records).unwrap();

        let mut mapping = SdgMapping::new();
        for i in 0..3 {
            mapping.add_query_hit(&format!("a{i}"), sdg(6), "T");
        }
        for i in 0..5 {
            mapping.add_query_hit(&format!("b{i}"), sdg(6), "T");
        }
        let shares: Vec<JournalShare<f64>> = journal_concentration(&mapping, sdg(6), &corpus);
        assert_eq!(shares.len(), 2);
        assert_eq!(shares[0].journal, "journal a");
        assert_relative_eq!(shares[0].share, 0.75);
        assert_eq!(shares[1].journal, "journal b");
        assert_relative_eq!(shares[1].share, 0.5);
        assert!(shares.iter().all(|s| s.share > 0.0 && s.share <= 1.0));
    }

    #[test]
    fn fully_matched_single_journal_has_share_one() {
        let mut r = titled("x", "");
        r.journal_name = "Only Journal".to_string();
        let corpus = Corpus::from_records(vec![r]).unwrap();
        let mut mapping = SdgMapping::new();
        mapping.add_query_hit("x", sdg(2), "T");
        let shares: Vec<JournalShare<f64>> = journal_concentration(&mapping, sdg(2), &corpus);
        assert_eq!(shares.len(), 1);
        assert_eq!(shares[0].share, 1.0);
    }
}

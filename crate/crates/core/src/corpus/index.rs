//! Positional inverted index over the query-matchable fields.
//!
//! Construction is deterministic: postings are keyed by sorted maps and
//! listed in (doc, field, position) order, so two builds from the same
//! corpus serialize to identical bytes.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::tokenize::{record_streams, Field};
use super::{normalize_journal, Corpus};

/// One token occurrence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Posting {
    pub doc: u32,
    pub field: Field,
    pub pos: u32,
}

/// Positional postings plus subject-code and journal-name doc sets.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvertedIndex {
    doc_ids: Vec<String>,
    postings: BTreeMap<String, Vec<Posting>>,
    subject_postings: BTreeMap<u16, Vec<u32>>,
    journal_postings: BTreeMap<String, Vec<u32>>,
}

impl InvertedIndex {
    pub fn doc_count(&self) -> usize {
        self.doc_ids.len()
    }

    /// Record id of a document number.
    pub fn doc_id(&self, doc: u32) -> &str {
        &self.doc_ids[doc as usize]
    }

    pub fn doc_ids(&self) -> &[String] {
        &self.doc_ids
    }

    /// Postings of one exact token.
    pub fn postings(&self, token: &str) -> &[Posting] {
        self.postings.get(token).map_or(&[], Vec::as_slice)
    }

    /// Postings of every token starting with `prefix`.
    pub fn postings_with_prefix<'a>(
        &'a self,
        prefix: &'a str,
    ) -> impl Iterator<Item = (&'a str, &'a [Posting])> + 'a {
        self.postings
            .range(prefix.to_string()..)
            .take_while(move |(token, _)| token.starts_with(prefix))
            .map(|(token, postings)| (token.as_str(), postings.as_slice()))
    }

    /// Documents carrying a 4-digit subject code, or any code under a
    /// 2-digit prefix.
    pub fn subject_docs(&self, code: u16) -> BTreeSet<u32> {
        let (lo, hi) = if code < 100 {
            (code * 100, code * 100 + 99)
        } else {
            (code, code)
        };
        self.subject_postings
            .range(lo..=hi)
            .flat_map(|(_, docs)| docs.iter().copied())
            .collect()
    }

    /// Normalized journal names with their doc sets.
    pub fn journals(&self) -> impl Iterator<Item = (&str, &[u32])> {
        self.journal_postings
            .iter()
            .map(|(name, docs)| (name.as_str(), docs.as_slice()))
    }

    pub fn all_docs(&self) -> BTreeSet<u32> {
        (0..self.doc_ids.len() as u32).collect()
    }

    /// Canonical serialized form; identical corpora produce identical bytes.
    pub fn canonical_json(&self) -> Vec<u8> {
        serde_json::to_vec(self).expect("index serializes")
    }
}

/// Index every record of the corpus.
pub fn build_index(corpus: &Corpus) -> InvertedIndex {
    let mut postings: BTreeMap<String, Vec<Posting>> = BTreeMap::new();
    let mut subject_postings: BTreeMap<u16, Vec<u32>> = BTreeMap::new();
    let mut journal_postings: BTreeMap<String, Vec<u32>> = BTreeMap::new();
    let mut doc_ids = Vec::with_capacity(corpus.len());

    for (doc, record) in corpus.iter().enumerate() {
        let doc = doc as u32;
        doc_ids.push(record.id.clone());
        for stream in record_streams(record) {
            for token in stream.tokens {
                postings.entry(token.text).or_default().push(Posting {
                    doc,
                    field: stream.field,
                    pos: token.pos,
                });
            }
        }
        for code in record.asjc_codes.iter().copied().collect::<BTreeSet<_>>() {
            subject_postings.entry(code).or_default().push(doc);
        }
        let journal = normalize_journal(&record.journal_name);
        if !journal.is_empty() {
            journal_postings.entry(journal).or_default().push(doc);
        }
    }

    InvertedIndex {
        doc_ids,
        postings,
        subject_postings,
        journal_postings,
    }
}

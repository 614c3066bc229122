//! Publication records, corpus ingestion and the inverted index.
//!
//! A corpus is a line-delimited UTF-8 file, one JSON object per line with
//! keys `id, title, abstract, keywords, journal, asjc, fulltext_terms,
//! references, year` (`fulltext_terms` and `references` optional). Course
//! records are accepted through the same schema with `description` standing
//! in for `abstract`.

mod index;
pub mod tokenize;

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, Read};
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use index::{build_index, InvertedIndex, Posting};
pub use tokenize::{
    keyword_stream, normalize, normalize_journal, normalize_text, record_streams, Field, Token,
    TokenStream, KEYWORD_ENTRY_GAP,
};

/// One document's metadata.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PublicationRecord {
    pub id: String,
    #[serde(default)]
    pub title: String,
    #[serde(rename = "abstract", alias = "description", default)]
    pub abstract_text: String,
    #[serde(rename = "keywords", default)]
    pub author_keywords: Vec<String>,
    #[serde(rename = "journal", default)]
    pub journal_name: String,
    #[serde(rename = "asjc", default)]
    pub asjc_codes: Vec<u16>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fulltext_terms: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub references: Vec<String>,
    #[serde(default)]
    pub year: i32,
}

impl PublicationRecord {
    /// Minimal record for tests and programmatic construction.
    pub fn new(id: impl Into<String>) -> Self {
        PublicationRecord {
            id: id.into(),
            title: String::new(),
            abstract_text: String::new(),
            author_keywords: Vec::new(),
            journal_name: String::new(),
            asjc_codes: Vec::new(),
            fulltext_terms: None,
            references: Vec::new(),
            year: 0,
        }
    }

    fn validate(&self) -> Result<(), String> {
        if self.id.is_empty() {
            return Err("record id is empty".to_string());
        }
        if let Some(code) = self
            .asjc_codes
            .iter()
            .find(|c| !(1000..=9999).contains(*c))
        {
            return Err(format!(
                "asjc code {code} of record {} is outside 1000..=9999",
                self.id
            ));
        }
        if self.references.iter().any(|r| *r == self.id) {
            return Err(format!("record {} lists itself as a reference", self.id));
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: malformed record: {message}")]
    MalformedLine { line: usize, message: String },
    #[error("line {line}: duplicate record id {id}")]
    DuplicateId { line: usize, id: String },
}

/// An immutable, ordered collection of records with unique ids.
#[derive(Debug, Clone, Default)]
pub struct Corpus {
    records: Vec<PublicationRecord>,
    by_id: HashMap<String, u32>,
}

impl Corpus {
    /// Build a corpus from records, enforcing id uniqueness and record
    /// invariants. Input order is retained.
    pub fn from_records(records: Vec<PublicationRecord>) -> Result<Self, CorpusError> {
        let mut by_id = HashMap::with_capacity(records.len());
        for (i, record) in records.iter().enumerate() {
            record
                .validate()
                .map_err(|message| CorpusError::MalformedLine {
                    line: i + 1,
                    message,
                })?;
            if by_id.insert(record.id.clone(), i as u32).is_some() {
                return Err(CorpusError::DuplicateId {
                    line: i + 1,
                    id: record.id.clone(),
                });
            }
        }
        Ok(Corpus { records, by_id })
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn records(&self) -> &[PublicationRecord] {
        &self.records
    }

    pub fn get(&self, id: &str) -> Option<&PublicationRecord> {
        self.by_id.get(id).map(|&i| &self.records[i as usize])
    }

    pub fn contains(&self, id: &str) -> bool {
        self.by_id.contains_key(id)
    }

    /// Position of a record in input order.
    pub fn doc_index(&self, id: &str) -> Option<u32> {
        self.by_id.get(id).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = &PublicationRecord> {
        self.records.iter()
    }
}

/// Load a corpus from a line-delimited record file.
///
/// Blank lines are ignored; any other malformed line aborts the load with
/// its 1-based line number.
pub fn load_corpus(path: impl AsRef<Path>) -> Result<Corpus, CorpusError> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|source| CorpusError::Io {
        path: path.display().to_string(),
        source,
    })?;
    read_corpus(BufReader::new(file))
}

/// Load a corpus from any reader of line-delimited records.
pub fn read_corpus(reader: impl Read) -> Result<Corpus, CorpusError> {
    let reader = BufReader::new(reader);
    let mut records = Vec::new();
    let mut by_id: HashMap<String, u32> = HashMap::new();
    for (i, line) in reader.lines().enumerate() {
        let line_no = i + 1;
        let line = line.map_err(|source| CorpusError::Io {
            path: format!("<line {line_no}>"),
            source,
        })?;
        if line.trim().is_empty() {
            continue;
        }
        let record: PublicationRecord =
            serde_json::from_str(&line).map_err(|e| CorpusError::MalformedLine {
                line: line_no,
                message: e.to_string(),
            })?;
        record
            .validate()
            .map_err(|message| CorpusError::MalformedLine {
                line: line_no,
                message,
            })?;
        if by_id
            .insert(record.id.clone(), records.len() as u32)
            .is_some()
        {
            return Err(CorpusError::DuplicateId {
                line: line_no,
                id: record.id,
            });
        }
        records.push(record);
    }
    Ok(Corpus { records, by_id })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_gives_empty_corpus() {
        let corpus = read_corpus("".as_bytes()).unwrap();
        assert_eq!(corpus.len(), 0);
    }

    #[test]
    fn records_keep_input_order() {
        let text = concat!(
            r#"{"id":"b","title":"Second first","abstract":"","keywords":[],"journal":"","asjc":[],"year":2020}"#,
            "\n",
            r#"{"id":"a","title":"First second","abstract":"","keywords":[],"journal":"","asjc":[],"year":2021}"#,
            "\n"
        );
        let corpus = read_corpus(text.as_bytes()).unwrap();
        assert_eq!(corpus.len(), 2);
        assert_eq!(corpus.records()[0].id, "b");
        assert_eq!(corpus.records()[1].id, "a");
        assert_eq!(corpus.doc_index("a"), Some(1));
    }

    #[test]
    fn duplicate_id_is_rejected_by_name() {
        let text = concat!(
            r#"{"id":"x","title":"","abstract":"","keywords":[],"journal":"","asjc":[],"year":0}"#,
            "\n",
            r#"{"id":"x","title":"","abstract":"","keywords":[],"journal":"","asjc":[],"year":0}"#,
            "\n"
        );
        let err = read_corpus(text.as_bytes()).unwrap_err();
        match err {
            CorpusError::DuplicateId { line, id } => {
                assert_eq!(line, 2);
                assert_eq!(id, "x");
            }
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn malformed_line_reports_line_number() {
        let text = "{\"id\":\"ok\",\"title\":\"\"}\nnot json\n";
        let err = read_corpus(text.as_bytes()).unwrap_err();
        match err {
            CorpusError::MalformedLine { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn course_records_map_description_to_abstract() {
        let text = r#"{"id":"course-1","title":"Marine ecology","description":"Coastal ecosystems and fisheries"}"#;
        let corpus = read_corpus(text.as_bytes()).unwrap();
        assert_eq!(
            corpus.records()[0].abstract_text,
            "Coastal ecosystems and fisheries"
        );
    }

    #[test]
    fn out_of_range_asjc_is_rejected() {
        let text = r#"{"id":"x","title":"","abstract":"","keywords":[],"journal":"","asjc":[999],"year":0}"#;
        assert!(matches!(
            read_corpus(text.as_bytes()).unwrap_err(),
            CorpusError::MalformedLine { line: 1, .. }
        ));
    }

    #[test]
    fn self_reference_is_rejected() {
        let text = r#"{"id":"x","title":"","abstract":"","references":["x"]}"#;
        assert!(read_corpus(text.as_bytes()).is_err());
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let text = r#"{"id":"x","title":"","abstrct":"typo"}"#;
        assert!(read_corpus(text.as_bytes()).is_err());
    }
}

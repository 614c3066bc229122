//! Per-record per-SDG probability tables and their line-delimited format.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::Corpus;
use crate::{Scalar, Sdg};

use super::logreg::LogRegModel;
use super::tfidf::TfidfModel;

#[derive(Debug, Error)]
pub enum ScoreError {
    #[error("cannot access {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: malformed score line: {message}")]
    MalformedLine { line: usize, message: String },
}

/// Probabilities for every scored record, keyed by record id then SDG.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreTable<S> {
    scores: BTreeMap<String, BTreeMap<Sdg, S>>,
}

impl<S> Default for ScoreTable<S> {
    fn default() -> Self {
        ScoreTable {
            scores: BTreeMap::new(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct ScoreLine<S> {
    id: String,
    scores: BTreeMap<Sdg, S>,
}

impl<S: Scalar + Serialize + DeserializeOwned> ScoreTable<S> {
    pub fn new() -> Self {
        ScoreTable::default()
    }

    pub fn insert(&mut self, id: &str, sdg: Sdg, score: S) {
        self.scores
            .entry(id.to_string())
            .or_default()
            .insert(sdg, score);
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&BTreeMap<Sdg, S>> {
        self.scores.get(id)
    }

    pub fn score_of(&self, id: &str, sdg: Sdg) -> Option<S> {
        self.scores.get(id).and_then(|m| m.get(&sdg)).copied()
    }

    /// Iterate records in id order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, &BTreeMap<Sdg, S>)> {
        self.scores.iter().map(|(id, m)| (id.as_str(), m))
    }

    /// Write one line per record, ids in lexicographic order, SDG keys
    /// ascending.
    pub fn write_jsonl(&self, mut writer: impl Write) -> std::io::Result<()> {
        for (id, scores) in &self.scores {
            let line = ScoreLine {
                id: id.clone(),
                scores: scores.clone(),
            };
            serde_json::to_writer(&mut writer, &line)?;
            writer.write_all(b"\n")?;
        }
        Ok(())
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), ScoreError> {
        let path = path.as_ref();
        let file = File::create(path).map_err(|source| ScoreError::Io {
            path: path.display().to_string(),
            source,
        })?;
        self.write_jsonl(BufWriter::new(file))
            .map_err(|source| ScoreError::Io {
                path: path.display().to_string(),
                source,
            })
    }

    pub fn read_jsonl(reader: impl Read) -> Result<Self, ScoreError> {
        let reader = BufReader::new(reader);
        let mut table = ScoreTable::new();
        for (i, line) in reader.lines().enumerate() {
            let line_no = i + 1;
            let line = line.map_err(|source| ScoreError::Io {
                path: format!("<line {line_no}>"),
                source,
            })?;
            if line.trim().is_empty() {
                continue;
            }
            let parsed: ScoreLine<S> =
                serde_json::from_str(&line).map_err(|e| ScoreError::MalformedLine {
                    line: line_no,
                    message: e.to_string(),
                })?;
            table.scores.insert(parsed.id, parsed.scores);
        }
        Ok(table)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, ScoreError> {
        let path = path.as_ref();
        let file = File::open(path).map_err(|source| ScoreError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::read_jsonl(BufReader::new(file))
    }
}

/// Score every record of the corpus against every trained SDG model.
pub fn score_corpus<S: Scalar + Serialize + DeserializeOwned>(
    corpus: &Corpus,
    tfidf: &TfidfModel<S>,
    model: &LogRegModel<S>,
) -> ScoreTable<S> {
    let mut table = ScoreTable::new();
    for record in corpus.iter() {
        let x = tfidf.vectorize(record);
        for (&sdg, weights) in &model.models {
            table.insert(&record.id, sdg, weights.score(&x));
        }
    }
    table
}

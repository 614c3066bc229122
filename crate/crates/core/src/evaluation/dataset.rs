//! Validation datasets: record ids with gold SDG labels.
//!
//! The file format is the corpus line format plus a `gold` field; lines
//! carrying only `id` and `gold` are equally accepted, so adapters for
//! differently shaped public sets only need to emit those two keys.

use std::collections::BTreeSet;
use std::fs::File;
use std::io::{BufRead, BufReader, Read};
use std::path::Path;

use serde::Deserialize;

use crate::Sdg;

use super::EvalError;

/// One gold-labeled item.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationItem {
    pub id: String,
    pub gold: BTreeSet<Sdg>,
}

/// A named gold-labeled dataset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationDataset {
    pub name: String,
    pub items: Vec<ValidationItem>,
    /// True when any item carries more than one gold label.
    pub multi_label: bool,
}

#[derive(Deserialize)]
struct RawItem {
    id: String,
    gold: Vec<Sdg>,
}

impl ValidationDataset {
    /// Build a dataset, enforcing nonempty gold sets and unique item ids.
    pub fn new(name: impl Into<String>, items: Vec<ValidationItem>) -> Result<Self, EvalError> {
        let name = name.into();
        let mut seen = BTreeSet::new();
        for item in &items {
            if item.gold.is_empty() {
                return Err(EvalError::EmptyGold {
                    dataset: name.clone(),
                    id: item.id.clone(),
                });
            }
            if !seen.insert(item.id.clone()) {
                return Err(EvalError::DuplicateItem {
                    dataset: name.clone(),
                    id: item.id.clone(),
                });
            }
        }
        let multi_label = items.iter().any(|i| i.gold.len() > 1);
        Ok(ValidationDataset {
            name,
            items,
            multi_label,
        })
    }

    /// Read line-delimited items; keys other than `id` and `gold` are
    /// ignored so full corpus records with a `gold` field load unchanged.
    pub fn read_jsonl(name: impl Into<String>, reader: impl Read) -> Result<Self, EvalError> {
        let name = name.into();
        let reader = BufReader::new(reader);
        let mut items = Vec::new();
        for (i, line) in reader.lines().enumerate() {
            let line_no = i + 1;
            let line = line.map_err(|source| EvalError::Io {
                path: format!("{name}:<line {line_no}>"),
                source,
            })?;
            if line.trim().is_empty() {
                continue;
            }
            let raw: RawItem =
                serde_json::from_str(&line).map_err(|e| EvalError::MalformedLine {
                    dataset: name.clone(),
                    line: line_no,
                    message: e.to_string(),
                })?;
            items.push(ValidationItem {
                id: raw.id,
                gold: raw.gold.into_iter().collect(),
            });
        }
        ValidationDataset::new(name, items)
    }

    pub fn load(name: impl Into<String>, path: impl AsRef<Path>) -> Result<Self, EvalError> {
        let path = path.as_ref();
        let file = File::open(path).map_err(|source| EvalError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::read_jsonl(name, BufReader::new(file))
    }

    /// Classes with nonzero gold support.
    pub fn gold_classes(&self) -> BTreeSet<Sdg> {
        self.items.iter().flat_map(|i| i.gold.iter().copied()).collect()
    }
}

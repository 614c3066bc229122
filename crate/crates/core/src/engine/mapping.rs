//! Document → SDG assignments with provenance.

use std::collections::{BTreeMap, BTreeSet};
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::Sdg;

/// Whether an (article, SDG) assignment came from the query stage or the
/// thresholded model stage.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Provenance {
    Query,
    Ml,
}

/// Multi-label SDG assignments per record id.
///
/// A (record, SDG) pair is stored at most once; `Query` provenance is
/// authoritative and never displaced by `Ml`. Theme hits record which theme
/// queries fired and exist only for `Query` assignments.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SdgMapping {
    assignments: BTreeMap<String, BTreeMap<Sdg, Provenance>>,
    theme_hits: BTreeMap<String, BTreeMap<Sdg, BTreeSet<String>>>,
}

#[derive(Debug, Error)]
pub enum MappingError {
    #[error("cannot access {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: malformed mapping line: {message}")]
    MalformedLine { line: usize, message: String },
}

#[derive(Serialize, Deserialize)]
struct MappingLine {
    id: String,
    sdgs: Vec<MappingItem>,
}

#[derive(Serialize, Deserialize)]
struct MappingItem {
    sdg: Sdg,
    provenance: Provenance,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    themes: Vec<String>,
}

impl SdgMapping {
    pub fn new() -> Self {
        SdgMapping::default()
    }

    /// Record a query-stage hit for one theme. Overrides an `Ml` assignment
    /// of the same pair if one exists.
    pub fn add_query_hit(&mut self, id: &str, sdg: Sdg, theme: &str) {
        self.assignments
            .entry(id.to_string())
            .or_default()
            .insert(sdg, Provenance::Query);
        self.theme_hits
            .entry(id.to_string())
            .or_default()
            .entry(sdg)
            .or_default()
            .insert(theme.to_string());
    }

    /// Record a model-stage hit; a no-op when the pair is already assigned.
    pub fn add_ml_hit(&mut self, id: &str, sdg: Sdg) {
        self.assignments
            .entry(id.to_string())
            .or_default()
            .entry(sdg)
            .or_insert(Provenance::Ml);
    }

    /// Number of records with at least one assignment.
    pub fn len(&self) -> usize {
        self.assignments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignments.is_empty()
    }

    /// Assignments of one record.
    pub fn get(&self, id: &str) -> Option<&BTreeMap<Sdg, Provenance>> {
        self.assignments.get(id)
    }

    /// SDGs assigned to one record, regardless of provenance.
    pub fn sdgs_of(&self, id: &str) -> BTreeSet<Sdg> {
        self.assignments
            .get(id)
            .map(|m| m.keys().copied().collect())
            .unwrap_or_default()
    }

    pub fn contains(&self, id: &str, sdg: Sdg) -> bool {
        self.assignments
            .get(id)
            .is_some_and(|m| m.contains_key(&sdg))
    }

    /// Theme labels that fired for one (record, SDG) pair.
    pub fn themes_of(&self, id: &str, sdg: Sdg) -> BTreeSet<String> {
        self.theme_hits
            .get(id)
            .and_then(|per_sdg| per_sdg.get(&sdg))
            .cloned()
            .unwrap_or_default()
    }

    /// Iterate records in id order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, &BTreeMap<Sdg, Provenance>)> {
        self.assignments.iter().map(|(id, m)| (id.as_str(), m))
    }

    /// Record ids assigned a given SDG, in id order.
    pub fn records_with(&self, sdg: Sdg) -> Vec<&str> {
        self.assignments
            .iter()
            .filter(|(_, m)| m.contains_key(&sdg))
            .map(|(id, _)| id.as_str())
            .collect()
    }

    /// Count of records assigned a given SDG.
    pub fn count_for(&self, sdg: Sdg) -> usize {
        self.assignments
            .values()
            .filter(|m| m.contains_key(&sdg))
            .count()
    }

    /// Counts split by provenance for a given SDG: (query, ml).
    pub fn provenance_counts(&self, sdg: Sdg) -> (usize, usize) {
        let mut query = 0;
        let mut ml = 0;
        for per_sdg in self.assignments.values() {
            match per_sdg.get(&sdg) {
                Some(Provenance::Query) => query += 1,
                Some(Provenance::Ml) => ml += 1,
                None => {}
            }
        }
        (query, ml)
    }

    /// The mapping restricted to `Query`-provenance assignments.
    pub fn query_only(&self) -> SdgMapping {
        let mut out = SdgMapping::new();
        for (id, per_sdg) in &self.assignments {
            for (&sdg, &prov) in per_sdg {
                if prov == Provenance::Query {
                    out.assignments
                        .entry(id.clone())
                        .or_default()
                        .insert(sdg, Provenance::Query);
                }
            }
        }
        for (id, hits) in &self.theme_hits {
            out.theme_hits.insert(id.clone(), hits.clone());
        }
        out
    }

    /// Every (record, SDG, provenance) triple, in (id, sdg) order.
    pub fn triples(&self) -> impl Iterator<Item = (&str, Sdg, Provenance)> {
        self.assignments.iter().flat_map(|(id, per_sdg)| {
            per_sdg
                .iter()
                .map(move |(&sdg, &prov)| (id.as_str(), sdg, prov))
        })
    }

    /// Write the line-delimited mapping format: ids in lexicographic order,
    /// SDGs ascending within each line.
    pub fn write_jsonl(&self, mut writer: impl Write) -> std::io::Result<()> {
        for (id, per_sdg) in &self.assignments {
            let line = MappingLine {
                id: id.clone(),
                sdgs: per_sdg
                    .iter()
                    .map(|(&sdg, &provenance)| MappingItem {
                        sdg,
                        provenance,
                        themes: self.themes_of(id, sdg).into_iter().collect(),
                    })
                    .collect(),
            };
            serde_json::to_writer(&mut writer, &line)?;
            writer.write_all(b"\n")?;
        }
        Ok(())
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), MappingError> {
        let path = path.as_ref();
        let file = File::create(path).map_err(|source| MappingError::Io {
            path: path.display().to_string(),
            source,
        })?;
        self.write_jsonl(BufWriter::new(file))
            .map_err(|source| MappingError::Io {
                path: path.display().to_string(),
                source,
            })
    }

    pub fn read_jsonl(reader: impl Read) -> Result<Self, MappingError> {
        let reader = BufReader::new(reader);
        let mut mapping = SdgMapping::new();
        for (i, line) in reader.lines().enumerate() {
            let line_no = i + 1;
            let line = line.map_err(|source| MappingError::Io {
                path: format!("<line {line_no}>"),
                source,
            })?;
            if line.trim().is_empty() {
                continue;
            }
            let parsed: MappingLine =
                serde_json::from_str(&line).map_err(|e| MappingError::MalformedLine {
                    line: line_no,
                    message: e.to_string(),
                })?;
            for item in parsed.sdgs {
                match item.provenance {
                    Provenance::Query => {
                        if item.themes.is_empty() {
                            mapping
                                .assignments
                                .entry(parsed.id.clone())
                                .or_default()
                                .insert(item.sdg, Provenance::Query);
                        } else {
                            for theme in &item.themes {
                                mapping.add_query_hit(&parsed.id, item.sdg, theme);
                            }
                        }
                    }
                    Provenance::Ml => mapping.add_ml_hit(&parsed.id, item.sdg),
                }
            }
        }
        Ok(mapping)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, MappingError> {
        let path = path.as_ref();
        let file = File::open(path).map_err(|source| MappingError::Io {
            path: path.display().to_string(),
            source,
        })?;
        SdgMapping::read_jsonl(BufReader::new(file))
    }
}

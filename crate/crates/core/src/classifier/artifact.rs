//! Self-describing model artifact: vocabulary, idf weights, per-SDG
//! weight vectors and biases, hyperparameters and the decision threshold.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::Scalar;

use super::logreg::LogRegModel;
use super::tfidf::TfidfModel;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum ArtifactError {
    #[error("cannot access {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed model artifact: {0}")]
    Malformed(#[from] serde_json::Error),
    #[error("unsupported artifact format version {found} (expected {FORMAT_VERSION})")]
    Version { found: u32 },
}

/// Everything needed to score new records, round-tripping losslessly
/// through JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelArtifact<S> {
    pub format_version: u32,
    pub tfidf: TfidfModel<S>,
    pub model: LogRegModel<S>,
}

impl<S: Scalar + Serialize + DeserializeOwned> ModelArtifact<S> {
    pub fn new(tfidf: TfidfModel<S>, model: LogRegModel<S>) -> Self {
        ModelArtifact {
            format_version: FORMAT_VERSION,
            tfidf,
            model,
        }
    }

    /// Serialize deterministically: maps are ordered and floats use
    /// shortest round-trip formatting, so equal models yield equal bytes.
    pub fn write(&self, mut writer: impl Write) -> Result<(), ArtifactError> {
        serde_json::to_writer(&mut writer, self)?;
        writer.write_all(b"\n").map_err(|source| ArtifactError::Io {
            path: "<writer>".to_string(),
            source,
        })?;
        Ok(())
    }

    pub fn read(reader: impl Read) -> Result<Self, ArtifactError> {
        let artifact: ModelArtifact<S> = serde_json::from_reader(reader)?;
        if artifact.format_version != FORMAT_VERSION {
            return Err(ArtifactError::Version {
                found: artifact.format_version,
            });
        }
        Ok(artifact)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), ArtifactError> {
        let path = path.as_ref();
        let file = File::create(path).map_err(|source| ArtifactError::Io {
            path: path.display().to_string(),
            source,
        })?;
        self.write(BufWriter::new(file))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, ArtifactError> {
        let path = path.as_ref();
        let file = File::open(path).map_err(|source| ArtifactError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::read(BufReader::new(file))
    }
}

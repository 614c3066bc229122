//! Annotation worksheets: a seeded random sample of mapped records with
//! two empty verdict columns. The same file, filled in, feeds precision
//! estimation.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::classifier::sample_without_replacement;
use crate::corpus::Corpus;
use crate::engine::SdgMapping;
use crate::evaluation::Verdict;
use crate::Sdg;

use super::DevError;

const HEADERS: [&str; 5] = [
    "id",
    "title",
    "abstract",
    "verdict_analyst_1",
    "verdict_analyst_2",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorksheetRow {
    pub id: String,
    pub title: String,
    pub abstract_text: String,
}

/// Sampled records awaiting review.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Worksheet {
    pub sdg: Sdg,
    pub rows: Vec<WorksheetRow>,
    /// Set when the mapping had fewer records than requested, in which
    /// case every record is included.
    pub truncated: bool,
}

/// Draw a uniform seeded sample, without replacement and in shuffled
/// order, from the records the mapping assigns to `sdg`. When fewer than
/// `n` records exist, all of them are returned and `truncated` is set.
pub fn sample_for_review(
    mapping: &SdgMapping,
    sdg: Sdg,
    n: usize,
    seed: u64,
    corpus: &Corpus,
) -> Result<Worksheet, DevError> {
    if n == 0 {
        return Err(DevError::InvalidCount);
    }
    let population: Vec<String> = mapping
        .records_with(sdg)
        .into_iter()
        .map(str::to_string)
        .collect();
    let truncated = population.len() < n;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sampled = sample_without_replacement(&mut rng, population, n);
    let rows = sampled
        .into_iter()
        .map(|id| {
            let record = corpus
                .get(&id)
                .ok_or_else(|| DevError::UnknownId(id.clone()))?;
            Ok(WorksheetRow {
                id,
                title: record.title.clone(),
                abstract_text: record.abstract_text.clone(),
            })
        })
        .collect::<Result<Vec<_>, DevError>>()?;
    Ok(Worksheet {
        sdg,
        rows,
        truncated,
    })
}

/// Write the worksheet CSV with empty verdict columns.
pub fn write_worksheet(worksheet: &Worksheet, writer: impl Write) -> Result<(), DevError> {
    let mut csv_writer = csv::Writer::from_writer(writer);
    let io_err = |e: csv::Error| DevError::Io {
        path: "<worksheet>".to_string(),
        source: std::io::Error::other(e),
    };
    csv_writer.write_record(HEADERS).map_err(io_err)?;
    for row in &worksheet.rows {
        csv_writer
            .write_record([&row.id, &row.title, &row.abstract_text, "", ""])
            .map_err(io_err)?;
    }
    csv_writer.flush().map_err(|e| DevError::Io {
        path: "<worksheet>".to_string(),
        source: e,
    })
}

/// Read a filled worksheet back as verdict pairs, in row order.
pub fn read_filled_worksheet(reader: impl Read) -> Result<Vec<(Verdict, Verdict)>, DevError> {
    let mut csv_reader = csv::ReaderBuilder::new().from_reader(reader);
    let headers = csv_reader
        .headers()
        .map_err(|e| DevError::Worksheet {
            row: 1,
            message: e.to_string(),
        })?
        .clone();
    let verdict_1 = headers
        .iter()
        .position(|h| h == "verdict_analyst_1")
        .ok_or_else(|| DevError::Worksheet {
            row: 1,
            message: "missing verdict_analyst_1 column".to_string(),
        })?;
    let verdict_2 = headers
        .iter()
        .position(|h| h == "verdict_analyst_2")
        .ok_or_else(|| DevError::Worksheet {
            row: 1,
            message: "missing verdict_analyst_2 column".to_string(),
        })?;

    let mut verdicts = Vec::new();
    for (i, result) in csv_reader.records().enumerate() {
        let row = i + 2; // 1-based, after the header
        let record = result.map_err(|e| DevError::Worksheet {
            row,
            message: e.to_string(),
        })?;
        let parse = |column: usize, analyst: u8| -> Result<Verdict, DevError> {
            let cell = record.get(column).unwrap_or("");
            if cell.trim().is_empty() {
                return Err(DevError::MissingVerdict { row, analyst });
            }
            Verdict::parse(cell).ok_or_else(|| DevError::Worksheet {
                row,
                message: format!("unrecognized verdict {cell:?} for analyst {analyst}"),
            })
        };
        verdicts.push((parse(verdict_1, 1)?, parse(verdict_2, 2)?));
    }
    Ok(verdicts)
}

/// Convenience loader for a filled worksheet file.
pub fn load_filled_worksheet(path: impl AsRef<Path>) -> Result<Vec<(Verdict, Verdict)>, DevError> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|source| DevError::Io {
        path: path.display().to_string(),
        source,
    })?;
    read_filled_worksheet(file)
}

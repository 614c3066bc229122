//! Two-staged combination: query hits first, then thresholded model
//! predictions on top, plus the provenance distribution report.

use std::io::Write;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classifier::ScoreTable;
use crate::engine::SdgMapping;
use crate::{Scalar, Sdg};

#[derive(Debug, Error)]
pub enum CombineError {
    #[error("threshold {0} is outside (0, 1]")]
    InvalidTheta(f64),
}

/// Union the query mapping with every prediction at or above `theta`.
///
/// Query assignments are authoritative: the result restricted to `Query`
/// provenance equals the input exactly, and a pair already mapped by a
/// query is never re-labeled `Ml`.
pub fn combine<S: Scalar + Serialize + DeserializeOwned>(
    query_mapping: &SdgMapping,
    scores: &ScoreTable<S>,
    theta: S,
) -> Result<SdgMapping, CombineError> {
    if theta <= S::zero() || theta > S::one() {
        return Err(CombineError::InvalidTheta(
            theta.to_f64().unwrap_or(f64::NAN),
        ));
    }
    let mut combined = query_mapping.clone();
    for (id, per_sdg) in scores.iter() {
        for (&sdg, &score) in per_sdg {
            if score >= theta {
                combined.add_ml_hit(id, sdg);
            }
        }
    }
    Ok(combined)
}

/// Per-SDG provenance split of a mapping.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProvenanceRow {
    pub sdg: Sdg,
    pub query_count: usize,
    pub ml_count: usize,
    /// `ml / (ml + query)`, 0 when the SDG has no assignments.
    pub ml_share: f64,
}

/// Count assignments per SDG split by provenance. SDG 17 is reported only
/// when `include_sdg17` is set.
pub fn provenance_report(mapping: &SdgMapping, include_sdg17: bool) -> Vec<ProvenanceRow> {
    Sdg::all()
        .filter(|sdg| include_sdg17 || sdg.get() != 17)
        .map(|sdg| {
            let (query_count, ml_count) = mapping.provenance_counts(sdg);
            let total = query_count + ml_count;
            let ml_share = if total == 0 {
                0.0
            } else {
                ml_count as f64 / total as f64
            };
            ProvenanceRow {
                sdg,
                query_count,
                ml_count,
                ml_share,
            }
        })
        .collect()
}

/// Aligned-text form of the provenance report.
pub fn render_provenance_text(rows: &[ProvenanceRow]) -> String {
    let mut out = String::from("SDG | query |  ml | ml_share\n");
    for row in rows {
        out.push_str(&format!(
            "{:>3} | {:>5} | {:>3} | {:.4}\n",
            row.sdg, row.query_count, row.ml_count, row.ml_share
        ));
    }
    out
}

/// Plot-data file: one `sdg,query_count,ml_count` line per SDG.
pub fn write_provenance_plot_data(
    rows: &[ProvenanceRow],
    mut writer: impl Write,
) -> std::io::Result<()> {
    writeln!(writer, "sdg,query_count,ml_count")?;
    for row in rows {
        writeln!(writer, "{},{},{}", row.sdg, row.query_count, row.ml_count)?;
    }
    Ok(())
}

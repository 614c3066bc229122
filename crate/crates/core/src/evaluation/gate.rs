//! Query acceptance gating and the precision/recall estimators feeding it.

use serde::{Deserialize, Serialize};

use crate::engine::SdgMapping;
use crate::{Scalar, Sdg};

use super::dataset::ValidationDataset;
use super::EvalError;

/// Acceptance thresholds. Defaults: precision at least 90%, recall at
/// least 60%, on a review sample of at least 100 records. All inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GateConfig<S> {
    pub min_precision: S,
    pub min_recall: S,
    pub min_sample: u64,
}

impl<S: Scalar> Default for GateConfig<S> {
    fn default() -> Self {
        GateConfig {
            min_precision: S::of_f64(0.90),
            min_recall: S::of_f64(0.60),
            min_sample: 100,
        }
    }
}

/// One violated acceptance condition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum GateViolation<S> {
    Precision { actual: S, required: S },
    Recall { actual: S, required: S },
    SampleSize { actual: u64, required: u64 },
}

impl<S: Scalar> std::fmt::Display for GateViolation<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GateViolation::Precision { actual, required } => {
                write!(f, "precision {actual} < required {required}")
            }
            GateViolation::Recall { actual, required } => {
                write!(f, "recall {actual} < required {required}")
            }
            GateViolation::SampleSize { actual, required } => {
                write!(f, "sample size {actual} < required {required}")
            }
        }
    }
}

/// Accept, or reject with every violated condition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "decision", rename_all = "snake_case")]
pub enum GateDecision<S> {
    Accept,
    Reject { violations: Vec<GateViolation<S>> },
}

impl<S> GateDecision<S> {
    pub fn accepted(&self) -> bool {
        matches!(self, GateDecision::Accept)
    }
}

/// Apply the acceptance gate; thresholds are inclusive.
pub fn gate<S: Scalar>(
    precision: S,
    recall: S,
    sample_size: u64,
    config: &GateConfig<S>,
) -> GateDecision<S> {
    let mut violations = Vec::new();
    if precision < config.min_precision {
        violations.push(GateViolation::Precision {
            actual: precision,
            required: config.min_precision,
        });
    }
    if recall < config.min_recall {
        violations.push(GateViolation::Recall {
            actual: recall,
            required: config.min_recall,
        });
    }
    if sample_size < config.min_sample {
        violations.push(GateViolation::SampleSize {
            actual: sample_size,
            required: config.min_sample,
        });
    }
    if violations.is_empty() {
        GateDecision::Accept
    } else {
        GateDecision::Reject { violations }
    }
}

/// One analyst's relevance verdict for one sampled record.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Relevant,
    NotRelevant,
}

impl Verdict {
    /// Parse a worksheet cell; empty cells count as missing.
    pub fn parse(cell: &str) -> Option<Verdict> {
        match cell.trim().to_lowercase().as_str() {
            "relevant" => Some(Verdict::Relevant),
            "not_relevant" => Some(Verdict::NotRelevant),
            _ => None,
        }
    }
}

/// Estimate precision from two independent analysts' verdicts.
///
/// A record counts relevant only when both analysts mark it relevant; the
/// agreement rate (fraction of coinciding verdicts) is surfaced alongside
/// so the ambiguity mass stays visible.
pub fn estimate_precision<S: Scalar>(
    annotations: &[(Verdict, Verdict)],
) -> Result<(S, S), EvalError> {
    if annotations.is_empty() {
        return Err(EvalError::EmptyAnnotations);
    }
    let total = S::of_usize(annotations.len());
    let relevant = annotations
        .iter()
        .filter(|(a, b)| *a == Verdict::Relevant && *b == Verdict::Relevant)
        .count();
    let agree = annotations.iter().filter(|(a, b)| a == b).count();
    Ok((
        S::of_usize(relevant) / total,
        S::of_usize(agree) / total,
    ))
}

/// Fraction of a recall set's records the mapping assigns to `sdg`.
///
/// Every item of the recall set must carry `sdg` in its gold labels.
pub fn estimate_recall<S: Scalar>(
    mapping: &SdgMapping,
    recall_set: &ValidationDataset,
    sdg: Sdg,
) -> Result<S, EvalError> {
    if recall_set.items.is_empty() {
        return Err(EvalError::EmptyRecallSet {
            dataset: recall_set.name.clone(),
        });
    }
    if let Some(item) = recall_set.items.iter().find(|i| !i.gold.contains(&sdg)) {
        return Err(EvalError::GoldMissingTarget {
            dataset: recall_set.name.clone(),
            id: item.id.clone(),
            sdg,
        });
    }
    let covered = recall_set
        .items
        .iter()
        .filter(|i| mapping.contains(&i.id, sdg))
        .count();
    Ok(S::of_usize(covered) / S::of_usize(recall_set.items.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evaluation::dataset::ValidationItem;
    use std::collections::BTreeSet;

    fn sdg(n: u8) -> Sdg {
        Sdg::new(n).unwrap()
    }

    #[test]
    fn paper_thresholds_accept_at_the_boundary() {
        let config = GateConfig::<f64>::default();
        assert!(gate(0.90, 0.60, 100, &config).accepted());
        assert!(gate(0.92, 0.61, 100, &config).accepted());
    }

    #[test]
    fn each_violation_is_named_exactly() {
        let config = GateConfig::<f64>::default();
        match gate(0.899, 0.99, 200, &config) {
            GateDecision::Reject { violations } => {
                assert_eq!(violations.len(), 1);
                assert!(matches!(violations[0], GateViolation::Precision { .. }));
            }
            GateDecision::Accept => panic!("should reject"),
        }
        match gate(0.95, 0.599, 200, &config) {
            GateDecision::Reject { violations } => {
                assert_eq!(violations.len(), 1);
                assert!(matches!(violations[0], GateViolation::Recall { .. }));
            }
            GateDecision::Accept => panic!("should reject"),
        }
        match gate(0.95, 0.60, 99, &config) {
            GateDecision::Reject { violations } => {
                assert_eq!(violations.len(), 1);
                assert!(matches!(violations[0], GateViolation::SampleSize { .. }));
            }
            GateDecision::Accept => panic!("should reject"),
        }
    }

    #[test]
    fn all_violations_are_listed_together() {
        let config = GateConfig::<f64>::default();
        match gate(0.5, 0.5, 10, &config) {
            GateDecision::Reject { violations } => assert_eq!(violations.len(), 3),
            GateDecision::Accept => panic!("should reject"),
        }
    }

    #[test]
    fn unanimous_relevance_gives_perfect_precision() {
        let rows = vec![(Verdict::Relevant, Verdict::Relevant); 100];
        let (p, a): (f64, f64) = estimate_precision(&rows).unwrap();
        assert_eq!((p, a), (1.0, 1.0));
    }

    #[test]
    fn full_disagreement_gives_zero_precision_and_agreement() {
        let rows = vec![(Verdict::Relevant, Verdict::NotRelevant); 50];
        let (p, a): (f64, f64) = estimate_precision(&rows).unwrap();
        assert_eq!((p, a), (0.0, 0.0));
    }

    #[test]
    fn mixed_verdicts_count_strict_conjunction() {
        let mut rows = vec![(Verdict::Relevant, Verdict::Relevant); 92];
        rows.extend(vec![(Verdict::NotRelevant, Verdict::NotRelevant); 5]);
        rows.extend(vec![(Verdict::Relevant, Verdict::NotRelevant); 3]);
        let (p, a): (f64, f64) = estimate_precision(&rows).unwrap();
        assert!((p - 0.92).abs() < 1e-12);
        assert!((a - 0.97).abs() < 1e-12);
    }

    #[test]
    fn recall_is_the_covered_fraction() {
        let items: Vec<ValidationItem> = (0..100)
            .map(|i| ValidationItem {
                id: format!("r{i}"),
                gold: BTreeSet::from([sdg(14)]),
            })
            .collect();
        let ds = ValidationDataset::new("marine", items).unwrap();
        let mut mapping = SdgMapping::new();
        for i in 0..61 {
            mapping.add_query_hit(&format!("r{i}"), sdg(14), "T");
        }
        let r: f64 = estimate_recall(&mapping, &ds, sdg(14)).unwrap();
        assert!((r - 0.61).abs() < 1e-12);

        let empty: f64 = estimate_recall(&SdgMapping::new(), &ds, sdg(14)).unwrap();
        assert_eq!(empty, 0.0);
    }

    #[test]
    fn recall_set_must_target_the_sdg() {
        let ds = ValidationDataset::new(
            "bad",
            vec![ValidationItem {
                id: "r0".to_string(),
                gold: BTreeSet::from([sdg(2)]),
            }],
        )
        .unwrap();
        assert!(matches!(
            estimate_recall::<f64>(&SdgMapping::new(), &ds, sdg(14)),
            Err(EvalError::GoldMissingTarget { .. })
        ));
    }

    #[test]
    fn verdict_parsing_is_strict_about_values() {
        assert_eq!(Verdict::parse(" Relevant "), Some(Verdict::Relevant));
        assert_eq!(Verdict::parse("NOT_RELEVANT"), Some(Verdict::NotRelevant));
        assert_eq!(Verdict::parse(""), None);
        assert_eq!(Verdict::parse("maybe"), None);
    }
}

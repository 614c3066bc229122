//! Multi-label confusion counting and micro/macro F1 reporting.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::engine::SdgMapping;
use crate::{Scalar, Sdg};

use super::dataset::ValidationDataset;

/// Per-class confusion counts. True negatives are never needed by the
/// reported metrics and are not tracked.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionCounts {
    pub tp: u64,
    pub fp: u64,
    #[serde(rename = "fn")]
    pub false_neg: u64,
}

/// Count TP/FP/FN per class over the dataset's items. Items absent from
/// the prediction count as empty predictions; predictions for records
/// outside the dataset are ignored.
pub fn confusion(
    pred: &SdgMapping,
    gold: &ValidationDataset,
    classes: &BTreeSet<Sdg>,
) -> BTreeMap<Sdg, ConfusionCounts> {
    let mut counts: BTreeMap<Sdg, ConfusionCounts> = classes
        .iter()
        .map(|&sdg| (sdg, ConfusionCounts::default()))
        .collect();
    for item in &gold.items {
        let predicted = pred.sdgs_of(&item.id);
        for (&sdg, c) in counts.iter_mut() {
            let in_pred = predicted.contains(&sdg);
            let in_gold = item.gold.contains(&sdg);
            match (in_pred, in_gold) {
                (true, true) => c.tp += 1,
                (true, false) => c.fp += 1,
                (false, true) => c.false_neg += 1,
                (false, false) => {}
            }
        }
    }
    counts
}

/// Precision, recall and F1 of one class, with 0/0 defined as 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassMetrics<S> {
    pub counts: ConfusionCounts,
    pub precision: S,
    pub recall: S,
    pub f1: S,
}

/// Per-class metrics plus micro/macro aggregates over the evaluated
/// classes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport<S> {
    pub per_class: BTreeMap<Sdg, ClassMetrics<S>>,
    pub micro_f1: S,
    pub macro_f1: S,
    pub classes_evaluated: BTreeSet<Sdg>,
}

fn ratio<S: Scalar>(num: u64, den: u64) -> S {
    if den == 0 {
        S::zero()
    } else {
        S::of_usize(num as usize) / S::of_usize(den as usize)
    }
}

fn f1_of<S: Scalar>(precision: S, recall: S) -> S {
    let sum = precision + recall;
    if sum == S::zero() {
        S::zero()
    } else {
        S::of_f64(2.0) * precision * recall / sum
    }
}

/// Compute the report from confusion counts: micro F1 from globally summed
/// counts, macro F1 as the unweighted mean of per-class F1.
pub fn f1_report<S: Scalar>(counts: &BTreeMap<Sdg, ConfusionCounts>) -> MetricsReport<S> {
    let mut per_class = BTreeMap::new();
    let (mut tp, mut fp, mut false_neg) = (0u64, 0u64, 0u64);
    let mut f1_sum = S::zero();
    for (&sdg, &c) in counts {
        let precision = ratio::<S>(c.tp, c.tp + c.fp);
        let recall = ratio::<S>(c.tp, c.tp + c.false_neg);
        let f1 = f1_of(precision, recall);
        f1_sum = f1_sum + f1;
        tp += c.tp;
        fp += c.fp;
        false_neg += c.false_neg;
        per_class.insert(
            sdg,
            ClassMetrics {
                counts: c,
                precision,
                recall,
                f1,
            },
        );
    }
    let micro_precision = ratio::<S>(tp, tp + fp);
    let micro_recall = ratio::<S>(tp, tp + false_neg);
    let micro_f1 = f1_of(micro_precision, micro_recall);
    let macro_f1 = if per_class.is_empty() {
        S::zero()
    } else {
        f1_sum / S::of_usize(per_class.len())
    };
    MetricsReport {
        classes_evaluated: counts.keys().copied().collect(),
        per_class,
        micro_f1,
        macro_f1,
    }
}

impl<S: Scalar> MetricsReport<S> {
    /// The `micro/macro` cell in rounded percent, e.g. `76/48`.
    pub fn percent_cell(&self) -> String {
        percent_cell(self.micro_f1, self.macro_f1)
    }
}

/// Format two fractions as a rounded-percent pair.
pub fn percent_cell<S: Scalar>(micro: S, macro_f1: S) -> String {
    let as_pct = |v: S| -> i64 {
        (v * S::of_f64(100.0))
            .round()
            .to_i64()
            .expect("percent fits i64")
    };
    format!("{}/{}", as_pct(micro), as_pct(macro_f1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evaluation::dataset::ValidationItem;
    use approx::assert_relative_eq;

    fn sdg(n: u8) -> Sdg {
        Sdg::new(n).unwrap()
    }

    fn dataset(items: Vec<(&str, Vec<u8>)>) -> ValidationDataset {
        ValidationDataset::new(
            "test",
            items
                .into_iter()
                .map(|(id, gold)| ValidationItem {
                    id: id.to_string(),
                    gold: gold.into_iter().map(|n| sdg(n)).collect(),
                })
                .collect(),
        )
        .unwrap()
    }

    fn hand_case() -> BTreeMap<Sdg, ConfusionCounts> {
        // gold {d1:{1}, d2:{2}}, pred {d1:{1,2}, d2:{2}}
        let gold = dataset(vec![("d1", vec![1]), ("d2", vec![2])]);
        let mut pred = SdgMapping::new();
        pred.add_query_hit("d1", sdg(1), "T");
        pred.add_query_hit("d1", sdg(2), "T");
        pred.add_query_hit("d2", sdg(2), "T");
        confusion(&pred, &gold, &BTreeSet::from([sdg(1), sdg(2)]))
    }

    #[test]
    fn hand_enumerated_confusion_counts() {
        let counts = hand_case();
        assert_eq!(
            counts[&sdg(1)],
            ConfusionCounts {
                tp: 1,
                fp: 0,
                false_neg: 0
            }
        );
        assert_eq!(
            counts[&sdg(2)],
            ConfusionCounts {
                tp: 1,
                fp: 1,
                false_neg: 0
            }
        );
    }

    #[test]
    fn hand_enumerated_micro_macro() {
        let report: MetricsReport<f64> = f1_report(&hand_case());
        assert_relative_eq!(report.micro_f1, 0.8, epsilon = 1e-12);
        assert_relative_eq!(report.macro_f1, 5.0 / 6.0, epsilon = 1e-12);
        assert_eq!(report.percent_cell(), "80/83");
    }

    #[test]
    fn perfect_prediction_scores_one() {
        let gold = dataset(vec![("d1", vec![1, 3]), ("d2", vec![2])]);
        let mut pred = SdgMapping::new();
        pred.add_query_hit("d1", sdg(1), "T");
        pred.add_query_hit("d1", sdg(3), "T");
        pred.add_query_hit("d2", sdg(2), "T");
        let classes = BTreeSet::from([sdg(1), sdg(2), sdg(3)]);
        let report: MetricsReport<f64> = f1_report(&confusion(&pred, &gold, &classes));
        assert_eq!(report.micro_f1, 1.0);
        assert_eq!(report.macro_f1, 1.0);
        assert_eq!(report.percent_cell(), "100/100");
    }

    #[test]
    fn empty_prediction_counts_false_negatives() {
        let gold = dataset(vec![("d1", vec![1, 3]), ("d2", vec![2])]);
        let pred = SdgMapping::new();
        let classes = BTreeSet::from([sdg(1), sdg(2), sdg(3)]);
        let counts = confusion(&pred, &gold, &classes);
        let total_fn: u64 = counts.values().map(|c| c.false_neg).sum();
        let total_tp: u64 = counts.values().map(|c| c.tp).sum();
        let total_fp: u64 = counts.values().map(|c| c.fp).sum();
        assert_eq!((total_tp, total_fp, total_fn), (0, 0, 3));
        let report: MetricsReport<f64> = f1_report(&counts);
        assert_eq!(report.micro_f1, 0.0);
        assert_eq!(report.macro_f1, 0.0);
    }

    #[test]
    fn zero_over_zero_is_zero_not_skipped() {
        // class 4 has no gold and no predictions: P = R = F1 = 0 and it
        // still participates in the macro average
        let gold = dataset(vec![("d1", vec![1])]);
        let mut pred = SdgMapping::new();
        pred.add_query_hit("d1", sdg(1), "T");
        let classes = BTreeSet::from([sdg(1), sdg(4)]);
        let report: MetricsReport<f64> = f1_report(&confusion(&pred, &gold, &classes));
        assert_eq!(report.per_class[&sdg(4)].f1, 0.0);
        assert_relative_eq!(report.macro_f1, 0.5, epsilon = 1e-12);
    }

    #[test]
    fn single_class_micro_equals_class_f1() {
        let gold = dataset(vec![("d1", vec![2]), ("d2", vec![2]), ("d3", vec![2])]);
        let mut pred = SdgMapping::new();
        pred.add_query_hit("d1", sdg(2), "T");
        let classes = BTreeSet::from([sdg(2)]);
        let report: MetricsReport<f64> = f1_report(&confusion(&pred, &gold, &classes));
        assert_relative_eq!(report.micro_f1, report.per_class[&sdg(2)].f1);
        assert_relative_eq!(report.micro_f1, report.macro_f1);
    }

    #[test]
    fn item_order_does_not_change_metrics() {
        let forward = dataset(vec![("d1", vec![1]), ("d2", vec![2]), ("d3", vec![1, 2])]);
        let backward = dataset(vec![("d3", vec![1, 2]), ("d2", vec![2]), ("d1", vec![1])]);
        let mut pred = SdgMapping::new();
        pred.add_query_hit("d1", sdg(1), "T");
        pred.add_query_hit("d3", sdg(2), "T");
        let classes = BTreeSet::from([sdg(1), sdg(2)]);
        let a: MetricsReport<f64> = f1_report(&confusion(&pred, &forward, &classes));
        let b: MetricsReport<f64> = f1_report(&confusion(&pred, &backward, &classes));
        assert_eq!(a, b);
    }

    #[test]
    fn percent_cell_rounds_to_nearest() {
        assert_eq!(percent_cell(0.76f64, 0.48), "76/48");
        assert_eq!(percent_cell(0.764f64, 0.485), "76/49");
        assert_eq!(percent_cell(0.0f64, 1.0), "0/100");
    }
}

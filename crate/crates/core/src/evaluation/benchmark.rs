//! Methods × datasets benchmarking matrix with `micro/macro` cells.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::engine::SdgMapping;
use crate::Scalar;

use super::dataset::ValidationDataset;
use super::metrics::{confusion, f1_report, MetricsReport};

/// One filled benchmark cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkCell<S> {
    pub method: String,
    pub dataset: String,
    pub report: MetricsReport<S>,
}

/// Rows are methods, columns datasets, in input order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkMatrix<S> {
    pub methods: Vec<String>,
    pub datasets: Vec<String>,
    /// `cells[m][d]` pairs `methods[m]` with `datasets[d]`.
    pub cells: Vec<Vec<MetricsReport<S>>>,
}

/// Evaluate every method against every dataset. The macro average of each
/// cell spans only the classes with gold support in that dataset; dataset
/// items missing from a method's mapping count as empty predictions.
pub fn benchmark<S: Scalar>(
    methods: &[(String, SdgMapping)],
    datasets: &[ValidationDataset],
) -> BenchmarkMatrix<S> {
    let cells: Vec<Vec<MetricsReport<S>>> = methods
        .par_iter()
        .map(|(_, mapping)| {
            datasets
                .iter()
                .map(|dataset| {
                    let classes = dataset.gold_classes();
                    f1_report(&confusion(mapping, dataset, &classes))
                })
                .collect()
        })
        .collect();
    BenchmarkMatrix {
        methods: methods.iter().map(|(name, _)| name.clone()).collect(),
        datasets: datasets.iter().map(|d| d.name.clone()).collect(),
        cells,
    }
}

impl<S: Scalar> BenchmarkMatrix<S> {
    pub fn cell(&self, method: usize, dataset: usize) -> &MetricsReport<S> {
        &self.cells[method][dataset]
    }

    /// Aligned text table of `micro/macro` percent cells.
    pub fn render_text(&self) -> String {
        let header = "method \\ dataset";
        let rendered: Vec<Vec<String>> = self
            .cells
            .iter()
            .map(|row| row.iter().map(|c| c.percent_cell()).collect())
            .collect();
        let method_width = self
            .methods
            .iter()
            .map(String::len)
            .chain([header.len()])
            .max()
            .unwrap_or(0);
        let col_widths: Vec<usize> = self
            .datasets
            .iter()
            .enumerate()
            .map(|(d, name)| {
                rendered
                    .iter()
                    .map(|row| row[d].len())
                    .chain([name.len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();

        let mut out = format!("{header:<method_width$}");
        for (name, width) in self.datasets.iter().zip(&col_widths) {
            out.push_str(&format!(" | {name:>width$}"));
        }
        out.push('\n');
        for (m, method) in self.methods.iter().enumerate() {
            out.push_str(&format!("{method:<method_width$}"));
            for (d, width) in col_widths.iter().enumerate() {
                out.push_str(&format!(" | {:>width$}", rendered[m][d]));
            }
            out.push('\n');
        }
        out
    }

    /// Machine-readable form: one object per cell.
    pub fn cells_flat(&self) -> Vec<BenchmarkCell<S>>
    where
        S: Clone,
    {
        let mut out = Vec::new();
        for (m, method) in self.methods.iter().enumerate() {
            for (d, dataset) in self.datasets.iter().enumerate() {
                out.push(BenchmarkCell {
                    method: method.clone(),
                    dataset: dataset.clone(),
                    report: self.cells[m][d].clone(),
                });
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evaluation::dataset::ValidationItem;
    use crate::evaluation::ConfusionCounts;
    use crate::Sdg;
    use std::collections::BTreeSet;

    fn sdg(n: u8) -> Sdg {
        Sdg::new(n).unwrap()
    }

    fn dataset(name: &str, items: Vec<(&str, Vec<u8>)>) -> ValidationDataset {
        ValidationDataset::new(
            name,
            items
                .into_iter()
                .map(|(id, gold)| ValidationItem {
                    id: id.to_string(),
                    gold: gold.into_iter().map(sdg).collect(),
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn perfect_method_renders_hundreds() {
        let ds = dataset("gold", vec![("a", vec![1]), ("b", vec![2])]);
        let mut mapping = SdgMapping::new();
        mapping.add_query_hit("a", sdg(1), "T");
        mapping.add_query_hit("b", sdg(2), "T");
        let matrix: BenchmarkMatrix<f64> =
            benchmark(&[("perfect".to_string(), mapping)], &[ds]);
        assert_eq!(matrix.cell(0, 0).percent_cell(), "100/100");
    }

    #[test]
    fn method_empty_on_one_dataset_scores_zero_there() {
        let ds_a = dataset("a", vec![("x", vec![1])]);
        let ds_b = dataset("b", vec![("y", vec![2])]);
        let mut mapping = SdgMapping::new();
        mapping.add_query_hit("x", sdg(1), "T");
        let matrix: BenchmarkMatrix<f64> =
            benchmark(&[("m".to_string(), mapping)], &[ds_a, ds_b]);
        assert_eq!(matrix.cell(0, 0).percent_cell(), "100/100");
        assert_eq!(matrix.cell(0, 1).percent_cell(), "0/0");
    }

    #[test]
    fn macro_average_spans_only_gold_supported_classes() {
        // dataset covers SDGs 1 and 2 only; a spurious SDG-9 prediction
        // must not drag a third class into the macro average
        let ds = dataset("narrow", vec![("x", vec![1]), ("y", vec![2])]);
        let mut mapping = SdgMapping::new();
        mapping.add_query_hit("x", sdg(1), "T");
        mapping.add_query_hit("y", sdg(2), "T");
        mapping.add_query_hit("x", sdg(9), "T");
        let matrix: BenchmarkMatrix<f64> = benchmark(&[("m".to_string(), mapping)], &[ds]);
        let cell = matrix.cell(0, 0);
        assert_eq!(cell.classes_evaluated.len(), 2);
        assert_eq!(cell.macro_f1, 1.0);
    }

    #[test]
    fn cells_equal_an_independent_recomputation() {
        let ds = dataset(
            "d",
            vec![("a", vec![1]), ("b", vec![1, 2]), ("c", vec![2])],
        );
        let mut mapping = SdgMapping::new();
        mapping.add_query_hit("a", sdg(1), "T");
        mapping.add_query_hit("b", sdg(2), "T");
        mapping.add_query_hit("c", sdg(1), "T");
        let matrix: BenchmarkMatrix<f64> =
            benchmark(&[("m".to_string(), mapping.clone())], &[ds.clone()]);

        // straight-line recount, no shared code path
        let mut per_class = std::collections::BTreeMap::new();
        for class in [sdg(1), sdg(2)] {
            let mut c = ConfusionCounts::default();
            for item in &ds.items {
                let predicted = mapping.sdgs_of(&item.id).contains(&class);
                let in_gold = item.gold.contains(&class);
                if predicted && in_gold {
                    c.tp += 1;
                } else if predicted {
                    c.fp += 1;
                } else if in_gold {
                    c.false_neg += 1;
                }
            }
            per_class.insert(class, c);
        }
        let expected: MetricsReport<f64> = f1_report(&per_class);
        assert_eq!(matrix.cell(0, 0), &expected);
    }

    #[test]
    fn text_rendering_is_aligned() {
        let ds = dataset("set", vec![("a", vec![1])]);
        let mut mapping = SdgMapping::new();
        mapping.add_query_hit("a", sdg(1), "T");
        let matrix: BenchmarkMatrix<f64> =
            benchmark(&[("method-one".to_string(), mapping)], &[ds]);
        let text = matrix.render_text();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        assert!(lines[0].contains("set"));
        assert!(lines[1].starts_with("method-one"));
        assert!(lines[1].ends_with("100/100"));
    }
}

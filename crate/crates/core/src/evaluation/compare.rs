//! Side-by-side comparison of two mappings, per SDG.

use std::collections::BTreeSet;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::engine::SdgMapping;
use crate::Sdg;

/// Counts for one SDG: records mapped by each side and by both.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub sdg: Sdg,
    pub count_a: u64,
    pub count_b: u64,
    pub intersection: u64,
}

/// Compare two mappings over the same id space. SDGs empty on both sides
/// are omitted.
pub fn compare_mappings(a: &SdgMapping, b: &SdgMapping) -> Vec<ComparisonRow> {
    Sdg::all()
        .filter_map(|sdg| {
            let set_a: BTreeSet<&str> = a.records_with(sdg).into_iter().collect();
            let set_b: BTreeSet<&str> = b.records_with(sdg).into_iter().collect();
            if set_a.is_empty() && set_b.is_empty() {
                return None;
            }
            Some(ComparisonRow {
                sdg,
                count_a: set_a.len() as u64,
                count_b: set_b.len() as u64,
                intersection: set_a.intersection(&set_b).count() as u64,
            })
        })
        .collect()
}

impl ComparisonRow {
    fn render(&self) -> String {
        format!(
            "{} | {} | {} | {}",
            self.sdg, self.count_a, self.count_b, self.intersection
        )
    }
}

/// Three-column comparison table, one row per SDG.
pub fn render_comparison_text(rows: &[ComparisonRow], name_a: &str, name_b: &str) -> String {
    let mut out = format!("SDG | {name_a} | {name_b} | Intersection\n");
    for row in rows {
        out.push_str(&row.render());
        out.push('\n');
    }
    out
}

/// CSV export of the comparison table.
pub fn write_comparison_csv(
    rows: &[ComparisonRow],
    name_a: &str,
    name_b: &str,
    mut writer: impl Write,
) -> std::io::Result<()> {
    writeln!(writer, "sdg,{name_a},{name_b},intersection")?;
    for row in rows {
        writeln!(
            writer,
            "{},{},{},{}",
            row.sdg, row.count_a, row.count_b, row.intersection
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sdg(n: u8) -> Sdg {
        Sdg::new(n).unwrap()
    }

    #[test]
    fn identical_mappings_intersect_fully() {
        let mut m = SdgMapping::new();
        m.add_query_hit("d1", sdg(1), "T");
        m.add_query_hit("d2", sdg(1), "T");
        m.add_query_hit("d2", sdg(3), "T");
        let rows = compare_mappings(&m, &m);
        assert_eq!(rows.len(), 2);
        for row in rows {
            assert_eq!(row.count_a, row.count_b);
            assert_eq!(row.intersection, row.count_a);
        }
    }

    #[test]
    fn partial_overlap_counts_the_shared_records() {
        let mut a = SdgMapping::new();
        a.add_query_hit("d1", sdg(1), "T");
        a.add_query_hit("d2", sdg(1), "T");
        let mut b = SdgMapping::new();
        b.add_query_hit("d2", sdg(1), "T");
        b.add_query_hit("d3", sdg(1), "T");
        let rows = compare_mappings(&a, &b);
        assert_eq!(rows.len(), 1);
        assert_eq!(
            rows[0],
            ComparisonRow {
                sdg: sdg(1),
                count_a: 2,
                count_b: 2,
                intersection: 1
            }
        );
    }

    #[test]
    fn row_renders_in_pipe_separated_layout() {
        let row = ComparisonRow {
            sdg: sdg(1),
            count_a: 522,
            count_b: 229,
            intersection: 125,
        };
        assert_eq!(row.render(), "1 | 522 | 229 | 125");
    }

    #[test]
    fn intersection_never_exceeds_either_count() {
        let mut a = SdgMapping::new();
        let mut b = SdgMapping::new();
        for i in 0..20 {
            if i % 2 == 0 {
                a.add_query_hit(&format!("d{i}"), sdg(5), "T");
            }
            if i % 3 == 0 {
                b.add_query_hit(&format!("d{i}"), sdg(5), "T");
            }
        }
        for row in compare_mappings(&a, &b) {
            assert!(row.intersection <= row.count_a.min(row.count_b));
        }
    }
}

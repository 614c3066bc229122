//! Query banks: the theme-level queries of each SDG.
//!
//! Bank files are UTF-8 text. A header line `# SDG <n> <theme-label>`
//! opens an entry; every following line up to the next header belongs to
//! that entry's query (so queries may wrap across lines). Blank lines are
//! ignored. A directory of banks is read as its `*.txt` files in name
//! order, one or more entries per file.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use thiserror::Error;

use crate::{Sdg, SdgRangeError};

use super::ast::QueryAst;
use super::parser::{parse, ParseError};

/// One theme-level query.
#[derive(Debug, Clone, PartialEq)]
pub struct BankEntry {
    pub sdg: Sdg,
    pub theme: String,
    pub query: QueryAst,
}

/// All theme queries, in file order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct QueryBank {
    pub entries: Vec<BankEntry>,
}

#[derive(Debug, Error)]
pub enum BankError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{origin}:{line}: malformed header, expected `# SDG <n> <theme-label>`")]
    Header { origin: String, line: usize },
    #[error("{origin}:{line}: {source}")]
    SdgRange {
        origin: String,
        line: usize,
        #[source]
        source: SdgRangeError,
    },
    #[error("{origin}: header for SDG {sdg} theme {theme} has no query")]
    MissingQuery {
        origin: String,
        sdg: Sdg,
        theme: String,
    },
    #[error("{origin}: duplicate theme {theme} for SDG {sdg}")]
    DuplicateTheme {
        origin: String,
        sdg: Sdg,
        theme: String,
    },
    #[error("{origin}: query for SDG {sdg} theme {theme}: {source}")]
    Query {
        origin: String,
        sdg: Sdg,
        theme: String,
        #[source]
        source: ParseError,
    },
    #[error("{origin}:{line}: query text before any header")]
    TextBeforeHeader { origin: String, line: usize },
}

impl QueryBank {
    /// Parse one bank file's content. `origin` names the source in errors.
    pub fn parse_str(text: &str, origin: &str) -> Result<Self, BankError> {
        let mut entries = Vec::new();
        let mut current: Option<(Sdg, String, String)> = None;

        let mut flush =
            |current: &mut Option<(Sdg, String, String)>| -> Result<(), BankError> {
                if let Some((sdg, theme, text)) = current.take() {
                    if text.trim().is_empty() {
                        return Err(BankError::MissingQuery {
                            origin: origin.to_string(),
                            sdg,
                            theme,
                        });
                    }
                    let query = parse(&text).map_err(|source| BankError::Query {
                        origin: origin.to_string(),
                        sdg,
                        theme: theme.clone(),
                        source,
                    })?;
                    entries.push(BankEntry { sdg, theme, query });
                }
                Ok(())
            };

        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() {
                continue;
            }
            if let Some(rest) = trimmed.strip_prefix('#') {
                flush(&mut current)?;
                let rest = rest.trim_start();
                let rest = rest
                    .strip_prefix("SDG")
                    .ok_or_else(|| BankError::Header {
                        origin: origin.to_string(),
                        line: line_no,
                    })?
                    .trim_start();
                let (number, label) =
                    rest.split_once(char::is_whitespace)
                        .ok_or_else(|| BankError::Header {
                            origin: origin.to_string(),
                            line: line_no,
                        })?;
                let id: u8 = number.parse().map_err(|_| BankError::Header {
                    origin: origin.to_string(),
                    line: line_no,
                })?;
                let sdg = Sdg::new(id).map_err(|source| BankError::SdgRange {
                    origin: origin.to_string(),
                    line: line_no,
                    source,
                })?;
                let theme = label.trim().to_string();
                if theme.is_empty() {
                    return Err(BankError::Header {
                        origin: origin.to_string(),
                        line: line_no,
                    });
                }
                current = Some((sdg, theme, String::new()));
            } else {
                match current.as_mut() {
                    Some((_, _, text)) => {
                        if !text.is_empty() {
                            text.push(' ');
                        }
                        text.push_str(trimmed);
                    }
                    None => {
                        return Err(BankError::TextBeforeHeader {
                            origin: origin.to_string(),
                            line: line_no,
                        })
                    }
                }
            }
        }
        flush(&mut current)?;

        let bank = QueryBank { entries };
        bank.check_unique_themes(origin)?;
        Ok(bank)
    }

    /// Load a bank from a single file or from every `*.txt` file of a
    /// directory, in file-name order.
    pub fn load(path: impl AsRef<Path>) -> Result<Self, BankError> {
        let path = path.as_ref();
        let io_err = |source| BankError::Io {
            path: path.display().to_string(),
            source,
        };
        let mut entries = Vec::new();
        if path.is_dir() {
            let mut files: Vec<_> = fs::read_dir(path)
                .map_err(io_err)?
                .collect::<Result<Vec<_>, _>>()
                .map_err(io_err)?
                .into_iter()
                .map(|e| e.path())
                .filter(|p| p.extension().is_some_and(|ext| ext == "txt"))
                .collect();
            files.sort();
            for file in files {
                let text = fs::read_to_string(&file).map_err(|source| BankError::Io {
                    path: file.display().to_string(),
                    source,
                })?;
                let bank = QueryBank::parse_str(&text, &file.display().to_string())?;
                entries.extend(bank.entries);
            }
        } else {
            let text = fs::read_to_string(path).map_err(io_err)?;
            entries = QueryBank::parse_str(&text, &path.display().to_string())?.entries;
        }
        let bank = QueryBank { entries };
        bank.check_unique_themes(&path.display().to_string())?;
        Ok(bank)
    }

    fn check_unique_themes(&self, origin: &str) -> Result<(), BankError> {
        let mut seen = BTreeSet::new();
        for entry in &self.entries {
            if !seen.insert((entry.sdg, entry.theme.clone())) {
                return Err(BankError::DuplicateTheme {
                    origin: origin.to_string(),
                    sdg: entry.sdg,
                    theme: entry.theme.clone(),
                });
            }
        }
        Ok(())
    }

    /// Distinct SDGs covered by the bank.
    pub fn sdgs(&self) -> BTreeSet<Sdg> {
        self.entries.iter().map(|e| e.sdg).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
# SDG 1 SDG1-Main
TITLE-ABS-KEY(\"poverty alleviat*\")

# SDG 1 SDG1-Theme2
TITLE-ABS-KEY(\"microfinance\" OR
  (\"access\" W/3 \"property\"))

# SDG 14 SDG14-Main
TITLE-ABS-KEY(\"marine\" AND \"pollut*\") AND NOT SUBJAREA(27)
";

    #[test]
    fn multi_line_queries_parse_per_header() {
        let bank = QueryBank::parse_str(SAMPLE, "sample").unwrap();
        assert_eq!(bank.entries.len(), 3);
        assert_eq!(bank.entries[0].sdg.get(), 1);
        assert_eq!(bank.entries[0].theme, "SDG1-Main");
        assert_eq!(bank.entries[1].theme, "SDG1-Theme2");
        assert_eq!(bank.entries[2].sdg.get(), 14);
        assert_eq!(
            bank.sdgs()
                .into_iter()
                .map(Sdg::get)
                .collect::<Vec<_>>(),
            [1, 14]
        );
    }

    #[test]
    fn duplicate_theme_is_rejected() {
        let text = "# SDG 1 A\nTITLE(\"x\")\n# SDG 1 A\nTITLE(\"y\")\n";
        assert!(matches!(
            QueryBank::parse_str(text, "t").unwrap_err(),
            BankError::DuplicateTheme { .. }
        ));
    }

    #[test]
    fn same_theme_label_on_distinct_sdgs_is_fine() {
        let text = "# SDG 1 Main\nTITLE(\"x\")\n# SDG 2 Main\nTITLE(\"y\")\n";
        assert_eq!(QueryBank::parse_str(text, "t").unwrap().entries.len(), 2);
    }

    #[test]
    fn header_without_query_is_rejected() {
        let text = "# SDG 1 A\n# SDG 2 B\nTITLE(\"x\")\n";
        assert!(matches!(
            QueryBank::parse_str(text, "t").unwrap_err(),
            BankError::MissingQuery { .. }
        ));
    }

    #[test]
    fn out_of_range_sdg_is_rejected() {
        let text = "# SDG 18 A\nTITLE(\"x\")\n";
        assert!(matches!(
            QueryBank::parse_str(text, "t").unwrap_err(),
            BankError::SdgRange { .. }
        ));
    }

    #[test]
    fn empty_text_gives_empty_bank() {
        let bank = QueryBank::parse_str("", "t").unwrap();
        assert!(bank.entries.is_empty());
    }
}

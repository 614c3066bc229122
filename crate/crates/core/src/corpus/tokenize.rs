//! Text normalization shared by the whole system.
//!
//! One tokenizer serves indexing, the naive matcher, TF-IDF featurization
//! and term suggestion, so a token mined from matched records can be pasted
//! into a query and match identically.

use serde::{Deserialize, Serialize};
use unicode_normalization::UnicodeNormalization;

use super::PublicationRecord;

/// Text field of a publication record that queries can match against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Field {
    Title,
    Abstract,
    Keywords,
}

impl Field {
    pub const ALL: [Field; 3] = [Field::Title, Field::Abstract, Field::Keywords];
}

/// One token with its 0-based position inside a field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub text: String,
    pub pos: u32,
}

/// Position-annotated tokens of one field of one record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TokenStream {
    pub field: Field,
    pub tokens: Vec<Token>,
}

/// Positional distance between the last token of one author-keyword entry
/// and the first token of the next.
///
/// Phrases need step-1 positions and `W/1` tolerates distance 1, so a
/// distance of 2 keeps both from crossing an entry boundary.
pub const KEYWORD_ENTRY_GAP: u32 = 2;

/// Lowercase, compatibility-fold (NFKC) and split on every non-alphanumeric
/// character; empty tokens are dropped.
///
/// There is no stemming: wildcard truncation in queries is the only
/// morphological device the system supports.
pub fn normalize(text: &str) -> Vec<String> {
    let folded: String = text.nfkc().flat_map(char::to_lowercase).collect();
    folded
        .split(|c: char| !c.is_alphanumeric())
        .filter(|t| !t.is_empty())
        .map(str::to_owned)
        .collect()
}

/// Tokenize one text into a stream with consecutive positions from 0.
pub fn normalize_text(text: &str, field: Field) -> TokenStream {
    let tokens = normalize(text)
        .into_iter()
        .enumerate()
        .map(|(i, text)| Token {
            text,
            pos: i as u32,
        })
        .collect();
    TokenStream { field, tokens }
}

/// Tokenize author-keyword entries into one stream, leaving
/// [`KEYWORD_ENTRY_GAP`] between the position ranges of consecutive entries.
pub fn keyword_stream(entries: &[String]) -> TokenStream {
    let mut tokens = Vec::new();
    let mut next = 0u32;
    for entry in entries {
        let entry_tokens = normalize(entry);
        if entry_tokens.is_empty() {
            continue;
        }
        if !tokens.is_empty() {
            next += KEYWORD_ENTRY_GAP - 1;
        }
        for text in entry_tokens {
            tokens.push(Token { text, pos: next });
            next += 1;
        }
    }
    TokenStream {
        field: Field::Keywords,
        tokens,
    }
}

/// Token streams for the three query-matchable fields of a record.
pub fn record_streams(record: &PublicationRecord) -> [TokenStream; 3] {
    [
        normalize_text(&record.title, Field::Title),
        normalize_text(&record.abstract_text, Field::Abstract),
        keyword_stream(&record.author_keywords),
    ]
}

/// Lowercase a journal name and collapse runs of whitespace.
pub fn normalize_journal(name: &str) -> String {
    name.split_whitespace()
        .map(str::to_lowercase)
        .collect::<Vec<_>>()
        .join(" ")
}

//! Recursive-descent parser for the query language.
//!
//! Grammar (EBNF):
//!
//! ```text
//! query     := or
//! or        := and {OR and}
//! and       := unary {AND [NOT] unary}
//! unary     := scope | filter | "(" query ")"
//! scope     := FIELDFN "(" scopebody ")"
//! scopebody := termexpr {(AND | OR | W/n | PRE/n) termexpr}
//! termexpr  := QUOTEDPATTERN | "(" scopebody ")"
//! filter    := SUBJAREA "(" codelist ")" | SRCTITLE "(" QUOTEDPATTERN ")"
//! ```
//!
//! Inside a scope body, proximity binds tighter than `AND`, which binds
//! tighter than `OR`; at the top level `AND NOT` negates the unary that
//! follows it. Parentheses override everything.

use thiserror::Error;

use crate::corpus::normalize;

use super::ast::{QueryAst, ScopeFields, SubjectMode, TermPattern};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: found {found}, expected {}", expected.join(" | "))]
    Syntax {
        offset: usize,
        found: String,
        expected: Vec<&'static str>,
    },
    #[error("unterminated quoted pattern starting at byte {offset}")]
    UnterminatedQuote { offset: usize },
    #[error("unexpected character {ch:?} at byte {offset}")]
    UnexpectedChar { ch: char, offset: usize },
    #[error("wildcard `*` may only end the final token of a pattern (byte {offset})")]
    WildcardPosition { offset: usize },
    #[error("term pattern at byte {offset} has no tokens")]
    EmptyPattern { offset: usize },
    #[error("proximity operand at byte {offset} must be a single quoted pattern")]
    ProximityOperand { offset: usize },
    #[error("unsupported field function {name} at byte {offset}")]
    UnsupportedFunction { name: String, offset: usize },
    #[error("subject code {code} at byte {offset} is not a 2-digit prefix or a 4-digit code")]
    SubjectCode { code: u64, offset: usize },
    #[error("proximity distance at byte {offset} does not fit in 32 bits")]
    DistanceOverflow { offset: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum TokKind {
    LParen,
    RParen,
    Comma,
    Quoted(String),
    /// Keyword or field-function name, uppercased.
    Word(String),
    Int(u64),
    /// `W/n` or `PRE/n`.
    Prox { ordered: bool, distance: u32 },
}

#[derive(Debug, Clone)]
struct Tok {
    kind: TokKind,
    offset: usize,
}

impl TokKind {
    fn describe(&self) -> String {
        match self {
            TokKind::LParen => "`(`".to_string(),
            TokKind::RParen => "`)`".to_string(),
            TokKind::Comma => "`,`".to_string(),
            TokKind::Quoted(_) => "quoted pattern".to_string(),
            TokKind::Word(w) => format!("`{w}`"),
            TokKind::Int(n) => format!("`{n}`"),
            TokKind::Prox {
                ordered, distance, ..
            } => format!("`{}/{distance}`", if *ordered { "PRE" } else { "W" }),
        }
    }
}

fn lex(source: &str) -> Result<Vec<Tok>, ParseError> {
    let mut toks = Vec::new();
    let bytes = source.as_bytes();
    let mut chars = source.char_indices().peekable();
    while let Some(&(offset, ch)) = chars.peek() {
        match ch {
            c if c.is_whitespace() => {
                chars.next();
            }
            '(' => {
                chars.next();
                toks.push(Tok {
                    kind: TokKind::LParen,
                    offset,
                });
            }
            ')' => {
                chars.next();
                toks.push(Tok {
                    kind: TokKind::RParen,
                    offset,
                });
            }
            ',' => {
                chars.next();
                toks.push(Tok {
                    kind: TokKind::Comma,
                    offset,
                });
            }
            '"' => {
                chars.next();
                let start = offset + 1;
                let mut end = None;
                for (i, c) in chars.by_ref() {
                    if c == '"' {
                        end = Some(i);
                        break;
                    }
                }
                let end = end.ok_or(ParseError::UnterminatedQuote { offset })?;
                toks.push(Tok {
                    kind: TokKind::Quoted(source[start..end].to_string()),
                    offset,
                });
            }
            c if c.is_ascii_digit() => {
                let mut value: u64 = 0;
                while let Some(&(_, c)) = chars.peek() {
                    if let Some(d) = c.to_digit(10) {
                        value = value.saturating_mul(10).saturating_add(d as u64);
                        chars.next();
                    } else {
                        break;
                    }
                }
                toks.push(Tok {
                    kind: TokKind::Int(value),
                    offset,
                });
            }
            c if c.is_alphabetic() => {
                let mut word = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if c.is_alphanumeric() || c == '-' || c == '_' {
                        word.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                let upper = word.to_uppercase();
                let slash_follows = matches!(chars.peek(), Some(&(_, '/')));
                if slash_follows && (upper == "W" || upper == "PRE") {
                    chars.next(); // `/`
                    let digits_at = chars.peek().map(|&(i, _)| i);
                    let mut distance: u64 = 0;
                    let mut saw_digit = false;
                    while let Some(&(_, c)) = chars.peek() {
                        if let Some(d) = c.to_digit(10) {
                            distance = distance.saturating_mul(10).saturating_add(d as u64);
                            saw_digit = true;
                            chars.next();
                        } else {
                            break;
                        }
                    }
                    if !saw_digit {
                        let at = digits_at.unwrap_or(bytes.len());
                        return Err(ParseError::Syntax {
                            offset: at,
                            found: "non-digit".to_string(),
                            expected: vec!["proximity distance"],
                        });
                    }
                    let distance =
                        u32::try_from(distance).map_err(|_| ParseError::DistanceOverflow {
                            offset: digits_at.unwrap_or(offset),
                        })?;
                    toks.push(Tok {
                        kind: TokKind::Prox {
                            ordered: upper == "PRE",
                            distance,
                        },
                        offset,
                    });
                } else {
                    toks.push(Tok {
                        kind: TokKind::Word(upper),
                        offset,
                    });
                }
            }
            other => return Err(ParseError::UnexpectedChar { ch: other, offset }),
        }
    }
    Ok(toks)
}

/// Turn the raw content of a quoted pattern into a [`TermPattern`] using the
/// system tokenizer. `offset` is the byte offset of the opening quote.
fn term_pattern(raw: &str, offset: usize) -> Result<TermPattern, ParseError> {
    if let Some(star) = raw.find('*') {
        if star + 1 != raw.len() {
            return Err(ParseError::WildcardPosition {
                offset: offset + 1 + star,
            });
        }
    }
    let prefix = raw.ends_with('*');
    let body = raw.strip_suffix('*').unwrap_or(raw);
    let tokens = normalize(body);
    if tokens.is_empty() {
        return Err(ParseError::EmptyPattern { offset });
    }
    Ok(TermPattern { tokens, prefix })
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
    len: usize,
}

const UNARY_EXPECTED: &[&str] = &[
    "`(`",
    "TITLE",
    "ABS",
    "KEY",
    "TITLE-ABS-KEY",
    "SUBJAREA",
    "SRCTITLE",
];

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next_offset(&self) -> usize {
        self.peek().map_or(self.len, |t| t.offset)
    }

    fn advance(&mut self) -> Option<Tok> {
        let tok = self.toks.get(self.pos).cloned();
        if tok.is_some() {
            self.pos += 1;
        }
        tok
    }

    fn found(&self) -> String {
        self.peek()
            .map_or("end of input".to_string(), |t| t.kind.describe())
    }

    fn syntax_error(&self, expected: &[&'static str]) -> ParseError {
        ParseError::Syntax {
            offset: self.next_offset(),
            found: self.found(),
            expected: expected.to_vec(),
        }
    }

    fn eat_word(&mut self, word: &str) -> bool {
        if matches!(self.peek(), Some(Tok { kind: TokKind::Word(w), .. }) if w == word) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_lparen(&mut self) -> Result<(), ParseError> {
        match self.peek().map(|t| &t.kind) {
            Some(TokKind::LParen) => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.syntax_error(&["`(`"])),
        }
    }

    fn expect_rparen(&mut self) -> Result<(), ParseError> {
        match self.peek().map(|t| &t.kind) {
            Some(TokKind::RParen) => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.syntax_error(&["`)`"])),
        }
    }

    fn parse_or(&mut self) -> Result<QueryAst, ParseError> {
        let mut children = vec![self.parse_and()?];
        while self.eat_word("OR") {
            children.push(self.parse_and()?);
        }
        Ok(collapse(children, QueryAst::Or))
    }

    fn parse_and(&mut self) -> Result<QueryAst, ParseError> {
        let mut children = vec![self.parse_unary()?];
        while self.eat_word("AND") {
            if self.eat_word("NOT") {
                let right = self.parse_unary()?;
                let left = collapse(children, QueryAst::And);
                children = vec![QueryAst::AndNot(Box::new(left), Box::new(right))];
            } else {
                children.push(self.parse_unary()?);
            }
        }
        Ok(collapse(children, QueryAst::And))
    }

    fn parse_unary(&mut self) -> Result<QueryAst, ParseError> {
        match self.peek().map(|t| t.kind.clone()) {
            Some(TokKind::LParen) => {
                self.pos += 1;
                let inner = self.parse_or()?;
                self.expect_rparen()?;
                Ok(inner)
            }
            Some(TokKind::Word(word)) => {
                let offset = self.next_offset();
                let scope = match word.as_str() {
                    "TITLE" => Some(ScopeFields::Title),
                    "ABS" => Some(ScopeFields::Abstract),
                    "KEY" => Some(ScopeFields::Keywords),
                    "TITLE-ABS-KEY" => Some(ScopeFields::TitleAbsKey),
                    _ => None,
                };
                if let Some(fields) = scope {
                    self.pos += 1;
                    self.expect_lparen()?;
                    let body = self.parse_scope_or()?;
                    self.expect_rparen()?;
                    return Ok(QueryAst::Scope(fields, Box::new(body)));
                }
                match word.as_str() {
                    "SUBJAREA" => {
                        self.pos += 1;
                        self.expect_lparen()?;
                        let codes = self.parse_codelist()?;
                        self.expect_rparen()?;
                        Ok(QueryAst::Subject {
                            codes,
                            mode: SubjectMode::Include,
                        })
                    }
                    "SRCTITLE" => {
                        self.pos += 1;
                        self.expect_lparen()?;
                        let pattern = self.parse_quoted_pattern()?;
                        self.expect_rparen()?;
                        Ok(QueryAst::Source(pattern))
                    }
                    _ => {
                        // an identifier followed by `(` is a field function
                        // this dialect does not support
                        if matches!(
                            self.toks.get(self.pos + 1).map(|t| &t.kind),
                            Some(TokKind::LParen)
                        ) {
                            Err(ParseError::UnsupportedFunction { name: word, offset })
                        } else {
                            Err(self.syntax_error(UNARY_EXPECTED))
                        }
                    }
                }
            }
            _ => Err(self.syntax_error(UNARY_EXPECTED)),
        }
    }

    fn parse_codelist(&mut self) -> Result<std::collections::BTreeSet<u16>, ParseError> {
        let mut codes = std::collections::BTreeSet::new();
        loop {
            match self.peek().map(|t| t.kind.clone()) {
                Some(TokKind::Int(value)) => {
                    let offset = self.next_offset();
                    self.pos += 1;
                    let valid = (10..=99).contains(&value) || (1000..=9999).contains(&value);
                    if !valid {
                        return Err(ParseError::SubjectCode {
                            code: value,
                            offset,
                        });
                    }
                    codes.insert(value as u16);
                }
                _ => return Err(self.syntax_error(&["subject code"])),
            }
            match self.peek().map(|t| &t.kind) {
                Some(TokKind::Comma) => {
                    self.pos += 1;
                }
                _ => break,
            }
        }
        Ok(codes)
    }

    fn parse_quoted_pattern(&mut self) -> Result<TermPattern, ParseError> {
        match self.advance() {
            Some(Tok {
                kind: TokKind::Quoted(raw),
                offset,
            }) => term_pattern(&raw, offset),
            Some(tok) => Err(ParseError::Syntax {
                offset: tok.offset,
                found: tok.kind.describe(),
                expected: vec!["quoted pattern"],
            }),
            None => Err(self.syntax_error(&["quoted pattern"])),
        }
    }

    fn parse_scope_or(&mut self) -> Result<QueryAst, ParseError> {
        let mut children = vec![self.parse_scope_and()?];
        while self.eat_word("OR") {
            children.push(self.parse_scope_and()?);
        }
        Ok(collapse(children, QueryAst::Or))
    }

    fn parse_scope_and(&mut self) -> Result<QueryAst, ParseError> {
        let mut children = vec![self.parse_scope_prox()?];
        while self.eat_word("AND") {
            children.push(self.parse_scope_prox()?);
        }
        Ok(collapse(children, QueryAst::And))
    }

    fn parse_scope_prox(&mut self) -> Result<QueryAst, ParseError> {
        let left_offset = self.next_offset();
        let left = self.parse_scope_atom()?;
        if let Some(TokKind::Prox { ordered, distance }) = self.peek().map(|t| t.kind.clone()) {
            self.pos += 1;
            let right_offset = self.next_offset();
            let right = self.parse_scope_atom()?;
            let left = as_pattern(left).ok_or(ParseError::ProximityOperand {
                offset: left_offset,
            })?;
            let right = as_pattern(right).ok_or(ParseError::ProximityOperand {
                offset: right_offset,
            })?;
            return Ok(QueryAst::Proximity {
                left,
                right,
                distance,
                ordered,
            });
        }
        Ok(left)
    }

    fn parse_scope_atom(&mut self) -> Result<QueryAst, ParseError> {
        match self.peek().map(|t| t.kind.clone()) {
            Some(TokKind::Quoted(raw)) => {
                let offset = self.next_offset();
                self.pos += 1;
                Ok(QueryAst::Term(term_pattern(&raw, offset)?))
            }
            Some(TokKind::LParen) => {
                self.pos += 1;
                let inner = self.parse_scope_or()?;
                self.expect_rparen()?;
                Ok(inner)
            }
            _ => Err(self.syntax_error(&["quoted pattern", "`(`"])),
        }
    }
}

fn collapse(mut children: Vec<QueryAst>, combine: fn(Vec<QueryAst>) -> QueryAst) -> QueryAst {
    if children.len() == 1 {
        children.pop().expect("nonempty")
    } else {
        combine(children)
    }
}

fn as_pattern(ast: QueryAst) -> Option<TermPattern> {
    match ast {
        QueryAst::Term(p) => Some(p),
        _ => None,
    }
}

/// Parse query text into an AST.
pub fn parse(source: &str) -> Result<QueryAst, ParseError> {
    let toks = lex(source)?;
    let mut parser = Parser {
        toks,
        pos: 0,
        len: source.len(),
    };
    let ast = parser.parse_or()?;
    if parser.peek().is_some() {
        return Err(parser.syntax_error(&["end of input", "AND", "OR"]));
    }
    Ok(ast)
}

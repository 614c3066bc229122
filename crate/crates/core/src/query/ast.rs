//! Expression tree of the query language.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::corpus::Field;

/// One or more normalized tokens matched as a phrase at consecutive
/// positions within a single field; a trailing `*` on the final token makes
/// it a prefix match.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermPattern {
    pub tokens: Vec<String>,
    pub prefix: bool,
}

impl TermPattern {
    pub fn new(tokens: Vec<String>, prefix: bool) -> Self {
        TermPattern { tokens, prefix }
    }

    /// Single-token exact pattern.
    pub fn word(token: impl Into<String>) -> Self {
        TermPattern {
            tokens: vec![token.into()],
            prefix: false,
        }
    }
}

impl fmt::Display for TermPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{}", self.tokens.join(" "))?;
        if self.prefix {
            write!(f, "*")?;
        }
        write!(f, "\"")
    }
}

/// Field combination of a scope function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScopeFields {
    Title,
    Abstract,
    Keywords,
    TitleAbsKey,
}

impl ScopeFields {
    pub fn fields(self) -> &'static [Field] {
        match self {
            ScopeFields::Title => &[Field::Title],
            ScopeFields::Abstract => &[Field::Abstract],
            ScopeFields::Keywords => &[Field::Keywords],
            ScopeFields::TitleAbsKey => &Field::ALL,
        }
    }

    pub fn contains(self, field: Field) -> bool {
        self.fields().contains(&field)
    }

    pub fn function_name(self) -> &'static str {
        match self {
            ScopeFields::Title => "TITLE",
            ScopeFields::Abstract => "ABS",
            ScopeFields::Keywords => "KEY",
            ScopeFields::TitleAbsKey => "TITLE-ABS-KEY",
        }
    }
}

/// Whether a subject filter keeps or drops records carrying the codes.
///
/// The query syntax only produces `Include` (exclusion is written
/// `AND NOT SUBJAREA(...)`); `Exclude` is reachable programmatically.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubjectMode {
    Include,
    Exclude,
}

/// Parsed query expression.
#[derive(Debug, Clone, PartialEq)]
pub enum QueryAst {
    /// Phrase/prefix pattern; only valid inside a scope.
    Term(TermPattern),
    /// Restricts term and proximity matching beneath it to a field set.
    Scope(ScopeFields, Box<QueryAst>),
    And(Vec<QueryAst>),
    Or(Vec<QueryAst>),
    AndNot(Box<QueryAst>, Box<QueryAst>),
    /// Two term patterns within `distance` token positions of one field;
    /// `ordered` additionally requires the left pattern to start first.
    Proximity {
        left: TermPattern,
        right: TermPattern,
        distance: u32,
        ordered: bool,
    },
    /// Keep (or drop) records carrying any of the subject codes; codes are
    /// 4-digit ASJC codes or 2-digit top-level prefixes.
    Subject {
        codes: BTreeSet<u16>,
        mode: SubjectMode,
    },
    /// Pattern over the normalized journal name.
    Source(TermPattern),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AstError {
    #[error("term pattern has no tokens")]
    EmptyPattern,
    #[error("term pattern token contains `*` away from the final position")]
    WildcardInToken,
    #[error("{0} node needs at least two children")]
    Arity(&'static str),
    #[error("term or proximity node outside any field scope")]
    UnscopedTerm,
    #[error("node not allowed inside a field scope")]
    BadScopeBody,
    #[error("nested field scope")]
    NestedScope,
    #[error("subject filter has no codes")]
    EmptySubject,
    #[error("subject code {0} is not a 2-digit prefix or a 4-digit code")]
    SubjectCode(u16),
}

impl QueryAst {
    /// Check the structural invariants the parser guarantees; programmatic
    /// ASTs should be validated before use.
    pub fn validate(&self) -> Result<(), AstError> {
        self.validate_node(false)
    }

    fn validate_node(&self, in_scope: bool) -> Result<(), AstError> {
        match self {
            QueryAst::Term(p) => {
                if !in_scope {
                    return Err(AstError::UnscopedTerm);
                }
                validate_pattern(p)
            }
            QueryAst::Proximity { left, right, .. } => {
                if !in_scope {
                    return Err(AstError::UnscopedTerm);
                }
                validate_pattern(left)?;
                validate_pattern(right)
            }
            QueryAst::Scope(_, body) => {
                if in_scope {
                    return Err(AstError::NestedScope);
                }
                body.validate_scope_body()?;
                body.validate_node(true)
            }
            QueryAst::And(children) | QueryAst::Or(children) => {
                let name = if matches!(self, QueryAst::And(_)) {
                    "And"
                } else {
                    "Or"
                };
                if children.len() < 2 {
                    return Err(AstError::Arity(name));
                }
                children.iter().try_for_each(|c| {
                    if in_scope {
                        c.validate_scope_body()?;
                    }
                    c.validate_node(in_scope)
                })
            }
            QueryAst::AndNot(left, right) => {
                if in_scope {
                    return Err(AstError::BadScopeBody);
                }
                left.validate_node(false)?;
                right.validate_node(false)
            }
            QueryAst::Subject { codes, .. } => {
                if in_scope {
                    return Err(AstError::BadScopeBody);
                }
                if codes.is_empty() {
                    return Err(AstError::EmptySubject);
                }
                for &code in codes {
                    if !(10..=99).contains(&code) && !(1000..=9999).contains(&code) {
                        return Err(AstError::SubjectCode(code));
                    }
                }
                Ok(())
            }
            QueryAst::Source(p) => {
                if in_scope {
                    return Err(AstError::BadScopeBody);
                }
                validate_pattern(p)
            }
        }
    }

    fn validate_scope_body(&self) -> Result<(), AstError> {
        match self {
            QueryAst::Term(_) | QueryAst::And(_) | QueryAst::Or(_) | QueryAst::Proximity { .. } => {
                Ok(())
            }
            _ => Err(AstError::BadScopeBody),
        }
    }
}

fn validate_pattern(pattern: &TermPattern) -> Result<(), AstError> {
    if pattern.tokens.is_empty() || pattern.tokens.iter().any(String::is_empty) {
        return Err(AstError::EmptyPattern);
    }
    if pattern.tokens.iter().any(|t| t.contains('*')) {
        return Err(AstError::WildcardInToken);
    }
    Ok(())
}

/// Render the canonical text form: fully parenthesized composites,
/// upper-case operators, double-quoted patterns, ascending subject codes.
///
/// `parse(render(ast))` reproduces the AST structurally.
pub fn render(ast: &QueryAst) -> String {
    let mut out = String::new();
    render_node(ast, &mut out, false);
    out
}

fn render_node(ast: &QueryAst, out: &mut String, scope_child: bool) {
    match ast {
        QueryAst::Term(p) => out.push_str(&p.to_string()),
        QueryAst::Scope(fields, body) => {
            out.push_str(fields.function_name());
            out.push('(');
            render_node(body, out, true);
            out.push(')');
        }
        QueryAst::And(children) => render_infix(children, "AND", out, scope_child),
        QueryAst::Or(children) => render_infix(children, "OR", out, scope_child),
        QueryAst::AndNot(left, right) => {
            out.push('(');
            render_node(left, out, false);
            out.push_str(" AND NOT ");
            render_node(right, out, false);
            out.push(')');
        }
        QueryAst::Proximity {
            left,
            right,
            distance,
            ordered,
        } => {
            if !scope_child {
                out.push('(');
            }
            let op = if *ordered { "PRE" } else { "W" };
            out.push_str(&format!("{left} {op}/{distance} {right}"));
            if !scope_child {
                out.push(')');
            }
        }
        QueryAst::Subject { codes, .. } => {
            out.push_str("SUBJAREA(");
            let rendered: Vec<String> = codes.iter().map(u16::to_string).collect();
            out.push_str(&rendered.join(", "));
            out.push(')');
        }
        QueryAst::Source(p) => {
            out.push_str("SRCTITLE(");
            out.push_str(&p.to_string());
            out.push(')');
        }
    }
}

fn render_infix(children: &[QueryAst], op: &str, out: &mut String, scope_child: bool) {
    if !scope_child {
        out.push('(');
    }
    for (i, child) in children.iter().enumerate() {
        if i > 0 {
            out.push(' ');
            out.push_str(op);
            out.push(' ');
        }
        render_node(child, out, false);
    }
    if !scope_child {
        out.push(')');
    }
}

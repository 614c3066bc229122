//! The SDG query language: a Scopus-style subset with field scopes,
//! Boolean connectives, proximity operators, subject-area and
//! source-title filters.

mod ast;
mod bank;
mod parser;

pub use ast::{render, AstError, QueryAst, ScopeFields, SubjectMode, TermPattern};
pub use bank::{BankEntry, BankError, QueryBank};
pub use parser::{parse, ParseError};

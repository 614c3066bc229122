//! Query evaluation: a naive per-record matcher that defines the matching
//! semantics, an inverted-index execution path that must agree with it
//! exactly, and the bank runner that aggregates theme hits into an
//! [`SdgMapping`].

mod mapping;

use std::collections::{BTreeMap, BTreeSet, HashSet};

use rayon::prelude::*;

use crate::corpus::{
    normalize, normalize_journal, record_streams, Corpus, Field, InvertedIndex, Posting,
    PublicationRecord, Token,
};
use crate::query::{QueryAst, QueryBank, ScopeFields, SubjectMode, TermPattern};

pub use mapping::{MappingError, Provenance, SdgMapping};

/// Evaluate a query against a single record.
///
/// This is the reference semantics; [`execute`] over an index must return
/// exactly the records for which this returns true. Term and proximity
/// nodes outside any scope match across all three fields (the parser always
/// produces scoped terms).
pub fn matches(ast: &QueryAst, record: &PublicationRecord) -> bool {
    let streams = record_streams(record);
    let journal = plain_tokens(&normalize(&normalize_journal(&record.journal_name)));
    eval(ast, record, &streams, &journal, None)
}

fn eval(
    ast: &QueryAst,
    record: &PublicationRecord,
    streams: &[crate::corpus::TokenStream; 3],
    journal: &[Token],
    scope: Option<ScopeFields>,
) -> bool {
    match ast {
        QueryAst::Term(pattern) => in_scope(streams, scope)
            .any(|tokens| !phrase_starts(tokens, pattern).is_empty()),
        QueryAst::Scope(fields, body) => eval(body, record, streams, journal, Some(*fields)),
        QueryAst::And(children) => children
            .iter()
            .all(|c| eval(c, record, streams, journal, scope)),
        QueryAst::Or(children) => children
            .iter()
            .any(|c| eval(c, record, streams, journal, scope)),
        QueryAst::AndNot(left, right) => {
            eval(left, record, streams, journal, scope)
                && !eval(right, record, streams, journal, scope)
        }
        QueryAst::Proximity {
            left,
            right,
            distance,
            ordered,
        } => in_scope(streams, scope)
            .any(|tokens| proximity_hit(tokens, left, right, *distance, *ordered)),
        QueryAst::Subject { codes, mode } => {
            let has = record
                .asjc_codes
                .iter()
                .any(|&code| subject_code_matches(codes, code));
            match mode {
                SubjectMode::Include => has,
                SubjectMode::Exclude => !has,
            }
        }
        QueryAst::Source(pattern) => !phrase_starts(journal, pattern).is_empty(),
    }
}

fn in_scope<'a>(
    streams: &'a [crate::corpus::TokenStream; 3],
    scope: Option<ScopeFields>,
) -> impl Iterator<Item = &'a [Token]> {
    streams
        .iter()
        .filter(move |s| scope.is_none_or(|sc| sc.contains(s.field)))
        .map(|s| s.tokens.as_slice())
}

fn plain_tokens(texts: &[String]) -> Vec<Token> {
    texts
        .iter()
        .enumerate()
        .map(|(i, text)| Token {
            text: text.clone(),
            pos: i as u32,
        })
        .collect()
}

fn token_matches(text: &str, pattern_token: &str, prefix: bool) -> bool {
    if prefix {
        text.starts_with(pattern_token)
    } else {
        text == pattern_token
    }
}

/// Positions where the whole pattern matches, each being the position of
/// its first token. Multi-token patterns need step-1 positions, so phrases
/// never span the author-keyword entry gap.
fn phrase_starts(tokens: &[Token], pattern: &TermPattern) -> Vec<u32> {
    let k = pattern.tokens.len();
    if k == 0 || tokens.len() < k {
        return Vec::new();
    }
    let mut starts = Vec::new();
    'candidate: for i in 0..=tokens.len() - k {
        let base = tokens[i].pos;
        for (j, pattern_token) in pattern.tokens.iter().enumerate() {
            let token = &tokens[i + j];
            if token.pos != base + j as u32 {
                continue 'candidate;
            }
            let prefix = pattern.prefix && j == k - 1;
            if !token_matches(&token.text, pattern_token, prefix) {
                continue 'candidate;
            }
        }
        starts.push(base);
    }
    starts
}

fn proximity_pair(pa: &[u32], pb: &[u32], distance: u32, ordered: bool) -> bool {
    pa.iter().any(|&x| {
        pb.iter().any(|&y| {
            if ordered {
                y > x && y - x <= distance
            } else {
                x.abs_diff(y) <= distance
            }
        })
    })
}

fn proximity_hit(
    tokens: &[Token],
    left: &TermPattern,
    right: &TermPattern,
    distance: u32,
    ordered: bool,
) -> bool {
    let pa = phrase_starts(tokens, left);
    if pa.is_empty() {
        return false;
    }
    let pb = phrase_starts(tokens, right);
    proximity_pair(&pa, &pb, distance, ordered)
}

fn subject_code_matches(codes: &BTreeSet<u16>, record_code: u16) -> bool {
    codes.iter().any(|&query_code| {
        if query_code < 100 {
            record_code / 100 == query_code
        } else {
            record_code == query_code
        }
    })
}

/// Evaluate a query against the index. Returns document numbers in the
/// index's corpus order; resolve ids with [`InvertedIndex::doc_id`].
pub fn execute(ast: &QueryAst, index: &InvertedIndex) -> BTreeSet<u32> {
    exec(ast, index, None)
}

fn exec(ast: &QueryAst, index: &InvertedIndex, scope: Option<ScopeFields>) -> BTreeSet<u32> {
    match ast {
        QueryAst::Term(pattern) => pattern_occurrences(index, pattern, scope)
            .keys()
            .map(|&(doc, _)| doc)
            .collect(),
        QueryAst::Scope(fields, body) => exec(body, index, Some(*fields)),
        QueryAst::And(children) => {
            let mut sets = children.iter().map(|c| exec(c, index, scope));
            let first = sets.next().unwrap_or_default();
            sets.fold(first, |acc, s| acc.intersection(&s).copied().collect())
        }
        QueryAst::Or(children) => children
            .iter()
            .flat_map(|c| exec(c, index, scope))
            .collect(),
        QueryAst::AndNot(left, right) => {
            let left = exec(left, index, scope);
            let right = exec(right, index, scope);
            left.difference(&right).copied().collect()
        }
        QueryAst::Proximity {
            left,
            right,
            distance,
            ordered,
        } => {
            let la = pattern_occurrences(index, left, scope);
            if la.is_empty() {
                return BTreeSet::new();
            }
            let lb = pattern_occurrences(index, right, scope);
            let mut out = BTreeSet::new();
            for ((doc, field), pa) in &la {
                if out.contains(doc) {
                    continue;
                }
                if let Some(pb) = lb.get(&(*doc, *field)) {
                    if proximity_pair(pa, pb, *distance, *ordered) {
                        out.insert(*doc);
                    }
                }
            }
            out
        }
        QueryAst::Subject { codes, mode } => {
            let included: BTreeSet<u32> = codes
                .iter()
                .flat_map(|&code| index.subject_docs(code))
                .collect();
            match mode {
                SubjectMode::Include => included,
                SubjectMode::Exclude => {
                    index.all_docs().difference(&included).copied().collect()
                }
            }
        }
        QueryAst::Source(pattern) => {
            let mut out = BTreeSet::new();
            for (name, docs) in index.journals() {
                let tokens = plain_tokens(&normalize(name));
                if !phrase_starts(&tokens, pattern).is_empty() {
                    out.extend(docs.iter().copied());
                }
            }
            out
        }
    }
}

/// Match starts of a pattern across the index: (doc, field) → positions of
/// the pattern's first token.
fn pattern_occurrences(
    index: &InvertedIndex,
    pattern: &TermPattern,
    scope: Option<ScopeFields>,
) -> BTreeMap<(u32, Field), Vec<u32>> {
    let k = pattern.tokens.len();
    if k == 0 {
        return BTreeMap::new();
    }
    let field_ok =
        |field: Field| -> bool { scope.is_none_or(|sc| sc.contains(field)) };

    let mut starts: BTreeMap<(u32, Field), Vec<u32>> = BTreeMap::new();
    let first_prefix = pattern.prefix && k == 1;
    for posting in token_postings(index, &pattern.tokens[0], first_prefix) {
        if field_ok(posting.field) {
            starts
                .entry((posting.doc, posting.field))
                .or_default()
                .push(posting.pos);
        }
    }

    for (j, pattern_token) in pattern.tokens.iter().enumerate().skip(1) {
        if starts.is_empty() {
            break;
        }
        let prefix = pattern.prefix && j == k - 1;
        let members: HashSet<(u32, Field, u32)> = token_postings(index, pattern_token, prefix)
            .filter(|p| field_ok(p.field))
            .map(|p| (p.doc, p.field, p.pos))
            .collect();
        starts = starts
            .into_iter()
            .filter_map(|((doc, field), positions)| {
                let keep: Vec<u32> = positions
                    .into_iter()
                    .filter(|&pos| members.contains(&(doc, field, pos + j as u32)))
                    .collect();
                (!keep.is_empty()).then_some(((doc, field), keep))
            })
            .collect();
    }
    starts
}

fn token_postings<'a>(
    index: &'a InvertedIndex,
    token: &'a str,
    prefix: bool,
) -> Box<dyn Iterator<Item = Posting> + 'a> {
    if prefix {
        Box::new(
            index
                .postings_with_prefix(token)
                .flat_map(|(_, postings)| postings.iter().copied()),
        )
    } else {
        Box::new(index.postings(token).iter().copied())
    }
}

/// Run every theme query of the bank against the index and aggregate at
/// the SDG level: a record gets SDG `s` with `Query` provenance iff at
/// least one theme query of `s` matches it.
///
/// Entries are evaluated in parallel; the merged mapping is independent of
/// evaluation order.
pub fn run_query_bank(bank: &QueryBank, index: &InvertedIndex) -> SdgMapping {
    let results: Vec<BTreeSet<u32>> = bank
        .entries
        .par_iter()
        .map(|entry| execute(&entry.query, index))
        .collect();
    let mut mapping = SdgMapping::new();
    for (entry, docs) in bank.entries.iter().zip(results) {
        for doc in docs {
            mapping.add_query_hit(index.doc_id(doc), entry.sdg, &entry.theme);
        }
    }
    mapping
}

/// Bank runner over the naive matcher; the oracle [`run_query_bank`] is
/// checked against.
pub fn run_query_bank_naive(bank: &QueryBank, corpus: &Corpus) -> SdgMapping {
    let mut mapping = SdgMapping::new();
    for entry in &bank.entries {
        for record in corpus.iter() {
            if matches(&entry.query, record) {
                mapping.add_query_hit(&record.id, entry.sdg, &entry.theme);
            }
        }
    }
    mapping
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::build_index;
    use crate::query::parse;
    use crate::Sdg;

    fn record(id: &str, title: &str, abstract_text: &str) -> PublicationRecord {
        PublicationRecord {
            title: title.to_string(),
            abstract_text: abstract_text.to_string(),
            ..PublicationRecord::new(id)
        }
    }

    fn q(source: &str) -> QueryAst {
        parse(source).unwrap()
    }

    #[test]
    fn term_matches_any_scoped_field() {
        let r = record("r", "", "urban poverty trends");
        assert!(matches(&q(r#"TITLE-ABS-KEY("poverty")"#), &r));
        assert!(!matches(&q(r#"TITLE("poverty")"#), &r));
    }

    #[test]
    fn proximity_distance_is_between_start_positions() {
        // positions: extreme 0, levels 1, of 2, global 3, poverty 4
        let r = record("r", "", "extreme levels of global poverty");
        assert!(!matches(&q(r#"TITLE-ABS-KEY("extreme" W/3 "poverty")"#), &r));
        assert!(matches(&q(r#"TITLE-ABS-KEY("extreme" W/4 "poverty")"#), &r));
    }

    #[test]
    fn unordered_proximity_is_symmetric() {
        // positions: poverty 0, among 1, extreme 2, weather 3, survivors 4
        let r = record("r", "", "poverty among extreme weather survivors");
        assert!(matches(&q(r#"ABS("extreme" W/2 "poverty")"#), &r));
        assert!(matches(&q(r#"ABS("poverty" W/2 "extreme")"#), &r));
        assert!(matches(&q(r#"ABS("poverty" PRE/2 "extreme")"#), &r));
        assert!(!matches(&q(r#"ABS("extreme" PRE/2 "poverty")"#), &r));
        assert!(!matches(&q(r#"ABS("poverty" PRE/2 "weather")"#), &r));
    }

    #[test]
    fn prefix_matches_token_starts() {
        let r = record("r", "coastal pollution dynamics", "");
        assert!(matches(&q(r#"TITLE("pollut*")"#), &r));
        assert!(!matches(&q(r#"TITLE("pollute")"#), &r));
    }

    #[test]
    fn phrases_and_proximity_respect_keyword_boundaries() {
        let mut r = PublicationRecord::new("r");
        r.author_keywords = vec!["global poverty".into(), "inequality".into()];
        // phrase across two entries never matches
        assert!(!matches(&q(r#"KEY("poverty inequality")"#), &r));
        assert!(matches(&q(r#"KEY("global poverty")"#), &r));
        // entry gap is 2: W/1 cannot cross, W/2 can
        assert!(!matches(&q(r#"KEY("poverty" W/1 "inequality")"#), &r));
        assert!(matches(&q(r#"KEY("poverty" W/2 "inequality")"#), &r));
    }

    #[test]
    fn proximity_never_crosses_fields() {
        let r = record("r", "extreme weather", "poverty trends");
        assert!(!matches(&q(r#"TITLE-ABS-KEY("extreme" W/9 "poverty")"#), &r));
    }

    #[test]
    fn subject_filters_match_codes_and_prefixes() {
        let mut r = PublicationRecord::new("r");
        r.asjc_codes = vec![2712];
        assert!(matches(&q("SUBJAREA(2712)"), &r));
        assert!(matches(&q("SUBJAREA(27)"), &r));
        assert!(!matches(&q("SUBJAREA(2800)"), &r));
        let mut rec = record("s", "health systems", "");
        rec.asjc_codes = vec![2800];
        assert!(matches(
            &q(r#"TITLE("health") AND NOT SUBJAREA(27)"#),
            &rec
        ));
    }

    #[test]
    fn srctitle_matches_normalized_journal_phrases() {
        let mut r = PublicationRecord::new("r");
        r.journal_name = "Marine  Policy".to_string();
        assert!(matches(&q(r#"SRCTITLE("marine polic*")"#), &r));
        assert!(matches(&q(r#"SRCTITLE("policy")"#), &r));
        assert!(!matches(&q(r#"SRCTITLE("marine biology")"#), &r));
    }

    #[test]
    fn execute_on_empty_index_is_empty() {
        let corpus = Corpus::from_records(vec![]).unwrap();
        let index = build_index(&corpus);
        assert!(execute(&q(r#"TITLE-ABS-KEY("poverty")"#), &index).is_empty());
    }

    #[test]
    fn boolean_set_laws_hold_on_index() {
        let corpus = Corpus::from_records(vec![
            record("a", "poverty and hunger", ""),
            record("b", "poverty dynamics", ""),
            record("c", "hunger mapping", ""),
        ])
        .unwrap();
        let index = build_index(&corpus);
        let ta = q(r#"TITLE("poverty")"#);
        let tb = q(r#"TITLE("hunger")"#);
        let and = QueryAst::And(vec![ta.clone(), tb.clone()]);
        let or = QueryAst::Or(vec![ta.clone(), tb.clone()]);
        let and_not = QueryAst::AndNot(Box::new(ta.clone()), Box::new(tb.clone()));

        let sa = execute(&ta, &index);
        let sb = execute(&tb, &index);
        assert_eq!(
            execute(&and, &index),
            sa.intersection(&sb).copied().collect()
        );
        assert_eq!(execute(&or, &index), sa.union(&sb).copied().collect());
        assert_eq!(
            execute(&and_not, &index),
            sa.difference(&sb).copied().collect()
        );
    }

    #[test]
    fn index_equals_naive_on_a_mixed_corpus() {
        let mut k1 = record("k1", "Fisheries management", "Aquaculture systems");
        k1.author_keywords = vec!["coastal management".into(), "pollut* not a wildcard".into()];
        k1.journal_name = "Marine Pollution Bulletin".into();
        k1.asjc_codes = vec![1910, 2306];
        let mut k2 = record(
            "k2",
            "Extreme poverty in peri-urban areas",
            "Microfinance access improves resilience to climate shocks",
        );
        k2.journal_name = "World Development".into();
        k2.asjc_codes = vec![2002, 3303];
        let k3 = record("k3", "", "");
        let mut k4 = record("k4", "Pollution control économique", "CO₂ ﬂuxes");
        k4.journal_name = "Énergie  et Société".into();
        k4.asjc_codes = vec![2100];
        let corpus = Corpus::from_records(vec![k1, k2, k3, k4]).unwrap();
        let index = build_index(&corpus);

        let queries = [
            r#"TITLE-ABS-KEY("pollut*")"#,
            r#"TITLE("fisheries" W/1 "management")"#,
            r#"ABS("microfinance" PRE/1 "access")"#,
            r#"KEY("coastal management")"#,
            r#"(TITLE("poverty") OR ABS("poverty")) AND NOT SUBJAREA(19)"#,
            r#"SRCTITLE("marine pollut*")"#,
            r#"SRCTITLE("énergie")"#,
            r#"TITLE-ABS-KEY("co2")"#,
            r#"SUBJAREA(23, 2002)"#,
            r#"TITLE-ABS-KEY("extreme" W/2 "poverty") AND SUBJAREA(20)"#,
        ];
        for source in queries {
            let ast = q(source);
            let by_scan: BTreeSet<u32> = corpus
                .iter()
                .enumerate()
                .filter(|(_, r)| matches(&ast, r))
                .map(|(i, _)| i as u32)
                .collect();
            assert_eq!(execute(&ast, &index), by_scan, "disagreement on {source}");
        }
    }

    #[test]
    fn bank_runs_aggregate_themes_per_sdg() {
        let bank = QueryBank::parse_str(
            "# SDG 1 SDG1-Theme1\nTITLE(\"poverty\")\n# SDG 1 SDG1-Theme3\nABS(\"resilience\")\n",
            "test",
        )
        .unwrap();
        let corpus = Corpus::from_records(vec![record(
            "r1",
            "poverty dynamics",
            "resilience of the poor",
        )])
        .unwrap();
        let index = build_index(&corpus);
        let mapping = run_query_bank(&bank, &index);
        let sdg1 = Sdg::new(1).unwrap();
        assert_eq!(mapping.sdgs_of("r1").len(), 1);
        assert_eq!(mapping.themes_of("r1", sdg1).len(), 2);
        assert_eq!(mapping, run_query_bank_naive(&bank, &corpus));
    }

    #[test]
    fn empty_bank_gives_empty_mapping() {
        let bank = QueryBank::default();
        let corpus = Corpus::from_records(vec![record("r", "x", "y")]).unwrap();
        let index = build_index(&corpus);
        assert!(run_query_bank(&bank, &index).is_empty());
    }
}

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::stacktrace::{parse_stack_trace, simple_name, StackTraceInfo};
use super::{SearchQuery, Strategy};
use crate::text::{is_stopword, words, TokenizeMode};
use crate::{Error, IssueDocument, IssueHit, IssueRef};

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default))]
pub struct QueryConfig {
    /// Fewer hits than this sends the ladder to the next strategy.
    pub n_threshold: usize,
    pub stack_trace_qualifier: String,
    pub title_qualifier: String,
}

impl Default for QueryConfig {
    fn default() -> Self {
        Self { n_threshold: 5, stack_trace_qualifier: "in:body,comments".into(), title_qualifier: "in:title".into() }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QueryOutcome {
    /// The last query executed.
    pub query: SearchQuery,
    pub hits: Vec<IssueHit>,
    /// Every executed query in order, including `query`.
    pub attempts: Vec<SearchQuery>,
}

#[derive(Debug, thiserror::Error)]
pub enum QueryError<E> {
    #[error("no usable search query (tried {attempted:?})")]
    NoQuery { attempted: Vec<Strategy> },
    #[error("search failed: {0}")]
    Search(E),
}

fn is_keyword(w: &str) -> bool {
    ["if", "when", "while"].iter().any(|k| w.eq_ignore_ascii_case(k))
}

/// Text after the first whole-word `if`, `when` or `while` in `title`.
pub fn extract_condition(title: &str) -> Option<String> {
    let bytes = title.as_bytes();
    let word_byte = |b: u8| b.is_ascii_alphanumeric() || b == b'_' || b >= 0x80;
    let mut i = 0;
    while i < bytes.len() {
        if !word_byte(bytes[i]) {
            i += 1;
            continue;
        }
        let start = i;
        while i < bytes.len() && word_byte(bytes[i]) {
            i += 1;
        }
        if is_keyword(&title[start..i]) {
            let rest = title[i..].trim();
            return (!rest.is_empty()).then(|| rest.to_string());
        }
    }
    None
}

/// The title without symbols, stopwords and words naming the project.
pub fn summarize_title(title: &str, project: &IssueRef) -> Result<String, Error> {
    let mut project_words: BTreeSet<String> = BTreeSet::new();
    for name in [&project.owner, &project.repo] {
        project_words.insert(name.to_lowercase());
        project_words.extend(words(name, TokenizeMode::Split).into_iter().map(str::to_lowercase));
    }
    let kept: Vec<&str> = words(title, TokenizeMode::Split)
        .into_iter()
        .filter(|w| {
            let lower = w.to_lowercase();
            !is_stopword(&lower) && !project_words.contains(&lower)
        })
        .collect();
    if kept.is_empty() {
        return Err(Error::EmptySummary(title.to_string()));
    }
    Ok(kept.join(" "))
}

/// Exception message as query text: numeric tails such as `: 93067 bytes`
/// removed, quotes, parentheses and colons dropped, package separators turned
/// into spaces, and a capitalized first word lowercased.
pub fn normalize_message(message: &str) -> String {
    let mut msg = message.trim();
    while let Some(idx) = msg.rfind(':') {
        if msg[idx + 1..].trim_start().starts_with(|c: char| c.is_ascii_digit()) {
            msg = msg[..idx].trim_end();
        } else {
            break;
        }
    }
    let cleaned: String =
        msg.chars().map(|c| if c.is_alphanumeric() || c == '_' || c == '-' { c } else { ' ' }).collect();
    let mut out: Vec<String> = cleaned
        .split_whitespace()
        .filter(|w| w.chars().any(char::is_alphanumeric))
        .map(str::to_string)
        .collect();
    if let Some(first) = out.first_mut() {
        let mut chars = first.chars();
        let capitalized = chars.next().is_some_and(char::is_uppercase) && chars.all(char::is_lowercase);
        if capitalized {
            *first = first.to_lowercase();
        }
    }
    out.join(" ")
}

/// Simple root exception name followed by its normalized message.
pub fn stack_trace_query_text(info: &StackTraceInfo) -> String {
    let name = simple_name(&info.root_exception).replace('$', " ");
    let msg = normalize_message(&info.root_message);
    if msg.is_empty() {
        name
    } else {
        alloc::format!("{name} {msg}")
    }
}

/// Runs the query ladder against `search`.
///
/// 1. A stack trace in the body gives `exception message in:body,comments`.
/// 2. With fewer than `n_threshold` hits, a condition clause in the title
///    gives `condition in:title`.
/// 3. Otherwise the summarized title is searched with `in:title`, and again
///    without the qualifier when that still returns too few hits.
///
/// Returns the last executed query with its hits.
pub fn build_query<E, F>(issue: &IssueDocument, config: &QueryConfig, mut search: F) -> Result<QueryOutcome, QueryError<E>>
where
    F: FnMut(&SearchQuery) -> Result<Vec<IssueHit>, E>,
{
    let mut attempted = Vec::new();
    let mut attempts = Vec::new();
    let mut last: Option<(SearchQuery, Vec<IssueHit>)> = None;
    let mut run = |q: SearchQuery, attempts: &mut Vec<SearchQuery>| -> Result<(SearchQuery, Vec<IssueHit>), QueryError<E>> {
        let hits = search(&q).map_err(QueryError::Search)?;
        attempts.push(q.clone());
        Ok((q, hits))
    };
    let qualifier = |q: &str| if q.is_empty() { vec![] } else { vec![q.to_string()] };

    if let Some(info) = parse_stack_trace(&issue.body) {
        attempted.push(Strategy::StackTrace);
        let text = stack_trace_query_text(&info);
        if let Ok(q) = SearchQuery::fitted(&text, qualifier(&config.stack_trace_qualifier), Strategy::StackTrace) {
            last = Some(run(q, &mut attempts)?);
        }
    }

    let enough = |last: &Option<(SearchQuery, Vec<IssueHit>)>| last.as_ref().is_some_and(|(_, h)| h.len() >= config.n_threshold);
    if !enough(&last) {
        if let Some(condition) = extract_condition(&issue.title) {
            attempted.push(Strategy::Condition);
            if let Ok(q) = SearchQuery::fitted(&condition, qualifier(&config.title_qualifier), Strategy::Condition) {
                last = Some(run(q, &mut attempts)?);
            }
        } else {
            attempted.push(Strategy::SummaryTitleScoped);
            if let Ok(summary) = summarize_title(&issue.title, &issue.issue_ref) {
                if let Ok(q) =
                    SearchQuery::fitted(&summary, qualifier(&config.title_qualifier), Strategy::SummaryTitleScoped)
                {
                    last = Some(run(q, &mut attempts)?);
                }
                if !enough(&last) {
                    attempted.push(Strategy::SummaryUnscoped);
                    if let Ok(q) = SearchQuery::fitted(&summary, vec![], Strategy::SummaryUnscoped) {
                        last = Some(run(q, &mut attempts)?);
                    }
                }
            }
        }
    }

    match last {
        Some((query, hits)) => Ok(QueryOutcome { query, hits, attempts }),
        None => Err(QueryError::NoQuery { attempted }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::convert::Infallible;

    fn issue(title: &str, body: &str) -> IssueDocument {
        IssueDocument::new(IssueRef::new("owner", "proj", 1).unwrap(), title, body)
    }

    fn hits(n: u32) -> Vec<IssueHit> {
        (1..=n)
            .map(|k| IssueHit { issue: IssueDocument::new(IssueRef::new("x", "y", k as u64).unwrap(), "t", ""), search_rank: k })
            .collect()
    }

    #[test]
    fn condition_examples() {
        assert_eq!(
            extract_condition("Stemmer exception when training word2vec with the supplied tweets_lean.txt file").as_deref(),
            Some("training word2vec with the supplied tweets_lean.txt file")
        );
        assert_eq!(extract_condition("Crash when"), None);
        assert_eq!(extract_condition("Whenever it rains"), None);
        assert_eq!(extract_condition("Crash WHILE scrolling").as_deref(), Some("scrolling"));
        assert_eq!(extract_condition("no keyword"), None);
    }

    #[test]
    fn summary_examples() {
        let p = IssueRef::new("o", "r", 1).unwrap();
        assert_eq!(
            summarize_title("SwedishStemmer (and DutchStemmer?) not thread safe", &p).unwrap(),
            "SwedishStemmer DutchStemmer thread safe"
        );
        assert!(matches!(summarize_title("the a an", &p), Err(Error::EmptySummary(_))));
        let dl = IssueRef::new("eclipse", "deeplearning4j", 1).unwrap();
        assert_eq!(summarize_title("deeplearning4j crash on save", &dl).unwrap(), "crash save");
    }

    #[test]
    fn message_normalization() {
        assert_eq!(normalize_message("encoded string too long: 93067 bytes"), "encoded string too long");
        assert_eq!(normalize_message("String index out of range: 8"), "string index out of range");
        assert_eq!(
            normalize_message(
                "Attempt to invoke virtual method 'java.lang.Object android.widget.FrameLayout.getTag(int)' on a null object reference"
            ),
            "attempt to invoke virtual method java lang Object android widget FrameLayout getTag int on a null object reference"
        );
        assert_eq!(normalize_message("HTTP 404 for x"), "HTTP 404 for x");
    }

    #[test]
    fn stack_trace_strategy_stops_with_enough_hits() {
        let i = issue("Whatever", "java.io.UTFDataFormatException: encoded string too long: 93067 bytes");
        let out = build_query(&i, &QueryConfig::default(), |_| Ok::<_, Infallible>(hits(7))).unwrap();
        assert_eq!(out.query.strategy(), Strategy::StackTrace);
        assert_eq!(out.query.render(), "UTFDataFormatException encoded string too long in:body,comments");
        assert_eq!(out.attempts.len(), 1);
    }

    #[test]
    fn stack_trace_falls_to_condition() {
        let i = issue("Crash when saving", "java.io.IOException: disk");
        let out = build_query(&i, &QueryConfig::default(), |q| {
            Ok::<_, Infallible>(if q.strategy() == Strategy::StackTrace { hits(2) } else { hits(1) })
        })
        .unwrap();
        assert_eq!(out.query.strategy(), Strategy::Condition);
        assert_eq!(out.query.render(), "saving in:title");
        assert_eq!(out.hits.len(), 1);
    }

    #[test]
    fn title_only_falls_back_to_unscoped() {
        let i = issue("Dark theme ignored", "");
        let out = build_query(&i, &QueryConfig::default(), |q| {
            Ok::<_, Infallible>(if q.qualifiers().is_empty() { hits(2) } else { hits(0) })
        })
        .unwrap();
        assert_eq!(out.query.strategy(), Strategy::SummaryUnscoped);
        assert_eq!(out.query.render(), "Dark theme ignored");
        assert_eq!(out.hits.len(), 2);
        assert_eq!(out.attempts.len(), 2);
    }

    #[test]
    fn nothing_usable() {
        let i = issue("the a an", "");
        let err = build_query(&i, &QueryConfig::default(), |_| Ok::<_, Infallible>(hits(0))).unwrap_err();
        assert!(matches!(err, QueryError::NoQuery { attempted } if attempted == [Strategy::SummaryTitleScoped]));
    }

    #[test]
    fn search_errors_propagate() {
        let i = issue("Dark theme ignored", "");
        let err = build_query(&i, &QueryConfig::default(), |_| Err::<Vec<IssueHit>, _>("down")).unwrap_err();
        assert!(matches!(err, QueryError::Search("down")));
    }
}

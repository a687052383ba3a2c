//! Turning a driver issue into a GitHub issue-search query.

mod builder;
mod stacktrace;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub use builder::{
    build_query, extract_condition, normalize_message, stack_trace_query_text, summarize_title, QueryConfig,
    QueryError, QueryOutcome,
};
pub use stacktrace::{parse_stack_trace, StackTraceInfo};

use crate::Error;

/// The platform rejects search strings longer than this.
pub const MAX_QUERY_LEN: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Strategy {
    StackTrace,
    Condition,
    SummaryTitleScoped,
    SummaryUnscoped,
}

impl Strategy {
    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::StackTrace => "stack_trace",
            Strategy::Condition => "condition",
            Strategy::SummaryTitleScoped => "summary_title_scoped",
            Strategy::SummaryUnscoped => "summary_unscoped",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A search string plus `in:` qualifiers, at most [`MAX_QUERY_LEN`]
/// characters once rendered.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SearchQuery {
    text: String,
    qualifiers: Vec<String>,
    strategy: Strategy,
}

impl SearchQuery {
    pub fn new(text: impl Into<String>, qualifiers: Vec<String>, strategy: Strategy) -> Result<Self, Error> {
        let q = Self { text: text.into(), qualifiers, strategy };
        if q.text.trim().is_empty() {
            return Err(Error::EmptyQuery);
        }
        let len = q.render().chars().count();
        if len > MAX_QUERY_LEN {
            return Err(Error::QueryTooLong { len, max: MAX_QUERY_LEN });
        }
        Ok(q)
    }

    /// Builds a query from `text`, dropping trailing words until it fits.
    /// Fails when not even the first word fits.
    pub fn fitted(text: &str, qualifiers: Vec<String>, strategy: Strategy) -> Result<Self, Error> {
        let reserved: usize = qualifiers.iter().map(|q| q.chars().count() + 1).sum();
        let budget = MAX_QUERY_LEN.saturating_sub(reserved);
        let mut out = String::new();
        let mut used = 0;
        for word in text.split_whitespace() {
            let extra = word.chars().count() + usize::from(!out.is_empty());
            if used + extra > budget {
                break;
            }
            if !out.is_empty() {
                out.push(' ');
            }
            out.push_str(word);
            used += extra;
        }
        Self::new(out, qualifiers, strategy)
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    pub fn qualifiers(&self) -> &[String] {
        &self.qualifiers
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    /// Text followed by the qualifiers, space separated.
    pub fn render(&self) -> String {
        let mut s = self.text.clone();
        for q in &self.qualifiers {
            s.push(' ');
            s.push_str(q);
        }
        s
    }
}

impl fmt::Display for SearchQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

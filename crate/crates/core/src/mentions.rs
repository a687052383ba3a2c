//! Matching artifact vocabularies (dependencies, permissions, UI element
//! names) against the prose of an issue.
//!
//! Both sides are reduced to stemmed, lowercase word parts, with camel-case
//! identifiers split (`SnowballStemmer` → `snowbal stemmer`). A vocabulary
//! entry is mentioned when its parts occur contiguously in the issue, or when
//! its parts glued together equal one word of the issue. For `group:artifact`
//! entries only the artifact is matched.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use crate::text::{split_camel, stem, words, TokenizeMode};
use crate::IssueDocument;

#[derive(Debug, Clone, Default)]
pub struct MentionIndex {
    parts: Vec<String>,
    whole: BTreeSet<String>,
}

impl MentionIndex {
    pub fn new(text: &str) -> Self {
        let mut parts = Vec::new();
        let mut whole = BTreeSet::new();
        for word in words(text, TokenizeMode::Split) {
            whole.insert(stem(&word.to_lowercase()));
            parts.extend(split_camel(word).into_iter().map(|p| stem(&p.to_lowercase())));
        }
        Self { parts, whole }
    }

    pub fn for_issue(issue: &IssueDocument) -> Self {
        Self::new(&issue.full_text())
    }

    pub fn mentions(&self, entry: &str) -> bool {
        let target = entry.rsplit(':').next().unwrap_or(entry);
        let parts = entry_parts(target);
        if parts.is_empty() {
            return false;
        }
        if self.parts.windows(parts.len()).any(|w| w == parts.as_slice()) {
            return true;
        }
        let glued: String = words(target, TokenizeMode::Split).concat().to_lowercase();
        self.whole.contains(&stem(&glued))
    }

    /// The subset of `vocabulary` mentioned in the indexed text.
    pub fn matches<'v, I>(&self, vocabulary: I) -> BTreeSet<String>
    where
        I: IntoIterator<Item = &'v String>,
    {
        vocabulary.into_iter().filter(|e| self.mentions(e)).cloned().collect()
    }
}

fn entry_parts(entry: &str) -> Vec<String> {
    words(entry, TokenizeMode::Split)
        .into_iter()
        .flat_map(split_camel)
        .map(|p| stem(&p.to_lowercase()))
        .collect()
}

/// Vocabulary entries mentioned in the title, body or comments of `issue`.
/// The result is always a subset of `vocabulary`.
pub fn extract_mentions(issue: &IssueDocument, vocabulary: &BTreeSet<String>) -> BTreeSet<String> {
    if vocabulary.is_empty() {
        return BTreeSet::new();
    }
    MentionIndex::for_issue(issue).matches(vocabulary)
}

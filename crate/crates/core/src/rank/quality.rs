use alloc::collections::BTreeSet;
use alloc::string::String;

use super::Factors;
use crate::similarity::SimilarityVector;
use crate::text::{stem, words, TokenizeMode};
use crate::IssueDocument;

/// Words that tend to appear in well-written bug reports.
pub const DEFAULT_KEYWORDS: &[&str] =
    &["reproduce", "defect", "crash", "error", "exception", "expected", "actual", "steps", "fix"];

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct QualityMetrics {
    pub word_count: u32,
    pub has_fix_commit: bool,
    pub comment_count: u32,
    pub keyword_count: u32,
}

/// Raw counts at which a quality factor saturates to 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default))]
pub struct NormalizationCaps {
    pub words: u32,
    pub comments: u32,
    pub keywords: u32,
}

impl Default for NormalizationCaps {
    fn default() -> Self {
        Self { words: 500, comments: 20, keywords: 5 }
    }
}

pub fn quality_metrics(issue: &IssueDocument) -> QualityMetrics {
    quality_metrics_with(issue, DEFAULT_KEYWORDS.iter().copied())
}

/// Like [`quality_metrics`] with a custom keyword set. Keywords match any
/// word of the body or comments with the same stem.
pub fn quality_metrics_with<'k, I>(issue: &IssueDocument, keywords: I) -> QualityMetrics
where
    I: IntoIterator<Item = &'k str>,
{
    let stems: BTreeSet<String> = keywords.into_iter().map(|k| stem(&k.to_lowercase())).collect();
    let count = |text: &str| {
        words(text, TokenizeMode::Split).into_iter().filter(|w| stems.contains(&stem(&w.to_lowercase()))).count()
    };
    let keyword_count = count(&issue.body) + issue.comments.iter().map(|c| count(c)).sum::<usize>();
    QualityMetrics {
        word_count: saturate(issue.body.split_whitespace().count()),
        has_fix_commit: !issue.linked_patch_refs.is_empty(),
        comment_count: issue.num_comments,
        keyword_count: saturate(keyword_count),
    }
}

fn saturate(n: usize) -> u32 {
    u32::try_from(n).unwrap_or(u32::MAX)
}

fn ratio(value: u32, cap: u32) -> f64 {
    if cap == 0 {
        return if value > 0 { 1.0 } else { 0.0 };
    }
    (f64::from(value) / f64::from(cap)).min(1.0)
}

/// Maps quality counts onto `[0, 1]` and copies the similarity scores.
pub fn normalize_factors(metrics: &QualityMetrics, sims: &SimilarityVector, caps: &NormalizationCaps) -> Factors {
    Factors {
        issue_length: ratio(metrics.word_count, caps.words),
        num_comment: ratio(metrics.comment_count, caps.comments),
        code: sims.code,
        dependency: sims.dependency,
        permission: sims.permission,
        ui: sims.ui,
        has_fix: if metrics.has_fix_commit { 1.0 } else { 0.0 },
        keywords: ratio(metrics.keyword_count, caps.keywords),
    }
}

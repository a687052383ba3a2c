//! Mining cross-project similar-bug pairs from issue threads.

use std::collections::BTreeSet;

use bugnav_core::query::{SearchQuery, Strategy};
use bugnav_core::IssueRef;
use serde::{Deserialize, Serialize};

use super::github::{GitHubClient, SearchFilters};
use super::refs::issue_links;
use super::transport::Transport;
use crate::error::Result;

pub const DEFAULT_KEYWORDS: &[&str] = &["similar bug", "similar problem"];

/// A driver issue and the issue from another project it points to.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SimilarPair {
    pub driver: IssueRef,
    pub navigator: IssueRef,
    pub keyword: String,
}

/// The first issue or pull request linked from `driver`'s thread that lives
/// in a different repository.
pub fn first_cross_project_link(driver: &IssueRef, thread: &[&str]) -> Option<IssueRef> {
    thread.iter().flat_map(|t| issue_links(t)).find(|l| !l.same_project(driver))
}

/// Searches each keyword as a phrase and pairs every hit with the first
/// cross-project issue its thread links to. Pairs are unique; a driver found
/// under several keywords keeps the first.
pub fn mine_similar_pairs<T: Transport>(
    client: &GitHubClient<T>,
    keywords: &[String],
    per_keyword_cap: usize,
    language: Option<&str>,
) -> Result<Vec<SimilarPair>> {
    let mut seen_drivers = BTreeSet::new();
    let mut pairs = Vec::new();
    for keyword in keywords {
        let query = SearchQuery::new(format!("\"{keyword}\""), vec![], Strategy::SummaryUnscoped)?;
        let filters = SearchFilters { language: language.map(str::to_string), state: None, max_results: per_keyword_cap };
        for hit in client.search_issues(&query, &filters)? {
            let driver = hit.issue.issue_ref.clone();
            if seen_drivers.contains(&driver) {
                continue;
            }
            let issue = if hit.issue.num_comments > 0 { client.fetch_issue(&driver)? } else { hit.issue };
            let mut thread = vec![issue.body.as_str()];
            thread.extend(issue.comments.iter().map(String::as_str));
            if let Some(navigator) = first_cross_project_link(&driver, &thread) {
                seen_drivers.insert(driver.clone());
                pairs.push(SimilarPair { driver, navigator, keyword: keyword.clone() });
            }
        }
    }
    Ok(pairs)
}

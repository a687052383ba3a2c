//! Pull request, commit and issue references found in thread text.

use std::sync::LazyLock;

use bugnav_core::{IssueDocument, IssueRef};
use regex::Regex;

static PULL_URL: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"https?://github\.com/([\w.-]+)/([\w.-]+)/pull/(\d+)(/commits/([0-9a-f]{7,40}))?").unwrap());
static COMMIT_URL: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"https?://github\.com/([\w.-]+)/([\w.-]+)/commit/([0-9a-f]{7,40})").unwrap());
static ISSUE_URL: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"https?://github\.com/([\w.-]+)/([\w.-]+)/(?:issues|pull)/(\d+)").unwrap());
static ANY_URL: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"https?://\S+").unwrap());
static BARE_HASH: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"\b[0-9a-f]{7,40}\b").unwrap());

/// A patch reference as stored in `linked_patch_refs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PatchRef {
    /// `owner/repo#number`
    Pull(IssueRef),
    /// `owner/repo@sha`
    Commit { owner: String, repo: String, sha: String },
    /// A bare hash, resolved against the issue's own repository.
    Hash(String),
}

impl PatchRef {
    pub fn parse(s: &str) -> Option<Self> {
        if let Some((repo, sha)) = s.split_once('@') {
            let (owner, repo) = repo.split_once('/')?;
            return Some(Self::Commit { owner: owner.into(), repo: repo.into(), sha: sha.into() });
        }
        if s.contains('#') {
            return s.parse().ok().map(Self::Pull);
        }
        is_commit_hash(s).then(|| Self::Hash(s.to_string()))
    }
}

impl std::fmt::Display for PatchRef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Pull(r) => write!(f, "{r}"),
            Self::Commit { owner, repo, sha } => write!(f, "{owner}/{repo}@{sha}"),
            Self::Hash(h) => f.write_str(h),
        }
    }
}

/// 7 to 40 lowercase hex characters with at least one digit and one letter,
/// so that words such as `deadbeef` or numbers such as `1234567` are skipped.
pub fn is_commit_hash(s: &str) -> bool {
    (7..=40).contains(&s.len())
        && s.bytes().all(|b| b.is_ascii_digit() || (b'a'..=b'f').contains(&b))
        && s.bytes().any(|b| b.is_ascii_digit())
        && s.bytes().any(|b| b.is_ascii_alphabetic())
}

fn pull_refs(text: &str) -> Vec<String> {
    PULL_URL
        .captures_iter(text)
        .filter(|c| c.get(5).is_none())
        .map(|c| format!("{}/{}#{}", &c[1], &c[2], &c[3]))
        .collect()
}

fn commit_refs(text: &str) -> Vec<String> {
    let mut found: Vec<(usize, String)> = COMMIT_URL
        .captures_iter(text)
        .map(|c| (c.get(0).map_or(0, |m| m.start()), format!("{}/{}@{}", &c[1], &c[2], &c[3])))
        .collect();
    found.extend(PULL_URL.captures_iter(text).filter_map(|c| {
        let sha = c.get(5)?;
        Some((sha.start(), format!("{}/{}@{}", &c[1], &c[2], sha.as_str())))
    }));
    let without_urls = ANY_URL.replace_all(text, |c: &regex::Captures| " ".repeat(c[0].len()));
    found.extend(
        BARE_HASH
            .find_iter(&without_urls)
            .filter(|m| is_commit_hash(m.as_str()))
            .map(|m| (m.start(), m.as_str().to_string())),
    );
    found.sort_by_key(|(pos, _)| *pos);
    found.into_iter().map(|(_, r)| r).collect()
}

/// Patch references of an issue thread, deduplicated, in resolution order:
/// the issue itself when it is a pull request, pull request links in the
/// body, commit references in thread order, then pull request links in
/// comments.
pub fn linked_patch_refs(issue: &IssueDocument, is_pull_request: bool) -> Vec<String> {
    let mut refs = Vec::new();
    if is_pull_request {
        refs.push(issue.issue_ref.to_string());
    }
    refs.extend(pull_refs(&issue.body));
    refs.extend(commit_refs(&issue.body));
    for c in &issue.comments {
        refs.extend(commit_refs(c));
    }
    for c in &issue.comments {
        refs.extend(pull_refs(c));
    }
    let mut seen = std::collections::HashSet::new();
    refs.retain(|r| seen.insert(r.clone()));
    refs
}

/// Issue and pull request links in `text`, in order of appearance.
pub fn issue_links(text: &str) -> Vec<IssueRef> {
    ISSUE_URL
        .captures_iter(text)
        .filter_map(|c| IssueRef::new(&c[1], &c[2], c[3].parse().ok()?).ok())
        .collect()
}

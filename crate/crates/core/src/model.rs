//! Domain types shared by every stage of the pipeline.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::code::CodeTokenStream;
use crate::Error;

/// A repository on the code-hosting platform, `owner/repo`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RepoRef {
    pub owner: String,
    pub repo: String,
}

impl RepoRef {
    pub fn new(owner: impl Into<String>, repo: impl Into<String>) -> Result<Self, Error> {
        let owner = owner.into();
        let repo = repo.into();
        if !valid_segment(&owner) || !valid_segment(&repo) {
            return Err(Error::InvalidIssueRef(format!("{owner}/{repo}")));
        }
        Ok(Self { owner, repo })
    }

    /// Repository names are case-insensitive on the platform.
    pub fn same_project(&self, other: &RepoRef) -> bool {
        self.owner.eq_ignore_ascii_case(&other.owner) && self.repo.eq_ignore_ascii_case(&other.repo)
    }
}

impl fmt::Display for RepoRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.owner, self.repo)
    }
}

impl FromStr for RepoRef {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (owner, repo) = s.split_once('/').ok_or_else(|| Error::InvalidIssueRef(s.to_string()))?;
        RepoRef::new(owner, repo)
    }
}

/// Identifies one issue or pull request, `owner/repo#number`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IssueRef {
    pub owner: String,
    pub repo: String,
    pub number: u64,
}

impl IssueRef {
    pub fn new(owner: impl Into<String>, repo: impl Into<String>, number: u64) -> Result<Self, Error> {
        let owner = owner.into();
        let repo = repo.into();
        if !valid_segment(&owner) || !valid_segment(&repo) || number == 0 {
            return Err(Error::InvalidIssueRef(format!("{owner}/{repo}#{number}")));
        }
        Ok(Self { owner, repo, number })
    }

    pub fn project(&self) -> RepoRef {
        RepoRef { owner: self.owner.clone(), repo: self.repo.clone() }
    }

    pub fn same_project(&self, other: &IssueRef) -> bool {
        self.owner.eq_ignore_ascii_case(&other.owner) && self.repo.eq_ignore_ascii_case(&other.repo)
    }
}

fn valid_segment(s: &str) -> bool {
    !s.is_empty() && !s.contains(['/', '#']) && !s.contains(char::is_whitespace)
}

impl fmt::Display for IssueRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}#{}", self.owner, self.repo, self.number)
    }
}

impl FromStr for IssueRef {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Error::InvalidIssueRef(s.to_string());
        let (project, number) = s.rsplit_once('#').ok_or_else(bad)?;
        let (owner, repo) = project.split_once('/').ok_or_else(bad)?;
        let number = number.parse::<u64>().map_err(|_| bad())?;
        IssueRef::new(owner, repo, number)
    }
}

#[cfg(feature = "serde")]
mod string_serde {
    use super::{IssueRef, RepoRef};
    use alloc::string::String;
    use core::str::FromStr;
    use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

    macro_rules! via_display {
        ($ty:ty) => {
            impl Serialize for $ty {
                fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                    serializer.collect_str(self)
                }
            }

            impl<'de> Deserialize<'de> for $ty {
                fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
                    let s = String::deserialize(deserializer)?;
                    <$ty>::from_str(&s).map_err(de::Error::custom)
                }
            }
        };
    }

    via_display!(IssueRef);
    via_display!(RepoRef);
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum IssueState {
    #[default]
    Open,
    Closed,
}

/// A bug report: the unit of both input (driver) and output (navigator).
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct IssueDocument {
    #[cfg_attr(feature = "serde", serde(rename = "ref"))]
    pub issue_ref: IssueRef,
    pub title: String,
    #[cfg_attr(feature = "serde", serde(default))]
    pub body: String,
    #[cfg_attr(feature = "serde", serde(default))]
    pub comments: Vec<String>,
    #[cfg_attr(feature = "serde", serde(default))]
    pub state: IssueState,
    #[cfg_attr(feature = "serde", serde(default))]
    pub num_comments: u32,
    #[cfg_attr(feature = "serde", serde(default))]
    pub labels: Vec<String>,
    /// Pull requests and commits referenced from the thread, in resolution order.
    #[cfg_attr(feature = "serde", serde(default))]
    pub linked_patch_refs: Vec<String>,
    #[cfg_attr(feature = "serde", serde(default))]
    pub project_language: String,
}

impl IssueDocument {
    pub fn new(issue_ref: IssueRef, title: impl Into<String>, body: impl Into<String>) -> Self {
        Self {
            issue_ref,
            title: title.into(),
            body: body.into(),
            comments: Vec::new(),
            state: IssueState::Open,
            num_comments: 0,
            labels: Vec::new(),
            linked_patch_refs: Vec::new(),
            project_language: String::new(),
        }
    }

    /// Title, body and comments joined by blank lines.
    pub fn full_text(&self) -> String {
        let mut text = String::with_capacity(self.title.len() + self.body.len());
        text.push_str(&self.title);
        text.push_str("\n\n");
        text.push_str(&self.body);
        for c in &self.comments {
            text.push_str("\n\n");
            text.push_str(c);
        }
        text
    }
}

/// One modified file of a fix.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ModifiedFile {
    pub path: String,
    pub new_content: String,
    #[cfg_attr(feature = "serde", serde(default))]
    pub diff_hunks: String,
}

/// The fix attached to a navigator issue (a pull request or a commit).
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Patch {
    pub source_ref: String,
    pub modified_files: Vec<ModifiedFile>,
}

/// A search result together with its 1-based position in platform order.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct IssueHit {
    pub issue: IssueDocument,
    pub search_rank: u32,
}

/// A `group:artifact` coordinate, lowercased.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DependencyId {
    pub group: String,
    pub artifact: String,
}

impl DependencyId {
    /// Returns `None` when the artifact is empty.
    pub fn new(group: &str, artifact: &str) -> Option<Self> {
        let artifact = artifact.trim().to_lowercase();
        if artifact.is_empty() {
            return None;
        }
        Some(Self { group: group.trim().to_lowercase(), artifact })
    }

    pub fn canonical(&self) -> String {
        format!("{}:{}", self.group, self.artifact)
    }
}

impl fmt::Display for DependencyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.group, self.artifact)
    }
}

impl FromStr for DependencyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (group, artifact) = s.rsplit_once(':').unwrap_or(("", s));
        DependencyId::new(group, artifact).ok_or_else(|| Error::InvalidDependency(s.to_string()))
    }
}

/// Artifacts extracted from one issue's repository.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RepoContext {
    pub dependencies: BTreeSet<DependencyId>,
    pub permissions: BTreeSet<String>,
    pub ui_elements: BTreeSet<String>,
    pub code_files: BTreeMap<String, CodeTokenStream>,
    /// True when the repository declares an Android manifest.
    pub android: bool,
}

impl RepoContext {
    pub fn is_empty(&self) -> bool {
        self.dependencies.is_empty()
            && self.permissions.is_empty()
            && self.ui_elements.is_empty()
            && self.code_files.is_empty()
            && !self.android
    }
}

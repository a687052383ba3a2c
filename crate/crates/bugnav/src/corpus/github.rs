use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::path::PathBuf;
use std::sync::{Arc, Mutex};

use base64::Engine;
use bugnav_core::query::SearchQuery;
use bugnav_core::{IssueDocument, IssueHit, IssueRef, IssueState, ModifiedFile, Patch, RepoRef};
use globset::{GlobBuilder, GlobSet, GlobSetBuilder};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::ratelimit::{Clock, SystemClock};
use super::refs::{linked_patch_refs, PatchRef};
use super::transport::{ApiRequest, ApiResponse, Transport};
use crate::error::{CorpusError, Result};

/// The search API never returns more than this many results per query.
pub const MAX_SEARCH_RESULTS: usize = 1000;
const PAGE_SIZE: usize = 100;

pub const DEFAULT_SNAPSHOT_GLOBS: &[&str] =
    &["**/*.java", "**/pom.xml", "**/build.gradle*", "**/AndroidManifest.xml", "**/res/layout*/**/*.xml"];

/// Build and Android resource files only: what candidate repositories need.
pub const ARTIFACT_GLOBS: &[&str] = &["**/pom.xml", "**/build.gradle*", "**/AndroidManifest.xml", "**/res/layout*/**/*.xml"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchFilters {
    pub language: Option<String>,
    pub state: Option<String>,
    pub max_results: usize,
}

impl Default for SearchFilters {
    fn default() -> Self {
        Self { language: Some("java".into()), state: Some("closed".into()), max_results: 10 }
    }
}

/// Files of one repository at one commit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepoSnapshot {
    #[serde(rename = "ref")]
    pub repo: RepoRef,
    pub head: String,
    pub files: BTreeMap<String, String>,
    /// Unix seconds; 0 for snapshots built from recorded fixtures.
    pub fetched_at: u64,
}

#[derive(Debug, Clone, Deserialize)]
struct IssueJson {
    number: u64,
    title: String,
    #[serde(default)]
    body: Option<String>,
    state: String,
    #[serde(default)]
    comments: u32,
    #[serde(default)]
    labels: Vec<LabelJson>,
    #[serde(default)]
    pull_request: Option<serde_json::Value>,
    #[serde(default)]
    repository_url: Option<String>,
}

#[derive(Debug, Clone, Deserialize)]
struct LabelJson {
    name: String,
}

#[derive(Debug, Deserialize)]
struct SearchJson {
    #[serde(default)]
    total_count: usize,
    items: Vec<IssueJson>,
}

#[derive(Debug, Deserialize)]
struct CommentJson {
    #[serde(default)]
    body: Option<String>,
}

#[derive(Debug, Deserialize)]
struct FileJson {
    filename: String,
    #[serde(default)]
    status: String,
    #[serde(default)]
    patch: Option<String>,
    #[serde(default)]
    contents_url: Option<String>,
}

#[derive(Debug, Deserialize)]
struct CommitJson {
    #[serde(default)]
    files: Vec<FileJson>,
}

#[derive(Debug, Deserialize)]
struct BlobJson {
    content: String,
    #[serde(default)]
    encoding: String,
}

#[derive(Debug, Clone, Deserialize)]
struct RepoJson {
    default_branch: String,
    #[serde(default)]
    language: Option<String>,
}

#[derive(Debug, Deserialize)]
struct BranchJson {
    commit: ShaJson,
}

#[derive(Debug, Deserialize)]
struct ShaJson {
    sha: String,
}

#[derive(Debug, Deserialize)]
struct TreeJson {
    tree: Vec<TreeEntryJson>,
    #[serde(default)]
    truncated: bool,
}

#[derive(Debug, Deserialize)]
struct TreeEntryJson {
    path: String,
    #[serde(rename = "type")]
    kind: String,
    sha: String,
}

/// Platform API client: search, issues, patches and repository snapshots.
pub struct GitHubClient<T> {
    transport: T,
    clock: Arc<dyn Clock>,
    cache_dir: Option<PathBuf>,
    snapshots: Mutex<HashMap<String, Arc<RepoSnapshot>>>,
    repos: Mutex<HashMap<RepoRef, RepoJson>>,
}

fn repo_from_api_url(url: &str) -> Option<RepoRef> {
    let rest = url.split("/repos/").nth(1)?;
    let mut parts = rest.split('/');
    RepoRef::new(parts.next()?, parts.next()?).ok()
}

fn decode_base64(req: &ApiRequest, content: &str) -> Result<String> {
    let cleaned: String = content.chars().filter(|c| !c.is_whitespace()).collect();
    let bytes = base64::engine::general_purpose::STANDARD
        .decode(cleaned)
        .map_err(|e| CorpusError::Decode { request: req.canonical(), reason: e.to_string() })?;
    Ok(String::from_utf8_lossy(&bytes).into_owned())
}

/// Compiles include globs; `*` does not cross directory separators.
pub fn compile_globs<S: AsRef<str>>(globs: &[S]) -> Result<GlobSet> {
    let mut builder = GlobSetBuilder::new();
    for g in globs {
        let glob = GlobBuilder::new(g.as_ref())
            .literal_separator(true)
            .build()
            .map_err(|e| CorpusError::BadArgument(format!("glob {}: {e}", g.as_ref())))?;
        builder.add(glob);
    }
    builder.build().map_err(|e| CorpusError::BadArgument(e.to_string()))
}

impl<T: Transport> GitHubClient<T> {
    pub fn new(transport: T) -> Self {
        Self::with_clock(transport, Arc::new(SystemClock::default()))
    }

    pub fn with_clock(transport: T, clock: Arc<dyn Clock>) -> Self {
        Self { transport, clock, cache_dir: None, snapshots: Mutex::default(), repos: Mutex::default() }
    }

    /// Persist repository snapshots under `dir`.
    pub fn with_cache_dir(mut self, dir: impl Into<PathBuf>) -> Self {
        self.cache_dir = Some(dir.into());
        self
    }

    pub fn transport(&self) -> &T {
        &self.transport
    }

    fn get(&self, req: &ApiRequest, what: impl FnOnce() -> String) -> Result<ApiResponse> {
        let resp = self.transport.get(req)?;
        match resp.status {
            200..=299 => Ok(resp),
            404 | 410 | 422 => Err(CorpusError::NotFound(what())),
            status => Err(CorpusError::Status { status, request: req.canonical() }),
        }
    }

    /// Runs `query` with the filters appended as qualifiers. Hits come back in
    /// platform order ranked 1..k.
    pub fn search_issues(&self, query: &SearchQuery, filters: &SearchFilters) -> Result<Vec<IssueHit>> {
        if filters.max_results == 0 || filters.max_results > MAX_SEARCH_RESULTS {
            return Err(CorpusError::BadArgument(format!(
                "max_results must lie in 1..={MAX_SEARCH_RESULTS}, got {}",
                filters.max_results
            )));
        }
        let mut q = query.render();
        if let Some(lang) = &filters.language {
            q.push_str(&format!(" language:{lang}"));
        }
        if let Some(state) = &filters.state {
            q.push_str(&format!(" state:{state}"));
        }
        let per_page = filters.max_results.min(PAGE_SIZE);
        let mut hits = Vec::new();
        for page in 1.. {
            let req = ApiRequest::new("/search/issues").param("q", &q).param("per_page", per_page).param("page", page);
            let resp: SearchJson = self.get(&req, || format!("search {q}"))?.json(&req)?;
            let got = resp.items.len();
            for item in resp.items {
                if hits.len() == filters.max_results {
                    break;
                }
                let issue = self.document_from_json(item, None)?;
                hits.push(IssueHit { issue, search_rank: hits.len() as u32 + 1 });
            }
            if hits.len() >= filters.max_results || got < per_page || hits.len() >= resp.total_count {
                break;
            }
        }
        Ok(hits)
    }

    fn document_from_json(&self, item: IssueJson, repo: Option<&RepoRef>) -> Result<IssueDocument> {
        let repo = match repo {
            Some(r) => r.clone(),
            None => item
                .repository_url
                .as_deref()
                .and_then(repo_from_api_url)
                .ok_or_else(|| CorpusError::Decode { request: "search".into(), reason: "item without repository_url".into() })?,
        };
        let mut doc = IssueDocument::new(IssueRef::new(repo.owner, repo.repo, item.number)?, item.title, item.body.unwrap_or_default());
        doc.state = if item.state == "closed" { IssueState::Closed } else { IssueState::Open };
        doc.num_comments = item.comments;
        doc.labels = item.labels.into_iter().map(|l| l.name).collect();
        doc.linked_patch_refs = linked_patch_refs(&doc, item.pull_request.is_some());
        Ok(doc)
    }

    fn repo_info(&self, repo: &RepoRef) -> Result<RepoJson> {
        if let Some(info) = self.repos.lock().unwrap_or_else(|p| p.into_inner()).get(repo) {
            return Ok(info.clone());
        }
        let req = ApiRequest::new(format!("/repos/{}/{}", repo.owner, repo.repo));
        let info: RepoJson = self.get(&req, || format!("repository {repo}"))?.json(&req)?;
        self.repos.lock().unwrap_or_else(|p| p.into_inner()).insert(repo.clone(), info.clone());
        Ok(info)
    }

    /// The issue with its comments, patch references and project language.
    pub fn fetch_issue(&self, issue: &IssueRef) -> Result<IssueDocument> {
        let base = format!("/repos/{}/{}/issues/{}", issue.owner, issue.repo, issue.number);
        let req = ApiRequest::new(&base);
        let item: IssueJson = self.get(&req, || format!("issue {issue}"))?.json(&req)?;
        let is_pull = item.pull_request.is_some();
        let mut doc = self.document_from_json(item, Some(&issue.project()))?;
        if doc.num_comments > 0 {
            for page in 1.. {
                let req = ApiRequest::new(format!("{base}/comments")).param("per_page", PAGE_SIZE).param("page", page);
                let comments: Vec<CommentJson> = self.get(&req, || format!("comments of {issue}"))?.json(&req)?;
                let n = comments.len();
                doc.comments.extend(comments.into_iter().map(|c| c.body.unwrap_or_default()));
                if n < PAGE_SIZE {
                    break;
                }
            }
        }
        doc.num_comments = doc.num_comments.max(doc.comments.len() as u32);
        doc.linked_patch_refs = linked_patch_refs(&doc, is_pull);
        doc.project_language = self.repo_info(&issue.project())?.language.unwrap_or_default();
        Ok(doc)
    }

    /// The first linked pull request or commit that resolves to a diff.
    pub fn fetch_patch(&self, issue: &IssueDocument) -> Result<Option<Patch>> {
        for raw in &issue.linked_patch_refs {
            let Some(patch_ref) = PatchRef::parse(raw) else { continue };
            match self.resolve_patch(issue, &patch_ref) {
                Ok(Some(patch)) => return Ok(Some(patch)),
                Ok(None) => log::warn!("{raw} linked from {} modifies no files", issue.issue_ref),
                Err(CorpusError::NotFound(what)) => log::warn!("skipping {raw} linked from {}: {what} not found", issue.issue_ref),
                Err(e) => return Err(e),
            }
        }
        Ok(None)
    }

    fn resolve_patch(&self, issue: &IssueDocument, patch_ref: &PatchRef) -> Result<Option<Patch>> {
        let files = match patch_ref {
            PatchRef::Pull(pr) => {
                let mut files = Vec::new();
                for page in 1.. {
                    let req = ApiRequest::new(format!("/repos/{}/{}/pulls/{}/files", pr.owner, pr.repo, pr.number))
                        .param("per_page", PAGE_SIZE)
                        .param("page", page);
                    let batch: Vec<FileJson> = self.get(&req, || format!("pull request {pr}"))?.json(&req)?;
                    let n = batch.len();
                    files.extend(batch);
                    if n < PAGE_SIZE {
                        break;
                    }
                }
                files
            }
            PatchRef::Commit { owner, repo, sha } => self.commit_files(owner, repo, sha)?,
            PatchRef::Hash(sha) => self.commit_files(&issue.issue_ref.owner, &issue.issue_ref.repo, sha)?,
        };
        let mut modified = Vec::new();
        for f in files.into_iter().filter(|f| f.status != "removed") {
            let new_content = match f.contents_url.as_deref().map(contents_request) {
                Some(Some(req)) => match self.get(&req, || format!("contents of {}", f.filename)) {
                    Ok(resp) => {
                        let blob: BlobJson = resp.json(&req)?;
                        decode_base64(&req, &blob.content)?
                    }
                    Err(CorpusError::NotFound(what)) => {
                        log::warn!("{what} not found");
                        String::new()
                    }
                    Err(e) => return Err(e),
                },
                _ => String::new(),
            };
            modified.push(ModifiedFile { path: f.filename, new_content, diff_hunks: f.patch.unwrap_or_default() });
        }
        if modified.is_empty() {
            return Ok(None);
        }
        Ok(Some(Patch { source_ref: patch_ref.to_string(), modified_files: modified }))
    }

    fn commit_files(&self, owner: &str, repo: &str, sha: &str) -> Result<Vec<FileJson>> {
        let req = ApiRequest::new(format!("/repos/{owner}/{repo}/commits/{sha}"));
        let commit: CommitJson = self.get(&req, || format!("commit {owner}/{repo}@{sha}"))?.json(&req)?;
        Ok(commit.files)
    }

    /// Files of `repo`'s default branch matching `include_globs`, cached by
    /// head commit.
    pub fn fetch_repo_snapshot<S: AsRef<str>>(&self, repo: &RepoRef, include_globs: &[S]) -> Result<Arc<RepoSnapshot>> {
        let globs = compile_globs(include_globs)?;
        let info = self.repo_info(repo)?;
        let branch_req = ApiRequest::new(format!("/repos/{}/{}/branches/{}", repo.owner, repo.repo, info.default_branch));
        let branch: BranchJson = self.get(&branch_req, || format!("branch {} of {repo}", info.default_branch))?.json(&branch_req)?;
        let head = branch.commit.sha;

        let mut hasher = Sha256::new();
        for g in include_globs {
            hasher.update(g.as_ref().as_bytes());
            hasher.update([0]);
        }
        let glob_digest = hex::encode(&hasher.finalize()[..6]);
        let cache_key = format!("{}/{}/{head}-{glob_digest}", repo.owner, repo.repo);
        if let Some(s) = self.snapshots.lock().unwrap_or_else(|p| p.into_inner()).get(&cache_key) {
            return Ok(Arc::clone(s));
        }
        let disk = self.cache_dir.as_ref().map(|d| d.join(format!("{cache_key}.json")));
        if let Some(path) = disk.as_ref().filter(|p| p.exists()) {
            let text = fs::read_to_string(path).map_err(|e| CorpusError::io(path, e))?;
            match serde_json::from_str::<RepoSnapshot>(&text) {
                Ok(snapshot) => return Ok(self.remember(cache_key, snapshot)),
                Err(e) => log::warn!("ignoring corrupt snapshot cache {}: {e}", path.display()),
            }
        }

        let tree_req = ApiRequest::new(format!("/repos/{}/{}/git/trees/{head}", repo.owner, repo.repo)).param("recursive", 1);
        let tree: TreeJson = self.get(&tree_req, || format!("tree {head} of {repo}"))?.json(&tree_req)?;
        if tree.truncated {
            log::warn!("file tree of {repo} is truncated; snapshot is partial");
        }
        let mut files = BTreeMap::new();
        for entry in tree.tree.into_iter().filter(|e| e.kind == "blob" && globs.is_match(&e.path)) {
            let req = ApiRequest::new(format!("/repos/{}/{}/git/blobs/{}", repo.owner, repo.repo, entry.sha));
            let blob: BlobJson = self.get(&req, || format!("blob {} of {repo}", entry.path))?.json(&req)?;
            let content = if blob.encoding == "base64" { decode_base64(&req, &blob.content)? } else { blob.content };
            files.insert(entry.path, content);
        }
        let fetched_at = if self.transport.is_replay() { 0 } else { self.clock.epoch_secs() };
        let snapshot = RepoSnapshot { repo: repo.clone(), head, files, fetched_at };
        if let Some(path) = disk {
            if let Some(parent) = path.parent() {
                fs::create_dir_all(parent).map_err(|e| CorpusError::io(parent, e))?;
            }
            let text = serde_json::to_string(&snapshot).expect("snapshots serialize");
            fs::write(&path, text).map_err(|e| CorpusError::io(&path, e))?;
        }
        Ok(self.remember(cache_key, snapshot))
    }

    fn remember(&self, key: String, snapshot: RepoSnapshot) -> Arc<RepoSnapshot> {
        let snapshot = Arc::new(snapshot);
        self.snapshots.lock().unwrap_or_else(|p| p.into_inner()).insert(key, Arc::clone(&snapshot));
        snapshot
    }
}

/// Turns an absolute `contents_url` into a request relative to the API root.
fn contents_request(url: &str) -> Option<ApiRequest> {
    let parsed = reqwest::Url::parse(url).ok()?;
    let mut req = ApiRequest::new(parsed.path());
    for (k, v) in parsed.query_pairs() {
        req = req.param(&k, v);
    }
    Some(req)
}

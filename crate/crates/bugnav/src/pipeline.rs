//! The recommend pipeline: query generation and search online, then
//! similarity analyses and re-ranking of the returned candidates.

use std::path::PathBuf;

use bugnav_core::query::{build_query, QueryError, Strategy};
use bugnav_core::rank::{normalize_factors, quality_metrics_with, rank, Factors, QualityMetrics, RankInput, WeightConfig};
use bugnav_core::similarity::{similarity_vector, CandidateSide, DriverSide, SimilarityVector};
use bugnav_core::{IssueDocument, IssueHit, IssueRef, RepoContext, RepoRef};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::corpus::{GitHubClient, Transport, ARTIFACT_GLOBS, DEFAULT_SNAPSHOT_GLOBS};
use crate::error::CorpusError;
use crate::extract::build_repo_context;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DriverSource {
    Remote(IssueRef),
    /// An issue document stored as JSON.
    File(PathBuf),
}

#[derive(Debug, thiserror::Error)]
pub enum PipelineError {
    #[error("could not build a search query (strategies tried: {})", attempted_list(.attempted))]
    NoQuery { attempted: Vec<Strategy> },
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error(transparent)]
    Core(#[from] bugnav_core::Error),
}

fn attempted_list(s: &[Strategy]) -> String {
    if s.is_empty() {
        return "none".into();
    }
    s.iter().map(|s| s.as_str()).collect::<Vec<_>>().join(", ")
}

impl From<QueryError<CorpusError>> for PipelineError {
    fn from(e: QueryError<CorpusError>) -> Self {
        match e {
            QueryError::NoQuery { attempted } => Self::NoQuery { attempted },
            QueryError::Search(e) => Self::Corpus(e),
        }
    }
}

/// One recommended issue with everything that went into its score.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedCandidate {
    pub final_rank: u32,
    pub search_rank: u32,
    pub issue: IssueRef,
    pub title: String,
    pub url: String,
    pub score: f64,
    pub factors: Factors,
    /// Each factor multiplied by its weight.
    pub contributions: Factors,
    pub similarity: SimilarityVector,
    pub quality: QualityMetrics,
    pub patch: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Recommendation {
    pub driver: IssueRef,
    pub query: String,
    pub strategy: Strategy,
    /// Every query sent, in order.
    pub attempts: Vec<String>,
    pub weights: WeightConfig,
    pub candidates: Vec<RankedCandidate>,
}

impl Recommendation {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("recommendations serialize");
        s.push('\n');
        s
    }

    pub fn table(&self) -> String {
        let mut out = format!("driver: {}\nquery ({}): {}\n", self.driver, self.strategy, self.query);
        if self.candidates.is_empty() {
            out.push_str("no candidates\n");
            return out;
        }
        out.push_str(" rank  search   score  code   dep  perm    ui  len  cmts  issue\n");
        for c in &self.candidates {
            let f = &c.factors;
            out.push_str(&format!(
                "{:>5}  {:>6}  {:>6.4}  {:.2}  {:.2}  {:.2}  {:.2}  {:.2}  {:.2}  {} {}\n",
                c.final_rank, c.search_rank, c.score, f.code, f.dependency, f.permission, f.ui, f.issue_length, f.num_comment, c.issue, c.title
            ));
        }
        out
    }
}

pub fn issue_url(issue: &IssueRef) -> String {
    format!("https://github.com/{}/{}/issues/{}", issue.owner, issue.repo, issue.number)
}

fn load_driver<T: Transport>(client: &GitHubClient<T>, source: &DriverSource) -> Result<IssueDocument, PipelineError> {
    match source {
        DriverSource::Remote(r) => Ok(client.fetch_issue(r)?),
        DriverSource::File(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| CorpusError::Io { path: path.clone(), source: e })?;
            serde_json::from_str(&text)
                .map_err(|e| CorpusError::Decode { request: path.display().to_string(), reason: e.to_string() }.into())
        }
    }
}

/// Repository context, or an empty one when the repository is gone.
fn context_of<T: Transport>(client: &GitHubClient<T>, repo: &RepoRef, globs: &[&str]) -> Result<RepoContext, CorpusError> {
    match client.fetch_repo_snapshot(repo, globs) {
        Ok(s) => Ok(build_repo_context(&s)),
        Err(CorpusError::NotFound(what)) => {
            log::warn!("{what} not found; analyses needing {repo} are skipped");
            Ok(RepoContext::default())
        }
        Err(e) => Err(e),
    }
}

struct Analyzed {
    issue: IssueDocument,
    similarity: SimilarityVector,
    quality: QualityMetrics,
    patch: Option<String>,
}

fn analyze<T: Transport>(
    client: &GitHubClient<T>,
    driver: &IssueDocument,
    driver_ctx: &RepoContext,
    hit: &IssueHit,
    config: &RunConfig,
) -> Result<Analyzed, CorpusError> {
    let issue = match client.fetch_issue(&hit.issue.issue_ref) {
        Ok(doc) => doc,
        Err(CorpusError::NotFound(what)) => {
            log::warn!("{what} not found; using the search result");
            hit.issue.clone()
        }
        Err(e) => return Err(e),
    };
    let patch = client.fetch_patch(&issue)?;
    let ctx = context_of(client, &issue.issue_ref.project(), ARTIFACT_GLOBS)?;
    let similarity = similarity_vector(
        DriverSide { issue: driver, context: driver_ctx },
        CandidateSide { issue: &issue, context: &ctx, patch: patch.as_ref() },
        &config.similarity,
    );
    let mut quality = quality_metrics_with(&issue, config.keywords.iter().map(String::as_str));
    quality.has_fix_commit = patch.is_some();
    Ok(Analyzed { issue, similarity, quality, patch: patch.map(|p| p.source_ref) })
}

/// Recommends navigator issues for the driver, best first.
pub fn recommend<T: Transport>(
    client: &GitHubClient<T>,
    source: &DriverSource,
    config: &RunConfig,
) -> Result<Recommendation, PipelineError> {
    config.validate()?;
    let driver = load_driver(client, source)?;
    let filters = config.search_filters();
    let outcome = build_query(&driver, &config.query, |q| client.search_issues(q, &filters))?;
    let hits: Vec<IssueHit> = outcome
        .hits
        .into_iter()
        .filter(|h| h.issue.issue_ref != driver.issue_ref)
        .collect();

    let candidates = if hits.is_empty() {
        Vec::new()
    } else {
        let driver_ctx = context_of(client, &driver.issue_ref.project(), DEFAULT_SNAPSHOT_GLOBS)?;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.parallelism)
            .build()
            .map_err(|e| CorpusError::BadArgument(e.to_string()))?;
        let analyzed: Vec<Analyzed> = pool.install(|| {
            hits.par_iter().map(|h| analyze(client, &driver, &driver_ctx, h, config)).collect::<Result<_, _>>()
        })?;
        let inputs = hits
            .iter()
            .zip(analyzed)
            .map(|(h, a)| RankInput {
                factors: normalize_factors(&a.quality, &a.similarity, &config.caps),
                search_rank: h.search_rank,
                item: a,
            })
            .collect();
        rank(inputs, &config.weights)?
            .into_iter()
            .map(|r| RankedCandidate {
                final_rank: r.final_rank,
                search_rank: r.search_rank,
                url: issue_url(&r.item.issue.issue_ref),
                issue: r.item.issue.issue_ref,
                title: r.item.issue.title,
                score: r.score,
                contributions: r.factors.contributions(&config.weights),
                factors: r.factors,
                similarity: r.item.similarity,
                quality: r.item.quality,
                patch: r.item.patch,
            })
            .collect()
    };

    Ok(Recommendation {
        driver: driver.issue_ref,
        query: outcome.query.render(),
        strategy: outcome.query.strategy(),
        attempts: outcome.attempts.iter().map(|q| q.render()).collect(),
        weights: config.weights,
        candidates,
    })
}

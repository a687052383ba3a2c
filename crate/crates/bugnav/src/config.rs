//! Run configuration: a TOML file overlaid by command-line flags.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use bugnav_core::query::QueryConfig;
use bugnav_core::rank::{NormalizationCaps, WeightConfig, DEFAULT_KEYWORDS};
use bugnav_core::similarity::SimilarityConfig;
use serde::{Deserialize, Serialize};

use crate::corpus::{
    Gatekeeper, GitHubClient, HttpTransport, RateLimiter, RecordingTransport, ReplayTransport, SearchFilters,
    SystemClock, Transport,
};
use crate::error::{CorpusError, Result};

pub const DEFAULT_API_URL: &str = "https://api.github.com";
pub const DEFAULT_TOKEN_ENV: &str = "GITHUB_TOKEN";

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Table,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Environment variable holding the API token.
    pub token_env: String,
    pub api_url: String,
    pub cache_dir: Option<PathBuf>,
    /// Replay recorded responses from here instead of using the network.
    pub fixture_dir: Option<PathBuf>,
    /// Record live responses here.
    pub record_dir: Option<PathBuf>,
    pub weights: WeightConfig,
    pub query: QueryConfig,
    pub similarity: SimilarityConfig,
    pub caps: NormalizationCaps,
    pub keywords: Vec<String>,
    pub max_candidates: usize,
    /// `None` searches every language.
    pub language: Option<String>,
    pub output: OutputFormat,
    /// Candidates processed concurrently.
    pub parallelism: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            token_env: DEFAULT_TOKEN_ENV.into(),
            api_url: DEFAULT_API_URL.into(),
            cache_dir: None,
            fixture_dir: None,
            record_dir: None,
            weights: WeightConfig::default(),
            query: QueryConfig::default(),
            similarity: SimilarityConfig::default(),
            caps: NormalizationCaps::default(),
            keywords: DEFAULT_KEYWORDS.iter().map(|s| s.to_string()).collect(),
            max_candidates: 10,
            language: Some("java".into()),
            output: OutputFormat::Table,
            parallelism: 4,
        }
    }
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| CorpusError::BadArgument(format!("config: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| CorpusError::io(path, e))?;
        Self::from_toml(&text)
    }

    pub fn is_replay(&self) -> bool {
        self.fixture_dir.is_some()
    }

    pub fn validate(&self) -> Result<()> {
        if self.fixture_dir.is_some() && self.record_dir.is_some() {
            return Err(CorpusError::BadArgument("fixture_dir (replay) and record_dir (live) are mutually exclusive".into()));
        }
        if !self.weights.is_valid() {
            return Err(CorpusError::BadArgument("weights must be finite and non-negative".into()));
        }
        if self.max_candidates == 0 || self.max_candidates > crate::corpus::MAX_SEARCH_RESULTS {
            return Err(CorpusError::BadArgument(format!("max_candidates must lie in 1..={}", crate::corpus::MAX_SEARCH_RESULTS)));
        }
        if self.parallelism == 0 {
            return Err(CorpusError::BadArgument("parallelism must be at least 1".into()));
        }
        Ok(())
    }

    pub fn search_filters(&self) -> SearchFilters {
        SearchFilters { language: self.language.clone(), state: Some("closed".into()), max_results: self.max_candidates }
    }

    /// Replay transport when `fixture_dir` is set, otherwise the live API
    /// behind the rate limiter, optionally recording.
    pub fn transport(&self) -> Result<Box<dyn Transport>> {
        self.validate()?;
        if let Some(dir) = &self.fixture_dir {
            return Ok(Box::new(ReplayTransport::open(dir)?));
        }
        let token = std::env::var(&self.token_env).ok().filter(|t| !t.is_empty());
        if token.is_none() {
            log::warn!("{} is not set; using anonymous rate limits", self.token_env);
        }
        let clock = Arc::new(SystemClock::default());
        let limiter = RateLimiter::for_token(token.is_some(), clock.clone());
        let live = Gatekeeper::new(HttpTransport::new(&self.api_url, token)?, limiter, clock);
        Ok(match &self.record_dir {
            Some(dir) => Box::new(RecordingTransport::new(live, dir.clone())),
            None => Box::new(live),
        })
    }

    pub fn client(&self) -> Result<GitHubClient<Box<dyn Transport>>> {
        let mut client = GitHubClient::new(self.transport()?);
        if let Some(dir) = &self.cache_dir {
            client = client.with_cache_dir(dir);
        }
        Ok(client)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_toml_keeps_defaults() {
        let c = RunConfig::from_toml("max_candidates = 20\n[weights]\nw_code = 0.5\n[query]\nn_threshold = 3\n").unwrap();
        assert_eq!(c.max_candidates, 20);
        assert_eq!(c.weights.w_code, 0.5);
        assert_eq!(c.weights.w_dep, 0.2142);
        assert_eq!(c.query.n_threshold, 3);
        assert_eq!(c.query.title_qualifier, "in:title");
        assert_eq!(c.language.as_deref(), Some("java"));
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(RunConfig::from_toml("max_candidate = 20").is_err());
    }

    #[test]
    fn replay_and_record_conflict() {
        let c = RunConfig { fixture_dir: Some("a".into()), record_dir: Some("b".into()), ..Default::default() };
        assert!(c.validate().is_err());
    }

    #[test]
    fn negative_weight_rejected() {
        let mut c = RunConfig::default();
        c.weights.w_ui = -1.0;
        assert!(c.validate().is_err());
    }
}

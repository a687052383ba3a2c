use std::collections::BTreeMap;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{CorpusError, Result};

/// A GET against the platform REST API, relative to its base URL.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ApiRequest {
    pub path: String,
    pub query: Vec<(String, String)>,
}

impl ApiRequest {
    pub fn new(path: impl Into<String>) -> Self {
        Self { path: path.into(), query: Vec::new() }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.query.push((key.to_string(), value.to_string()));
        self
    }

    /// `GET path?k=v&...` with parameters sorted, independent of insertion order.
    pub fn canonical(&self) -> String {
        let mut q = self.query.clone();
        q.sort();
        let params: Vec<String> = q.iter().map(|(k, v)| format!("{k}={v}")).collect();
        if params.is_empty() {
            format!("GET {}", self.path)
        } else {
            format!("GET {}?{}", self.path, params.join("&"))
        }
    }

    /// Short stable digest of [`ApiRequest::canonical`], used as fixture key.
    pub fn key(&self) -> String {
        let digest = Sha256::digest(self.canonical().as_bytes());
        hex::encode(&digest[..8])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApiResponse {
    pub status: u16,
    /// Lowercased header names; only the ones the client reads are kept.
    #[serde(default)]
    pub headers: BTreeMap<String, String>,
    #[serde(skip)]
    pub body: Vec<u8>,
}

/// Headers worth keeping from a live response.
pub const KEPT_HEADERS: &[&str] =
    &["link", "retry-after", "x-ratelimit-limit", "x-ratelimit-remaining", "x-ratelimit-reset", "x-ratelimit-resource"];

impl ApiResponse {
    pub fn ok(body: impl Into<Vec<u8>>) -> Self {
        Self { status: 200, headers: BTreeMap::new(), body: body.into() }
    }

    pub fn header(&self, name: &str) -> Option<&str> {
        self.headers.get(name).map(String::as_str)
    }

    pub fn json<T: serde::de::DeserializeOwned>(&self, req: &ApiRequest) -> Result<T> {
        serde_json::from_slice(&self.body)
            .map_err(|e| CorpusError::Decode { request: req.canonical(), reason: e.to_string() })
    }

    /// Wait requested by a rate-limit rejection, if this is one. `now_epoch`
    /// is the current Unix time in seconds.
    pub fn rate_limit_wait(&self, now_epoch: u64) -> Option<Duration> {
        if self.status != 403 && self.status != 429 {
            return None;
        }
        if let Some(secs) = self.header("retry-after").and_then(|v| v.trim().parse::<u64>().ok()) {
            return Some(Duration::from_secs(secs));
        }
        if self.header("x-ratelimit-remaining") == Some("0") {
            let reset = self.header("x-ratelimit-reset").and_then(|v| v.trim().parse::<u64>().ok()).unwrap_or(now_epoch);
            return Some(Duration::from_secs(reset.saturating_sub(now_epoch).max(1)));
        }
        (self.status == 429).then(|| Duration::from_secs(60))
    }
}

/// Anything that can answer an [`ApiRequest`]: the live API, a recording, a
/// replay of one.
pub trait Transport: Send + Sync {
    fn get(&self, req: &ApiRequest) -> Result<ApiResponse>;

    /// True when responses come from recorded fixtures.
    fn is_replay(&self) -> bool {
        false
    }
}

impl<T: Transport + ?Sized> Transport for Box<T> {
    fn get(&self, req: &ApiRequest) -> Result<ApiResponse> {
        (**self).get(req)
    }

    fn is_replay(&self) -> bool {
        (**self).is_replay()
    }
}

impl<T: Transport + ?Sized> Transport for std::sync::Arc<T> {
    fn get(&self, req: &ApiRequest) -> Result<ApiResponse> {
        (**self).get(req)
    }

    fn is_replay(&self) -> bool {
        (**self).is_replay()
    }
}

/// Live transport over the platform's REST API.
pub struct HttpTransport {
    client: reqwest::blocking::Client,
    base_url: String,
    token: Option<String>,
}

impl HttpTransport {
    pub fn new(base_url: impl Into<String>, token: Option<String>) -> Result<Self> {
        let client = reqwest::blocking::Client::builder()
            .user_agent(concat!("bugnav/", env!("CARGO_PKG_VERSION")))
            .timeout(Duration::from_secs(30))
            .build()
            .map_err(|e| CorpusError::Transport(e.to_string()))?;
        Ok(Self { client, base_url: base_url.into().trim_end_matches('/').to_string(), token })
    }
}

impl Transport for HttpTransport {
    fn get(&self, req: &ApiRequest) -> Result<ApiResponse> {
        let url = reqwest::Url::parse_with_params(&format!("{}{}", self.base_url, req.path), &req.query)
            .map_err(|e| CorpusError::Transport(e.to_string()))?;
        log::debug!("GET {url}");
        let mut builder = self
            .client
            .get(url)
            .header("Accept", "application/vnd.github+json")
            .header("X-GitHub-Api-Version", "2022-11-28");
        if let Some(token) = &self.token {
            builder = builder.bearer_auth(token);
        }
        let resp = builder.send().map_err(|e| CorpusError::Transport(e.to_string()))?;
        let status = resp.status().as_u16();
        let headers = resp
            .headers()
            .iter()
            .filter(|(name, _)| KEPT_HEADERS.contains(&name.as_str()))
            .filter_map(|(name, value)| Some((name.as_str().to_string(), value.to_str().ok()?.to_string())))
            .collect();
        let body = resp.bytes().map_err(|e| CorpusError::Transport(e.to_string()))?.to_vec();
        Ok(ApiResponse { status, headers, body })
    }
}

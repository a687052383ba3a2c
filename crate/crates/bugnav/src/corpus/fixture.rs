//! Record/replay of API interactions.
//!
//! A fixture directory holds `index.jsonl`, one line per recorded request,
//! and one sub-directory per request holding the raw response payload:
//!
//! ```text
//! fixtures/
//!   index.jsonl          {"key":"3f…","request":"GET /search/issues?…","status":200,"headers":{},"body":"3f…/body.json"}
//!   3f…/body.json
//! ```
//!
//! Keys are [`ApiRequest::key`] digests of the canonical request.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::io::{BufRead, BufReader};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use super::transport::{ApiRequest, ApiResponse, Transport};
use crate::error::{CorpusError, Result};

pub const INDEX_FILE: &str = "index.jsonl";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexEntry {
    pub key: String,
    pub request: String,
    pub status: u16,
    #[serde(default)]
    pub headers: BTreeMap<String, String>,
    /// Payload path relative to the fixture directory.
    pub body: String,
}

/// Serves responses from a fixture directory; never touches the network.
#[derive(Debug)]
pub struct ReplayTransport {
    dir: PathBuf,
    entries: HashMap<String, IndexEntry>,
}

impl ReplayTransport {
    pub fn open(dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref().to_path_buf();
        let index = dir.join(INDEX_FILE);
        let file = fs::File::open(&index).map_err(|e| CorpusError::io(&index, e))?;
        let mut entries = HashMap::new();
        for (n, line) in BufReader::new(file).lines().enumerate() {
            let line = line.map_err(|e| CorpusError::io(&index, e))?;
            if line.trim().is_empty() {
                continue;
            }
            let entry: IndexEntry = serde_json::from_str(&line).map_err(|e| CorpusError::Decode {
                request: format!("{}:{}", index.display(), n + 1),
                reason: e.to_string(),
            })?;
            entries.insert(entry.key.clone(), entry);
        }
        Ok(Self { dir, entries })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl Transport for ReplayTransport {
    fn get(&self, req: &ApiRequest) -> Result<ApiResponse> {
        let key = req.key();
        let entry = self
            .entries
            .get(&key)
            .ok_or_else(|| CorpusError::FixtureMissing { key: key.clone(), request: req.canonical() })?;
        let path = self.dir.join(&entry.body);
        let body = fs::read(&path).map_err(|e| CorpusError::io(&path, e))?;
        Ok(ApiResponse { status: entry.status, headers: entry.headers.clone(), body })
    }

    fn is_replay(&self) -> bool {
        true
    }
}

/// Accumulates interactions and writes them as a fixture directory.
#[derive(Debug)]
pub struct FixtureWriter {
    dir: PathBuf,
    entries: Mutex<BTreeMap<String, IndexEntry>>,
}

impl FixtureWriter {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into(), entries: Mutex::new(BTreeMap::new()) }
    }

    /// Stores one interaction and rewrites the index, sorted by key.
    pub fn add(&self, req: &ApiRequest, resp: &ApiResponse) -> Result<()> {
        let key = req.key();
        let body = format!("{key}/body.json");
        let payload_dir = self.dir.join(&key);
        fs::create_dir_all(&payload_dir).map_err(|e| CorpusError::io(&payload_dir, e))?;
        let payload = self.dir.join(&body);
        fs::write(&payload, &resp.body).map_err(|e| CorpusError::io(&payload, e))?;
        let entry = IndexEntry { key: key.clone(), request: req.canonical(), status: resp.status, headers: resp.headers.clone(), body };
        let mut entries = self.entries.lock().unwrap_or_else(|p| p.into_inner());
        entries.insert(key, entry);
        let mut index = String::new();
        for e in entries.values() {
            index.push_str(&serde_json::to_string(e).expect("index entries serialize"));
            index.push('\n');
        }
        let path = self.dir.join(INDEX_FILE);
        fs::write(&path, index).map_err(|e| CorpusError::io(&path, e))
    }
}

/// Passes requests through to `inner` and records every response.
pub struct RecordingTransport<T> {
    inner: T,
    writer: FixtureWriter,
}

impl<T: Transport> RecordingTransport<T> {
    pub fn new(inner: T, dir: impl Into<PathBuf>) -> Self {
        Self { inner, writer: FixtureWriter::new(dir) }
    }
}

impl<T: Transport> Transport for RecordingTransport<T> {
    fn get(&self, req: &ApiRequest) -> Result<ApiResponse> {
        let resp = self.inner.get(req)?;
        self.writer.add(req, &resp)?;
        Ok(resp)
    }
}

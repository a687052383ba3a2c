use std::path::PathBuf;
use std::time::Duration;

/// Failures talking to the platform or reading recorded fixtures.
#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("not found: {0}")]
    NotFound(String),
    #[error("rate limit exceeded, retry in {}s", wait.as_secs())]
    RateLimited { wait: Duration },
    #[error("transport error: {0}")]
    Transport(String),
    #[error("unexpected status {status} for {request}")]
    Status { status: u16, request: String },
    #[error("no recorded fixture for {request} (key {key})")]
    FixtureMissing { key: String, request: String },
    #[error("malformed response for {request}: {reason}")]
    Decode { request: String, reason: String },
    #[error("invalid argument: {0}")]
    BadArgument(String),
    #[error(transparent)]
    Invalid(#[from] bugnav_core::Error),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CorpusError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Self::Io { path: path.into(), source }
    }

    /// True for failures of the network or quota rather than of the data.
    pub fn is_transport(&self) -> bool {
        matches!(self, Self::RateLimited { .. } | Self::Transport(_) | Self::Status { .. } | Self::FixtureMissing { .. })
    }
}

pub type Result<T, E = CorpusError> = std::result::Result<T, E>;

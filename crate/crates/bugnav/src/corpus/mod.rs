//! Access to the issue tracker: search, issue threads, linked patches and
//! repository snapshots, behind a rate-limited and recordable transport.

mod fixture;
mod github;
mod miner;
mod ratelimit;
mod refs;
mod transport;

pub use fixture::{FixtureWriter, IndexEntry, RecordingTransport, ReplayTransport, INDEX_FILE};
pub use github::{
    compile_globs, GitHubClient, RepoSnapshot, SearchFilters, ARTIFACT_GLOBS, DEFAULT_SNAPSHOT_GLOBS,
    MAX_SEARCH_RESULTS,
};
pub use miner::{first_cross_project_link, mine_similar_pairs, SimilarPair, DEFAULT_KEYWORDS};
pub use ratelimit::{Clock, Gatekeeper, Quota, RateLimiter, SystemClock};
pub use refs::{is_commit_hash, issue_links, linked_patch_refs, PatchRef};
pub use transport::{ApiRequest, ApiResponse, HttpTransport, Transport, KEPT_HEADERS};

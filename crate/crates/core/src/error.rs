use alloc::string::String;

/// Validation failures raised by the core algorithms.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid issue reference `{0}`")]
    InvalidIssueRef(String),
    #[error("invalid dependency coordinate `{0}`")]
    InvalidDependency(String),
    #[error("query text is empty")]
    EmptyQuery,
    #[error("query is {len} characters, the platform accepts at most {max}")]
    QueryTooLong { len: usize, max: usize },
    #[error("title `{0}` leaves no usable words after stopword removal")]
    EmptySummary(String),
    #[error("candidates share search rank {0}")]
    DuplicateSearchRank(u32),
    #[error("dataset is empty")]
    EmptyDataset,
    #[error("dataset entry for {driver} is invalid: {reason}")]
    InvalidDatasetEntry { driver: String, reason: String },
    #[error("grid step {0} must lie in (0, 1] and divide 1 evenly")]
    InvalidGridStep(f64),
}

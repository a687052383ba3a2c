//! Pluggable similarity analyses between a driver issue and one candidate.

mod gst;
mod overlap;
mod vector;

pub use gst::{greedy_string_tiling, gst_similarity, Tile, DEFAULT_MIN_MATCH_LEN};
pub use overlap::overlap_coefficient;
pub use vector::{
    code_similarity, code_similarity_by, is_source_path, similarity_vector, Analysis, CandidateSide, DriverSide,
    SimilarityConfig, SimilarityVector,
};

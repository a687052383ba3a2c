//! IO side of the recommender: the GitHub client and fixture transports,
//! build-file and Android resource extraction, the end-to-end pipeline and
//! the command line front end.

pub mod corpus;
pub mod error;
pub mod extract;

pub use error::{CorpusError, Result};
pub mod config;
pub mod dataset;
pub mod pipeline;

pub use config::{OutputFormat, RunConfig};
pub use pipeline::{recommend, DriverSource, PipelineError, RankedCandidate, Recommendation};

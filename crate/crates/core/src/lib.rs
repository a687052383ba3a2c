//! Core algorithms for recommending a closed "navigator" issue from another
//! project that describes a bug similar to an open "driver" issue.
//!
//! The crate is `no_std` (it only needs `alloc`) and contains everything that
//! does not touch the network or the filesystem:
//!
//! * [`text`]: tokenization, stopword removal and Porter stemming.
//! * [`query`]: stack-trace parsing and the search query fallback ladder.
//! * [`code`]: an error-tolerant lexer for Java-family source files.
//! * [`similarity`]: overlap coefficient, greedy string tiling and the
//!   per-candidate similarity vector.
//! * [`mentions`]: matching artifact vocabularies against issue prose.
//! * [`rank`]: issue quality metrics, the weighted ranking score and the
//!   grid-search weight tuner.
//! * [`eval`]: Prec@k, MRR and side-by-side evaluation reports.
//!
//! Enable the `parallel` feature to evaluate the tuning grid on a rayon pool.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod code;
pub mod error;
pub mod eval;
pub mod mentions;
pub mod model;
pub mod query;
pub mod rank;
pub mod similarity;
pub mod text;

pub use error::Error;
pub use model::{IssueDocument, IssueHit, IssueRef, IssueState, ModifiedFile, Patch, RepoContext, RepoRef};

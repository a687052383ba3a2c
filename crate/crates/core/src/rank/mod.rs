//! Issue quality, the weighted ranking score and weight tuning.

mod quality;
mod score;
mod tune;

pub use quality::{normalize_factors, quality_metrics, quality_metrics_with, NormalizationCaps, QualityMetrics, DEFAULT_KEYWORDS};
pub use score::{rank, score, Factors, RankInput, Ranked, WeightConfig};
pub use tune::{grid_points, tune_weights, TuneResult};

use std::path::PathBuf;

use bugnav::config::RunConfig;
use bugnav::corpus::{GitHubClient, ReplayTransport};
use bugnav::pipeline::{recommend, DriverSource, PipelineError, Recommendation};
use bugnav::CorpusError;
use bugnav_core::query::Strategy;
use bugnav_core::rank::WeightConfig;
use bugnav_core::similarity::Analysis;
use bugnav_core::IssueRef;

fn fixtures(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn run(name: &str, driver: DriverSource, config: &RunConfig) -> Result<Recommendation, PipelineError> {
    let client = GitHubClient::new(ReplayTransport::open(fixtures(name)).unwrap());
    recommend(&client, &driver, config)
}

fn config_issue() -> DriverSource {
    DriverSource::Remote(IssueRef::new("lightbend", "config", 600).unwrap())
}

#[test]
fn geotools_pull_request_moves_from_fourth_to_first() {
    let rec = run("config_geotools", config_issue(), &RunConfig::default()).unwrap();
    assert_eq!(rec.query, "UTFDataFormatException encoded string too long in:body,comments");
    assert_eq!(rec.strategy, Strategy::StackTrace);
    assert_eq!(rec.candidates.len(), 10);
    let top = &rec.candidates[0];
    assert_eq!(top.issue.to_string(), "geotools/geotools#2600");
    assert_eq!((top.search_rank, top.final_rank), (4, 1));
    assert_eq!(top.patch.as_deref(), Some("geotools/geotools#2600"));
    let best_code = rec.candidates.iter().map(|c| c.similarity.code).fold(0.0, f64::max);
    assert_eq!(top.similarity.code, best_code);
    assert!(top.similarity.code > 0.0);
}

#[test]
fn config_has_no_dependency_analysis() {
    let rec = run("config_geotools", config_issue(), &RunConfig::default()).unwrap();
    for c in &rec.candidates {
        assert!(!c.similarity.applicable.contains(&Analysis::Dependency), "{}", c.issue);
        assert!(!c.similarity.applicable.contains(&Analysis::Permission));
        assert_eq!(c.factors.dependency, 0.0);
    }
}

#[test]
fn patch_resolution_paths() {
    let rec = run("config_geotools", config_issue(), &RunConfig::default()).unwrap();
    let find = |s: &str| rec.candidates.iter().find(|c| c.issue.to_string() == s).unwrap();
    assert_eq!(find("hazelcast/hazelcast#9045").patch.as_deref(), Some("3f9c2a1b7e"));
    assert!(find("dbeaver/dbeaver#4455").patch.as_deref().unwrap().starts_with("dbeaver/dbeaver@9a8b7c6d"));
    let neo = find("neo4j/neo4j#8890");
    assert_eq!(neo.patch.as_deref(), Some("neo4j/neo4j#8901"));
    assert!(!neo.similarity.applicable.contains(&Analysis::Code));
    assert_eq!(find("square/wire#512").patch, None);
}

#[test]
fn structured_output_is_byte_identical_across_runs() {
    let a = run("config_geotools", config_issue(), &RunConfig::default()).unwrap().to_json();
    let parallel = RunConfig { parallelism: 8, ..RunConfig::default() };
    let b = run("config_geotools", config_issue(), &parallel).unwrap().to_json();
    assert_eq!(a, b);
}

#[test]
fn zero_weights_reproduce_platform_order() {
    let config = RunConfig { weights: WeightConfig::from_array([0.0; 8]), ..RunConfig::default() };
    let rec = run("config_geotools", config_issue(), &config).unwrap();
    let order: Vec<u32> = rec.candidates.iter().map(|c| c.search_rank).collect();
    assert_eq!(order, (1..=10).collect::<Vec<_>>());
}

#[test]
fn contributions_sum_to_score() {
    let rec = run("config_geotools", config_issue(), &RunConfig::default()).unwrap();
    for c in &rec.candidates {
        let sum: f64 = c.contributions.to_array().iter().sum();
        assert!((sum - c.score).abs() < 1e-12);
    }
}

#[test]
fn shared_snowball_dependency_is_found() {
    let driver = DriverSource::Remote(IssueRef::new("zelandiya", "maui-server", 10).unwrap());
    let rec = run("maui_dl4j", driver, &RunConfig::default()).unwrap();
    assert_eq!(rec.query, "StringIndexOutOfBoundsException string index out of range in:body,comments");
    let top = &rec.candidates[0];
    assert_eq!(top.issue.to_string(), "deeplearning4j/deeplearning4j#31");
    assert_eq!(top.search_rank, 3);
    assert_eq!(top.similarity.dependency, 2.0 / 3.0);
}

#[test]
fn empty_search_gives_no_candidates() {
    let dir = fixtures("empty_search");
    let client = GitHubClient::new(ReplayTransport::open(dir.join("api")).unwrap());
    let rec = recommend(&client, &DriverSource::File(dir.join("issue.json")), &RunConfig::default()).unwrap();
    assert!(rec.candidates.is_empty());
    assert_eq!(rec.strategy, Strategy::SummaryUnscoped);
    assert_eq!(rec.attempts, ["Dark theme colors ignored in:title", "Dark theme colors ignored"]);
}

#[test]
fn unrecorded_request_fails_without_network() {
    let driver = DriverSource::Remote(IssueRef::new("lightbend", "config", 601).unwrap());
    let err = run("config_geotools", driver, &RunConfig::default()).unwrap_err();
    assert!(matches!(err, PipelineError::Corpus(CorpusError::FixtureMissing { .. })), "{err}");
}

#[test]
fn changed_query_settings_miss_the_recording() {
    let mut config = RunConfig::default();
    config.query.stack_trace_qualifier = String::new();
    let err = run("config_geotools", config_issue(), &config).unwrap_err();
    assert!(matches!(err, PipelineError::Corpus(CorpusError::FixtureMissing { .. })));
}

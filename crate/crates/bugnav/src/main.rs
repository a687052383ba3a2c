use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use bugnav::config::{OutputFormat, RunConfig};
use bugnav::corpus::{mine_similar_pairs, DEFAULT_KEYWORDS};
use bugnav::dataset::{load_dataset, to_jsonl};
use bugnav::pipeline::{recommend, DriverSource, PipelineError};
use bugnav::CorpusError;
use bugnav_core::eval::evaluate;
use bugnav_core::rank::{tune_weights, WeightConfig};
use bugnav_core::IssueRef;
use clap::{Args, Parser, Subcommand};

const EXIT_NO_CANDIDATES: u8 = 2;
const EXIT_QUERY_FAILED: u8 = 3;
const EXIT_TRANSPORT: u8 = 4;

/// Recommend closed issues from other projects that describe a bug similar
/// to an open issue.
#[derive(Debug, Parser)]
#[command(name = "bugnav", version)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// TOML run configuration; flags override it.
    #[arg(long, global = true, env = "BUGNAV_CONFIG")]
    config: Option<PathBuf>,
    /// Replay recorded API responses from this directory (no network).
    #[arg(long, global = true, conflicts_with = "record")]
    fixtures: Option<PathBuf>,
    /// Record live API responses into this directory.
    #[arg(long, global = true)]
    record: Option<PathBuf>,
    /// Repository snapshot cache.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,
    /// Candidates analyzed concurrently.
    #[arg(long, global = true)]
    parallelism: Option<usize>,
    /// Restrict searches to a repository language.
    #[arg(long, global = true, conflicts_with = "any_language")]
    language: Option<String>,
    /// Search repositories of every language.
    #[arg(long, global = true)]
    any_language: bool,
    /// Environment variable holding the API token.
    #[arg(long, global = true)]
    token_env: Option<String>,
    /// TOML file with weights (`w_code = 0.5` ...).
    #[arg(long, global = true)]
    weights: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Rank candidate navigator issues for a driver issue.
    Recommend {
        /// Driver issue as owner/repo#number.
        #[arg(required_unless_present = "issue_file", conflicts_with = "issue_file")]
        issue: Option<IssueRef>,
        /// Driver issue stored as a JSON document.
        #[arg(long)]
        issue_file: Option<PathBuf>,
        #[arg(long)]
        max_candidates: Option<usize>,
        /// Minimum hits before the query ladder stops.
        #[arg(long)]
        n_threshold: Option<usize>,
        /// Qualifier for stack-trace queries; empty searches everywhere.
        #[arg(long)]
        qualifier: Option<String>,
        /// Also write the output here.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Compare platform order with the re-ranked order on a labeled dataset.
    Evaluate {
        dataset: PathBuf,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Collect driver/navigator pairs from cross-project links.
    Mine {
        /// Phrase to search for; repeatable.
        #[arg(long = "keyword")]
        keywords: Vec<String>,
        /// Search results examined per keyword.
        #[arg(long, default_value_t = 100)]
        cap: usize,
        /// JSONL pair list.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Grid-search the similarity weights on a labeled dataset.
    Tune {
        dataset: PathBuf,
        #[arg(long, default_value_t = 0.0714)]
        grid_step: f64,
        /// TOML weights file.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        let error = e.into();
        let transport = |c: &CorpusError| c.is_transport();
        let code = match error.downcast_ref::<PipelineError>() {
            Some(PipelineError::NoQuery { .. }) => EXIT_QUERY_FAILED,
            Some(PipelineError::Corpus(c)) if transport(c) => EXIT_TRANSPORT,
            _ => match error.downcast_ref::<CorpusError>() {
                Some(c) if transport(c) => EXIT_TRANSPORT,
                _ => 1,
            },
        };
        Self { code, error }
    }
}

fn run_config(g: &GlobalArgs) -> anyhow::Result<RunConfig> {
    let mut c = match &g.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    if let Some(d) = &g.fixtures {
        c.fixture_dir = Some(d.clone());
        c.record_dir = None;
    }
    if let Some(d) = &g.record {
        c.record_dir = Some(d.clone());
        c.fixture_dir = None;
    }
    if let Some(d) = &g.cache_dir {
        c.cache_dir = Some(d.clone());
    }
    if let Some(f) = g.format {
        c.output = f;
    }
    if let Some(p) = g.parallelism {
        c.parallelism = p;
    }
    if let Some(l) = &g.language {
        c.language = Some(l.clone());
    }
    if g.any_language {
        c.language = None;
    }
    if let Some(t) = &g.token_env {
        c.token_env = t.clone();
    }
    if let Some(p) = &g.weights {
        c.weights = read_weights(p)?;
    }
    Ok(c)
}

fn read_weights(path: &Path) -> anyhow::Result<WeightConfig> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let w: WeightConfig = toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    anyhow::ensure!(w.is_valid(), "weights in {} must be finite and non-negative", path.display());
    Ok(w)
}

fn emit(text: &str, output: Option<&Path>) -> anyhow::Result<()> {
    print!("{text}");
    if let Some(p) = output {
        fs::write(p, text).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let mut config = run_config(&cli.global)?;
    match cli.command {
        Command::Recommend { issue, issue_file, max_candidates, n_threshold, qualifier, output } => {
            if let Some(n) = max_candidates {
                config.max_candidates = n;
            }
            if let Some(n) = n_threshold {
                config.query.n_threshold = n;
            }
            if let Some(q) = qualifier {
                config.query.stack_trace_qualifier = q;
            }
            let source = match (issue, issue_file) {
                (Some(r), _) => DriverSource::Remote(r),
                (None, Some(p)) => DriverSource::File(p),
                (None, None) => unreachable!("clap requires one of them"),
            };
            let client = config.client()?;
            let rec = recommend(&client, &source, &config)?;
            let text = match config.output {
                OutputFormat::Json => rec.to_json(),
                OutputFormat::Table => rec.table(),
            };
            emit(&text, output.as_deref())?;
            Ok(if rec.candidates.is_empty() { EXIT_NO_CANDIDATES } else { 0 })
        }
        Command::Evaluate { dataset, output } => {
            let d = load_dataset(&dataset)?;
            let report = evaluate(&d, &config.weights)?;
            let text = match config.output {
                OutputFormat::Json => serde_json::to_string_pretty(&report)? + "\n",
                OutputFormat::Table => report.table(),
            };
            emit(&text, output.as_deref())?;
            Ok(0)
        }
        Command::Mine { keywords, cap, output } => {
            let keywords =
                if keywords.is_empty() { DEFAULT_KEYWORDS.iter().map(|s| s.to_string()).collect() } else { keywords };
            let client = config.client()?;
            let pairs = mine_similar_pairs(&client, &keywords, cap, config.language.as_deref())?;
            let text = match config.output {
                OutputFormat::Json => to_jsonl(&pairs),
                OutputFormat::Table => {
                    pairs.iter().map(|p| format!("{}\t{}\t{}\n", p.driver, p.navigator, p.keyword)).collect()
                }
            };
            print!("{text}");
            if let Some(p) = output {
                fs::write(&p, to_jsonl(&pairs)).with_context(|| format!("writing {}", p.display()))?;
            }
            log::info!("{} pairs", pairs.len());
            Ok(0)
        }
        Command::Tune { dataset, grid_step, output } => {
            let d = load_dataset(&dataset)?;
            let result = tune_weights(&d, &config.weights, grid_step)?;
            let weights = toml::to_string(&result.weights)?;
            match config.output {
                OutputFormat::Json => println!("{}", serde_json::json!({ "weights": result.weights, "mrr": result.mrr, "evaluated": result.evaluated })),
                OutputFormat::Table => print!("# mrr = {}, {} grid points\n{weights}", result.mrr, result.evaluated),
            }
            if let Some(p) = output {
                fs::write(&p, &weights).with_context(|| format!("writing {}", p.display()))?;
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(Failure { code, error }) => {
            eprintln!("error: {error:#}");
            if let Some(CorpusError::RateLimited { wait }) = error.downcast_ref::<CorpusError>().or_else(|| {
                match error.downcast_ref::<PipelineError>() {
                    Some(PipelineError::Corpus(c)) => Some(c),
                    _ => None,
                }
            }) {
                eprintln!("hint: rerun in {}s or set a token to raise the quota", wait.as_secs());
            }
            ExitCode::from(code)
        }
    }
}

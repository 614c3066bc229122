//! `sdgmap`: map publication records to UN Sustainable Development Goals
//! with Boolean/proximity queries plus a thresholded TF-IDF classifier.
//!
//! Subcommands compose via files, so each workflow is a short shell
//! pipeline: `map` → `train` → `score` → `combine` → `report-provenance`,
//! with `evaluate`, `gate`, `sample`, `precision`, `recall` and the
//! query-development helpers alongside.
//!
//! Exit codes: 0 success, 1 usage error, 2 data error, 3 gate reject.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "sdgmap", version, about)]
pub struct Cli {
    /// Seed for every random choice (sampling, training)
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,

    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Output format on stdout
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

/// `name=path` pair for `evaluate`.
#[derive(Debug, Clone)]
pub struct NamedPath {
    pub name: String,
    pub path: PathBuf,
}

impl FromStr for NamedPath {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (name, path) = s
            .split_once('=')
            .ok_or_else(|| format!("expected name=path, got {s:?}"))?;
        if name.is_empty() {
            return Err(format!("empty name in {s:?}"));
        }
        Ok(NamedPath {
            name: name.to_string(),
            path: PathBuf::from(path),
        })
    }
}

#[derive(Debug, Args)]
pub struct TrainOpts {
    /// Gradient-descent iterations
    #[arg(long, default_value_t = 500)]
    pub iterations: u32,
    /// Gradient-descent step size
    #[arg(long, default_value_t = 0.5)]
    pub learning_rate: f64,
    /// L2 regularization strength
    #[arg(long, default_value_t = 1e-4)]
    pub l2: f64,
    /// Negatives sampled per positive
    #[arg(long, default_value_t = 10)]
    pub ratio: u32,
    /// Drop terms below this document frequency
    #[arg(long, default_value_t = 2)]
    pub min_df: u32,
    /// Vocabulary size cap
    #[arg(long, default_value_t = 50_000)]
    pub max_vocab: usize,
    /// Decision threshold stored with the model
    #[arg(long, default_value_t = 0.95)]
    pub theta: f64,
    /// Exclude full-text terms from the feature bag
    #[arg(long)]
    pub no_fulltext: bool,
    /// Exclude subject-area tokens from the feature bag
    #[arg(long)]
    pub no_subject_areas: bool,
}

#[derive(Subcommand)]
pub enum Command {
    /// Validate a corpus file and print its statistics
    Ingest {
        #[arg(long)]
        corpus: PathBuf,
    },
    /// Check a query bank and print every query in canonical form
    Parse {
        /// Bank file or directory of *.txt bank files
        #[arg(long)]
        queries: PathBuf,
    },
    /// Run a query bank over a corpus and write the mapping
    Map {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long)]
        queries: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Fit TF-IDF and per-SDG logistic models from query-mapping labels
    Train {
        #[arg(long)]
        corpus: PathBuf,
        /// Query mapping produced by `map` (the weak labels)
        #[arg(long)]
        mapping: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        opts: TrainOpts,
    },
    /// Emit per-SDG probabilities for every corpus record
    Score {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Union a query mapping with predictions at or above the threshold
    Combine {
        #[arg(long)]
        mapping: PathBuf,
        #[arg(long)]
        scores: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 0.95)]
        theta: f64,
    },
    /// Per-SDG counts of query- vs model-provenance assignments
    ReportProvenance {
        #[arg(long)]
        mapping: PathBuf,
        /// Include SDG 17 in the report (off by default)
        #[arg(long)]
        include_sdg17: bool,
        /// Also write `sdg,query_count,ml_count` rows for charting
        #[arg(long)]
        plot_data: Option<PathBuf>,
    },
    /// Micro/macro F1 matrix of mapping methods against validation datasets
    Evaluate {
        /// Method as name=mapping.jsonl (repeatable)
        #[arg(long = "method", required = true)]
        methods: Vec<NamedPath>,
        /// Dataset as name=dataset.jsonl (repeatable)
        #[arg(long = "dataset", required = true)]
        datasets: Vec<NamedPath>,
    },
    /// Apply the precision/recall acceptance gate (exit 3 on reject)
    Gate {
        #[arg(long)]
        precision: f64,
        #[arg(long)]
        recall: f64,
        /// Size of the reviewed sample
        #[arg(long)]
        sample: u64,
        #[arg(long, default_value_t = 0.90)]
        min_precision: f64,
        #[arg(long, default_value_t = 0.60)]
        min_recall: f64,
        #[arg(long, default_value_t = 100)]
        min_sample: u64,
    },
    /// Draw a review worksheet from the records mapped to one SDG
    Sample {
        #[arg(long)]
        mapping: PathBuf,
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=17))]
        sdg: u8,
        #[arg(long, default_value_t = 100)]
        n: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Estimate precision and agreement from a filled worksheet
    Precision {
        #[arg(long)]
        worksheet: PathBuf,
    },
    /// Fraction of a recall set covered by a mapping
    Recall {
        #[arg(long)]
        mapping: PathBuf,
        /// Recall set whose items all carry the target SDG
        #[arg(long)]
        dataset: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=17))]
        sdg: u8,
    },
    /// Rank candidate query terms from a positive record set
    SuggestTerms {
        #[arg(long)]
        corpus: PathBuf,
        /// Positives: records mapped to --sdg in this mapping
        #[arg(long, requires = "sdg")]
        mapping: Option<PathBuf>,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=17))]
        sdg: Option<u8>,
        /// Positives: file of record ids, one per line
        #[arg(long, conflicts_with = "mapping")]
        ids: Option<PathBuf>,
        #[arg(short, default_value_t = 30)]
        k: usize,
        /// Flag suggestions already used by this bank's queries for --sdg
        #[arg(long, requires = "sdg")]
        queries: Option<PathBuf>,
        /// Also rank author-keyword entries as candidate phrases
        #[arg(long)]
        phrases: bool,
    },
    /// Records one citation hop away from a result set
    ExpandCitations {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long, requires = "sdg")]
        mapping: Option<PathBuf>,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=17))]
        sdg: Option<u8>,
        #[arg(long, conflicts_with = "mapping")]
        ids: Option<PathBuf>,
    },
    /// Rank journals by their share of records mapped to one SDG
    JournalReport {
        #[arg(long)]
        mapping: PathBuf,
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=17))]
        sdg: u8,
    },
    /// Per-SDG comparison of two mappings
    Compare {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long, default_value = "a")]
        name_a: String,
        #[arg(long, default_value = "b")]
        name_b: String,
        /// Also write the table as CSV
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let ok = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let _ = e.print();
            return if ok { ExitCode::SUCCESS } else { ExitCode::from(1) };
        }
    };
    if let Some(threads) = cli.threads {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    match commands::run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

//! `ontokit` command-line front end.

mod commands;
mod config;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{DirectionName, ModeName, SamplingName, SettingName, TierName};

#[derive(Debug, Parser)]
#[command(
    name = "ontokit",
    version,
    about = "Ontology reasoning, verbalisation and alignment toolkit"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// TOML configuration file; explicit flags override its values.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Seed for every random choice of the run.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Upper bound on worker threads.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Suppress progress messages on standard error.
    #[arg(long, global = true)]
    pub quiet: bool,
    /// Where to write the JSON run report.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse an ontology and print its size; optionally re-serialise it.
    Parse {
        #[arg(long)]
        onto: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write all entailed named subsumptions as `sub<TAB>sup`.
    Classify {
        #[arg(long)]
        onto: PathBuf,
        #[arg(long, value_enum)]
        tier: Option<TierName>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Remove concepts while keeping the hierarchy among the rest.
    Prune {
        #[arg(long)]
        onto: PathBuf,
        /// File of IRIs, one per line.
        #[arg(long, conflicts_with = "keep", required_unless_present = "keep")]
        remove: Option<PathBuf>,
        /// File of IRIs to keep; every other concept is removed.
        #[arg(long)]
        keep: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Rewrite the TBox into normal forms.
    Normalise {
        #[arg(long)]
        onto: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Definition map of fresh names; defaults to `<out>.defs`.
        #[arg(long)]
        defs: Option<PathBuf>,
    },
    /// Write the classified taxonomy as `child<TAB>parent`.
    Taxonomy {
        #[arg(long)]
        onto: PathBuf,
        #[arg(long, value_enum)]
        tier: Option<TierName>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Project axioms into N-Triples.
    Project {
        #[arg(long)]
        onto: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Turn class expressions (one per line) into sentences.
    Verbalise {
        #[arg(long)]
        onto: PathBuf,
        #[arg(long)]
        expr: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        strict: bool,
    },
    /// Emit `iri<TAB>mode<TAB>text` context lines.
    Context {
        #[arg(long)]
        onto: PathBuf,
        /// IRIs to describe, one per line; defaults to every concept.
        #[arg(long)]
        concepts: Option<PathBuf>,
        #[arg(long, value_enum)]
        mode: Option<ModeName>,
        #[arg(long, value_enum)]
        direction: Option<DirectionName>,
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long, value_enum)]
        tier: Option<TierName>,
        #[arg(long)]
        strict: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lexical matching with extension and repair.
    Match {
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long)]
        kappa: Option<f64>,
        #[arg(long)]
        one_to_one: bool,
        #[arg(long)]
        no_extension: bool,
        #[arg(long)]
        no_repair: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Baseline: labels contained in one another.
    SubstringMatch {
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        out: PathBuf,
    },
    /// Global matching metrics, or ranking metrics with `--ranking`.
    Evaluate {
        #[arg(long, requires = "reference", required_unless_present = "ranking")]
        pred: Option<PathBuf>,
        #[arg(long = "ref")]
        reference: Option<PathBuf>,
        /// Reference mappings left out of both sides.
        #[arg(long)]
        ignore: Option<PathBuf>,
        /// Ranked candidate lists, gold in the second column.
        #[arg(long, conflicts_with = "pred")]
        ranking: Option<PathBuf>,
        #[arg(long, value_delimiter = ',')]
        hits: Option<Vec<usize>>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Split references into train/validation/test and sample test candidates.
    Split {
        #[arg(long = "ref")]
        reference: PathBuf,
        #[arg(long, value_enum)]
        setting: Option<SettingName>,
        #[arg(long)]
        out_dir: PathBuf,
        /// Target ontology; when given, ranking candidates are written for the test set.
        #[arg(long)]
        target: Option<PathBuf>,
        #[arg(long)]
        candidates: Option<usize>,
        #[arg(long, value_enum)]
        sampling: Option<SamplingName>,
        #[arg(long, value_enum)]
        tier: Option<TierName>,
    },
    /// Derive subsumption references from equivalence references.
    SubsumptionDataset {
        #[arg(long = "ref")]
        reference: PathBuf,
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
        #[arg(long, value_enum)]
        tier: Option<TierName>,
    },
}

#[derive(Debug, Args)]
pub struct Pair {
    #[arg(long)]
    pub source: PathBuf,
    #[arg(long)]
    pub target: PathBuf,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}

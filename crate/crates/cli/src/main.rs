//! `tsa`: config-driven, reproducible runs of the full targeted-sentiment
//! workflow. Exit codes: 0 success, 1 usage error, 2 data/runtime error.

mod commands;
mod manifest;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

fn version_string() -> &'static str {
    static VERSION: std::sync::OnceLock<String> = std::sync::OnceLock::new();
    VERSION.get_or_init(|| {
        format!(
            "{} (model format v{})",
            env!("CARGO_PKG_VERSION"),
            tsa_core::crf::MODEL_VERSION
        )
    })
}

#[derive(Parser)]
#[command(name = "tsa", about = "Targeted sentiment analysis toolkit", disable_version_flag = true)]
pub struct Cli {
    /// Print version and model-format version
    #[arg(long, short = 'V', action = clap::ArgAction::SetTrue)]
    version: bool,

    /// Master seed; every component derives its own seed from it
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    /// Worker-thread cap (default: logical cores)
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    cmd: Option<Cmd>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a synthetic corpus and its opinion lexicon
    Synth(SynthArgs),
    /// Split a corpus into train/dev/test files
    Split(SplitArgs),
    /// Dump scheme-derived token sequences (repr, POS)
    Tokenize(TokenizeArgs),
    /// Lexicon utilities
    Lexicon(LexiconCmd),
    /// Word-vector utilities
    Embed(EmbedCmd),
    /// K-Means clustering of word vectors
    Cluster(ClusterArgs),
    /// Train one CRF model
    Train(TrainArgs),
    /// Pipelined prediction with trained models
    Predict(PredictArgs),
    /// Score predictions against gold annotations
    Evaluate(EvaluateArgs),
    /// Baseline predictions (all-NP targets; majority or lexicon sentiment)
    Baseline(BaselineArgs),
    /// Approximate randomization significance test between two systems
    Sigtest(SigtestArgs),
    /// Train/evaluate across a grid of cluster counts
    SweepK(SweepKArgs),
    /// Re-execute the command recorded in a run manifest
    Rerun(RerunArgs),
}

#[derive(Args)]
pub struct SynthArgs {
    #[arg(long, default_value_t = 200)]
    pub n_posts: usize,
    /// Override the vocabulary seed (default: derived from --seed)
    #[arg(long)]
    pub vocab_seed: Option<u64>,
    /// Fraction of explicit targets carrying the definite article
    #[arg(long, default_value_t = 0.7)]
    pub definite_fraction: f64,
    #[arg(long)]
    pub out: PathBuf,
    /// Where to write the planted opinion lexicon (prior-list TSV)
    #[arg(long)]
    pub lexicon_out: Option<PathBuf>,
}

#[derive(Args)]
pub struct SplitArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Comma-separated train,dev,test fractions
    #[arg(long, default_value = "0.8,0.1,0.1")]
    pub ratios: String,
    #[arg(long, default_value = "stratified")]
    pub strategy: String,
    #[arg(long)]
    pub out_dir: PathBuf,
}

#[derive(Args)]
pub struct TokenizeArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub scheme: String,
    /// Restrict the dump to one post
    #[arg(long)]
    pub post_id: Option<String>,
    /// Write to a file instead of standard output
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct LexiconCmd {
    #[command(subcommand)]
    pub cmd: LexiconSub,
}

#[derive(Subcommand)]
pub enum LexiconSub {
    /// Parse a lexicon file and report entry statistics
    Check(LexiconCheckArgs),
}

#[derive(Args)]
pub struct LexiconCheckArgs {
    #[arg(long)]
    pub path: PathBuf,
    /// prior | scored | gloss
    #[arg(long)]
    pub kind: String,
    #[arg(long, default_value_t = 0.2)]
    pub threshold: f64,
}

#[derive(Args)]
pub struct EmbedCmd {
    #[command(subcommand)]
    pub cmd: EmbedSub,
}

#[derive(Subcommand)]
pub enum EmbedSub {
    /// Train skip-gram vectors on a corpus
    Train(EmbedTrainArgs),
    /// Validate an embedding file and rewrite it canonically
    Import(EmbedImportArgs),
}

#[derive(Args)]
pub struct EmbedTrainArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value = "lemma")]
    pub scheme: String,
    #[arg(long, default_value_t = 200)]
    pub dim: usize,
    #[arg(long, default_value_t = 5)]
    pub window: usize,
    #[arg(long, default_value_t = 5)]
    pub negatives: usize,
    #[arg(long, default_value_t = 5)]
    pub epochs: usize,
    #[arg(long, default_value_t = 1)]
    pub min_count: usize,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args)]
pub struct EmbedImportArgs {
    #[arg(long)]
    pub path: PathBuf,
    #[arg(long, default_value = "lemma")]
    pub scheme: String,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args)]
pub struct ClusterArgs {
    #[arg(long)]
    pub embeddings: PathBuf,
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value_t = 100)]
    pub max_iters: usize,
    #[arg(long, default_value = "lemma")]
    pub scheme: String,
    #[arg(long)]
    pub out: PathBuf,
}

/// Feature-family selection shared by train, predict, and sweep-k.
#[derive(Args, Clone)]
pub struct FeatureArgs {
    /// "basic" (word form + POS) or "best" (full linguistic set)
    #[arg(long, default_value = "basic")]
    pub features: String,
    /// Sentiment lexicon as path:kind[:threshold]; repeatable
    #[arg(long = "lexicon")]
    pub lexicons: Vec<String>,
    /// Cluster assignment TSV; enables cluster features
    #[arg(long)]
    pub clusters: Option<PathBuf>,
    /// Conjoin sentiment-model atoms with the previous label (bigram
    /// observation features instead of plain transitions)
    #[arg(long, action = clap::ArgAction::SetTrue)]
    pub prev_label_conjunctions: bool,
}

#[derive(Args, Clone)]
pub struct SchemeArg {
    /// surface | lemma | lemma_atb | lemma_d3
    #[arg(long, conflicts_with = "combined")]
    pub scheme: Option<String>,
    /// Combined pipeline: D3 targets, ATB sentiment
    #[arg(long, action = clap::ArgAction::SetTrue)]
    pub combined: bool,
}

#[derive(Args)]
pub struct TrainArgs {
    /// target | sentiment
    #[arg(long)]
    pub task: String,
    #[command(flatten)]
    pub scheme: SchemeArg,
    #[arg(long)]
    pub input: PathBuf,
    #[command(flatten)]
    pub features: FeatureArgs,
    #[arg(long, default_value_t = 1.0)]
    pub sigma: f64,
    #[arg(long, default_value_t = 300)]
    pub max_iters: usize,
    #[arg(long, default_value_t = 1)]
    pub min_feature_count: usize,
    /// Train the sentiment model on this target model's predictions
    /// instead of gold targets
    #[arg(long)]
    pub target_model: Option<PathBuf>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args)]
pub struct PredictArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub target_model: PathBuf,
    #[arg(long)]
    pub sentiment_model: PathBuf,
    #[command(flatten)]
    pub scheme: SchemeArg,
    #[command(flatten)]
    pub features: FeatureArgs,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args)]
pub struct EvaluateArgs {
    #[arg(long)]
    pub gold: PathBuf,
    #[arg(long)]
    pub predictions: PathBuf,
    /// Span matching mode; only "subset" is implemented ("overlap" is a
    /// reserved stub)
    #[arg(long, default_value = "subset")]
    pub match_mode: String,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args)]
pub struct BaselineArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// allnp | majority | lexicon (targets are always all-NP; this picks
    /// the sentiment assignment, allnp being an alias of majority)
    #[arg(long, default_value = "majority")]
    pub mode: String,
    /// Lexicon for the lexicon-vote mode, as path:kind[:threshold]
    #[arg(long)]
    pub lexicon: Option<String>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args)]
pub struct SigtestArgs {
    #[arg(long)]
    pub a: PathBuf,
    #[arg(long)]
    pub b: PathBuf,
    #[arg(long)]
    pub gold: PathBuf,
    #[arg(long, default_value = "target_f")]
    pub metric: String,
    #[arg(long, default_value_t = 10_000)]
    pub iters: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct SweepKArgs {
    #[arg(long)]
    pub embeddings: PathBuf,
    /// Comma-separated cluster counts
    #[arg(long)]
    pub grid: String,
    #[arg(long)]
    pub train: PathBuf,
    #[arg(long)]
    pub dev: PathBuf,
    #[command(flatten)]
    pub scheme: SchemeArg,
    #[command(flatten)]
    pub features: FeatureArgs,
    #[arg(long, default_value_t = 300)]
    pub max_iters: usize,
    #[arg(long)]
    pub out_dir: PathBuf,
}

#[derive(Args)]
pub struct RerunArgs {
    pub manifest: PathBuf,
}

fn main() {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    std::process::exit(run_argv(&argv));
}

/// Parses and runs one argument vector; used by both `main` and `rerun`.
pub fn run_argv(argv: &[String]) -> i32 {
    let mut full = vec!["tsa".to_string()];
    full.extend_from_slice(argv);
    let cli = match Cli::try_parse_from(&full) {
        Ok(cli) => cli,
        Err(e) => {
            // help output is a success, anything else is a usage error
            let code = if e.kind() == clap::error::ErrorKind::DisplayHelp {
                0
            } else {
                1
            };
            let _ = e.print();
            return code;
        }
    };
    if cli.version {
        println!("tsa {}", version_string());
        return 0;
    }
    let cmd = match cli.cmd {
        Some(cmd) => cmd,
        None => {
            eprintln!("error: a subcommand is required; see --help");
            return 1;
        }
    };
    let threads = cli.threads.unwrap_or_else(tsa_core::util::default_threads);
    let ctx = commands::Ctx {
        argv: argv.to_vec(),
        seed: cli.seed,
        threads,
    };
    let result = match cmd {
        Cmd::Synth(a) => commands::synth(&ctx, &a),
        Cmd::Split(a) => commands::split(&ctx, &a),
        Cmd::Tokenize(a) => commands::tokenize(&ctx, &a),
        Cmd::Lexicon(a) => match a.cmd {
            LexiconSub::Check(c) => commands::lexicon_check(&ctx, &c),
        },
        Cmd::Embed(a) => match a.cmd {
            EmbedSub::Train(t) => commands::embed_train(&ctx, &t),
            EmbedSub::Import(i) => commands::embed_import(&ctx, &i),
        },
        Cmd::Cluster(a) => commands::cluster(&ctx, &a),
        Cmd::Train(a) => commands::train(&ctx, &a),
        Cmd::Predict(a) => commands::predict(&ctx, &a),
        Cmd::Evaluate(a) => commands::evaluate(&ctx, &a),
        Cmd::Baseline(a) => commands::baseline(&ctx, &a),
        Cmd::Sigtest(a) => commands::sigtest(&ctx, &a),
        Cmd::SweepK(a) => commands::sweep_k(&ctx, &a),
        Cmd::Rerun(a) => return commands::rerun(&a),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

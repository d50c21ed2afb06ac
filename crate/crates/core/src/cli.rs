//! `finrel` command line: extract, evaluate, prepare, inspect.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Deserialize;

use crate::corpus::{self, AnnotatedDocument};
use crate::deptree::TreeView;
use crate::error::{Error, Result};
use crate::evalkit::{self, EvalConfig, MatchMode};
use crate::jsonl;
use crate::records::{self, Prediction};
use crate::relex;
use crate::semvec::{self, EmbeddingTable, LexiconConfig};

/// Seed used by `prepare` when none is given.
pub const DEFAULT_SEED: u64 = 20_210_601;

#[derive(Debug, Parser)]
#[command(
    name = "finrel",
    version,
    about = "Financial relation extraction over parsed news paragraphs"
)]
pub struct Cli {
    /// Log level (error, warn, info, debug, trace).
    #[arg(long, global = true, env = "FINREL_LOG")]
    pub log_level: Option<String>,

    /// TOML file with default option values; command-line flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Extract records from every document and write a prediction file.
    Extract(ExtractArgs),
    /// Score a prediction file against gold targets.
    Evaluate(EvaluateArgs),
    /// Split gold examples into deduplicated train/test files.
    Prepare(PrepareArgs),
    /// Print one document's parse and the heuristics that fired on it.
    Inspect(InspectArgs),
}

#[derive(Debug, Args)]
pub struct ExtractArgs {
    #[arg(long)]
    pub corpus: PathBuf,
    #[arg(long)]
    pub embeddings: Option<PathBuf>,
    #[arg(long)]
    pub lexicon: Option<PathBuf>,
    #[arg(long)]
    pub out: PathBuf,
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    #[arg(long)]
    pub gold: PathBuf,
    #[arg(long)]
    pub pred: PathBuf,
    #[arg(long, value_enum)]
    pub mode: Option<MatchMode>,
    /// Fuzzy similarity threshold.
    #[arg(long)]
    pub threshold: Option<f64>,
    /// Compare words with `,` and `|` still attached.
    #[arg(long)]
    pub keep_separators: bool,
    #[arg(long)]
    pub report: PathBuf,
    /// Optional per-example counters, one JSON object per line.
    #[arg(long)]
    pub breakdown: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PrepareArgs {
    #[arg(long)]
    pub gold: PathBuf,
    #[arg(long)]
    pub test_fraction: Option<f64>,
    /// Also write a balanced training subset.
    #[arg(long)]
    pub balanced: bool,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out_dir: PathBuf,
}

#[derive(Debug, Args)]
pub struct InspectArgs {
    #[arg(long)]
    pub corpus: PathBuf,
    #[arg(long)]
    pub id: String,
    /// Enables classifier traces.
    #[arg(long)]
    pub embeddings: Option<PathBuf>,
    #[arg(long)]
    pub lexicon: Option<PathBuf>,
}

/// Defaults read from `--config`.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub log_level: Option<String>,
    pub embeddings: Option<PathBuf>,
    pub lexicon: Option<PathBuf>,
    pub workers: Option<usize>,
    pub mode: Option<MatchMode>,
    pub threshold: Option<f64>,
    pub test_fraction: Option<f64>,
    pub seed: Option<u64>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        toml::from_str(&text).map_err(|e| Error::parse(path, 0, e.to_string()))
    }
}

/// Parses `args`, runs the command, and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

pub fn run(cli: Cli) -> Result<()> {
    let file = match &cli.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };
    init_logging(cli.log_level.as_deref().or(file.log_level.as_deref()));
    match cli.command {
        Command::Extract(a) => extract(a, &file),
        Command::Evaluate(a) => evaluate(a, &file),
        Command::Prepare(a) => prepare(a, &file),
        Command::Inspect(a) => inspect(a, &file),
    }
}

fn init_logging(level: Option<&str>) {
    let mut builder = env_logger::Builder::new();
    builder.parse_filters(level.unwrap_or("warn"));
    builder.target(env_logger::Target::Stderr);
    let _ = builder.try_init();
}

fn load_lexicon(path: Option<&Path>) -> Result<LexiconConfig> {
    match path {
        Some(p) => semvec::load_lexicon(p),
        None => Ok(LexiconConfig::default()),
    }
}

/// Predictions for `docs`, in input order, computed on `workers` threads.
pub fn predict(
    docs: &[AnnotatedDocument],
    table: &EmbeddingTable,
    lex: &LexiconConfig,
    workers: usize,
) -> Result<Vec<Prediction>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::InvalidArgument(format!("cannot start {workers} workers: {e}")))?;
    Ok(pool.install(|| {
        docs.par_iter()
            .map(|doc| {
                let recs = relex::extract(&TreeView::new(doc), table, lex);
                Prediction {
                    id: doc.id.clone(),
                    predicted_text: records::serialize(&recs),
                }
            })
            .collect()
    }))
}

fn extract(a: ExtractArgs, file: &FileConfig) -> Result<()> {
    let embeddings = a
        .embeddings
        .or_else(|| file.embeddings.clone())
        .ok_or_else(|| Error::InvalidArgument("extract needs --embeddings".into()))?;
    let lex = load_lexicon(a.lexicon.as_deref().or(file.lexicon.as_deref()))?;
    let table = semvec::load_embeddings(&embeddings)?;
    let docs = corpus::load_documents(&a.corpus)?;
    let workers = a
        .workers
        .or(file.workers)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    log::info!(
        "extracting from {} documents on {workers} workers",
        docs.len()
    );
    let preds = predict(&docs, &table, &lex, workers)?;
    records::write_predictions(&a.out, &preds)
}

fn evaluate(a: EvaluateArgs, file: &FileConfig) -> Result<()> {
    let cfg = EvalConfig {
        mode: a.mode.or(file.mode).unwrap_or(MatchMode::Exact),
        fuzzy_threshold: a.threshold.or(file.threshold).unwrap_or(0.90),
        strip_separators: !a.keep_separators,
    };
    cfg.validate()?;
    let gold = corpus::load_gold(&a.gold)?;
    let preds = records::load_predictions(&a.pred)?;
    let per_example = evalkit::score_corpus(&gold, &preds, &cfg)?;
    let report = evalkit::aggregate(per_example.iter().map(|(_, c)| *c));
    log::info!(
        "precision {:.4} recall {:.4} f1 {:.4}",
        report.precision,
        report.recall,
        report.f1
    );
    if let Some(path) = &a.breakdown {
        #[derive(serde::Serialize)]
        struct Row<'a> {
            id: &'a str,
            #[serde(flatten)]
            counts: evalkit::Counts,
        }
        let rows = per_example.iter().map(|(id, counts)| Row {
            id,
            counts: *counts,
        });
        jsonl::write_atomic(path, jsonl::to_string(rows).as_bytes())?;
    }
    jsonl::write_atomic(&a.report, report.to_json().as_bytes())
}

fn prepare(a: PrepareArgs, file: &FileConfig) -> Result<()> {
    let fraction = a.test_fraction.or(file.test_fraction).unwrap_or(0.2);
    let seed = a.seed.or(file.seed).unwrap_or(DEFAULT_SEED);
    let gold = corpus::load_gold(&a.gold)?;
    let split = corpus::split_train_test(&gold, fraction, seed)?;
    let balanced = if a.balanced {
        Some(corpus::balanced_subset(&split.train, seed)?)
    } else {
        None
    };
    fs::create_dir_all(&a.out_dir).map_err(|e| Error::io(&a.out_dir, e))?;
    corpus::write_gold(a.out_dir.join("train.jsonl"), &split.train)?;
    corpus::write_gold(a.out_dir.join("test.jsonl"), &split.test)?;
    if let Some(b) = balanced {
        corpus::write_gold(a.out_dir.join("balanced_train.jsonl"), &b.examples)?;
    }
    log::info!(
        "{} train / {} test examples (requested {})",
        split.train.len(),
        split.test.len(),
        split.requested_test
    );
    Ok(())
}

fn inspect(a: InspectArgs, file: &FileConfig) -> Result<()> {
    let docs = corpus::load_documents(&a.corpus)?;
    let doc = docs
        .iter()
        .find(|d| d.id == a.id)
        .ok_or_else(|| Error::InvalidArgument(format!("no document with id `{}`", a.id)))?;
    let classifier = match a.embeddings.or_else(|| file.embeddings.clone()) {
        Some(p) => Some((
            semvec::load_embeddings(p)?,
            load_lexicon(a.lexicon.as_deref().or(file.lexicon.as_deref()))?,
        )),
        None => None,
    };
    print!(
        "{}",
        render_inspection(doc, classifier.as_ref().map(|(t, l)| (t, l)))
    );
    Ok(())
}

/// Human-readable dump of a document and the heuristics that fired on it.
pub fn render_inspection(
    doc: &AnnotatedDocument,
    classifier: Option<(&EmbeddingTable, &LexiconConfig)>,
) -> String {
    let view = TreeView::new(doc);
    let mut out = String::new();
    let _ = writeln!(out, "document {}", doc.id);
    let _ = writeln!(out, "text: {}", doc.text);
    let _ = writeln!(out, "\ntokens:");
    let _ = writeln!(
        out,
        "{:>4} {:<16} {:<14} {:<6} {:<10} {:>4} {:>4}  {:<7} chunk",
        "i", "text", "lemma", "pos", "dep", "head", "sent", "entity"
    );
    for t in &doc.tokens {
        let ent = view
            .label_at(t.index)
            .map(|l| l.to_string())
            .unwrap_or_default();
        let chunk = view
            .noun_chunk_of(t.index)
            .map(|c| format!("[{},{})", c.start, c.end))
            .unwrap_or_default();
        let _ = writeln!(
            out,
            "{:>4} {:<16} {:<14} {:<6} {:<10} {:>4} {:>4}  {:<7} {}",
            t.index,
            t.text,
            t.lemma,
            format!("{:?}", t.pos).to_uppercase(),
            t.dep,
            t.head,
            t.sentence,
            ent,
            chunk
        );
    }
    let _ = writeln!(out, "\nedges:");
    for t in doc.tokens.iter().filter(|t| !t.is_root()) {
        let _ = writeln!(out, "  {} -{}-> {}", view.text(t.head), t.dep, t.text);
    }
    let _ = writeln!(out, "\nentities:");
    for e in &doc.entities {
        let _ = writeln!(
            out,
            "  {} [{}, {}) `{}` root {}",
            e.label,
            e.start,
            e.end,
            e.text,
            view.entity_root(e)
        );
    }
    let _ = writeln!(out, "\nnoun chunks:");
    for c in &doc.noun_chunks {
        let _ = writeln!(
            out,
            "  [{}, {}) `{}` root {}",
            c.start,
            c.end,
            doc.span_text(c.start, c.end),
            c.root
        );
    }
    let _ = writeln!(out, "\nrelations:");
    match classifier {
        Some((table, lex)) => {
            let ex = relex::extract_detailed(&view, table, lex);
            for r in &ex.relations {
                let _ = writeln!(out, "  {r}");
            }
            let _ = writeln!(out, "\nrecords:");
            for r in &ex.records {
                let why = r
                    .evidence
                    .as_ref()
                    .map(|b| {
                        format!(
                            " (nearest lexicon word `{}`, similarity {:.4})",
                            b.word, b.similarity
                        )
                    })
                    .unwrap_or_default();
                let _ = writeln!(out, "  {}|{why}", r.record);
            }
        }
        None => {
            for r in relex::relate_all(&view) {
                let _ = writeln!(out, "  {r}");
            }
        }
    }
    out
}

use std::fs::File;
use std::io::{self, BufRead, BufReader, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use flate2::read::MultiGzDecoder;
use shallow::{
    census, chunk_corpus, evaluate, format_brackets, format_census, format_key_values,
    format_report, parse_brackets, parse_trees, read_corpus, repair_tags, train_baseline,
    train_markov, write_corpus, BaselineModel, Chunker, Corpus, EvalConfig, HeadRuleTable,
    MarkovConfig, MarkovModel,
};

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_PARSE: u8 = 3;
const EXIT_MISMATCH: u8 = 4;

/// Text chunking toolkit. Files ending in `.gz` are decompressed on the
/// fly; `-` or a missing input means standard input.
#[derive(Parser)]
#[command(name = "shallow", version)]
struct Cli {
    /// More log output on stderr (repeat for more).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Io {
    /// Input file.
    input: Option<PathBuf>,
    /// Output file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    KeyValue,
}

#[derive(Subcommand)]
enum Command {
    /// Convert bracketed treebank parses to tagged columns.
    Convert {
        #[command(flatten)]
        io: Io,
        /// Head rule table replacing the built-in one.
        #[arg(long)]
        head_rules: Option<PathBuf>,
    },
    /// Turn one-line bracketed chunks (`[NP He/PRP ] ...`) into tagged columns.
    Encode {
        #[command(flatten)]
        io: Io,
    },
    /// Turn tagged columns into one-line bracketed chunks.
    Decode {
        #[command(flatten)]
        io: Io,
    },
    /// Rewrite ill-formed tag sequences into their well-formed reading.
    Repair {
        #[command(flatten)]
        io: Io,
    },
    /// Score predicted chunk tags against gold ones.
    Eval {
        #[arg(long)]
        gold: PathBuf,
        #[arg(long)]
        pred: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        beta: f64,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Train the most-frequent-tag-per-POS baseline.
    BaselineTrain {
        #[command(flatten)]
        io: Io,
        /// Where to write the model.
        #[arg(long)]
        model: PathBuf,
    },
    /// Train the Markov chunker.
    MarkovTrain {
        #[command(flatten)]
        io: Io,
        /// Where to write the model.
        #[arg(long)]
        model: PathBuf,
        #[arg(long, default_value_t = 0.1)]
        smoothing: f64,
        /// Minimum count of a (word, POS) pair to be modelled on its own.
        #[arg(long, default_value_t = 2, conflicts_with = "pos_only")]
        cutoff: usize,
        /// Ignore words and observe POS tags only.
        #[arg(long)]
        pos_only: bool,
    },
    /// Tag a corpus with a trained model of either kind.
    Tag {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        model: PathBuf,
    },
    /// Chunk type census of a tagged corpus.
    Stats {
        #[command(flatten)]
        io: Io,
    },
}

struct Failure {
    code: u8,
    message: String,
}

type Outcome<T = ()> = std::result::Result<T, Failure>;

fn exit_code(err: &shallow::Error) -> u8 {
    use shallow::Error::*;
    match err {
        Io(_) => EXIT_FAILURE,
        Config(_) => EXIT_USAGE,
        Mismatch { .. } => EXIT_MISMATCH,
        _ => EXIT_PARSE,
    }
}

fn failed(context: impl std::fmt::Display) -> impl FnOnce(shallow::Error) -> Failure {
    move |err| Failure {
        code: exit_code(&err),
        message: format!("{context}: {err}"),
    }
}

fn io_failed(context: impl std::fmt::Display) -> impl FnOnce(io::Error) -> Failure {
    move |err| Failure {
        code: EXIT_FAILURE,
        message: format!("{context}: {err}"),
    }
}

fn display(path: Option<&Path>) -> String {
    match path {
        Some(p) if p != Path::new("-") => p.display().to_string(),
        _ => "<stdin>".to_owned(),
    }
}

fn open(path: Option<&Path>) -> Outcome<Box<dyn BufRead>> {
    let raw: Box<dyn Read> = match path {
        Some(p) if p != Path::new("-") => Box::new(File::open(p).map_err(io_failed(p.display()))?),
        _ => Box::new(io::stdin()),
    };
    let gz = path.is_some_and(|p| p.extension().is_some_and(|e| e == "gz"));
    Ok(if gz {
        Box::new(BufReader::new(MultiGzDecoder::new(raw)))
    } else {
        Box::new(BufReader::new(raw))
    })
}

fn read_text(path: Option<&Path>) -> Outcome<String> {
    let mut text = String::new();
    open(path)?
        .read_to_string(&mut text)
        .map_err(io_failed(display(path)))?;
    Ok(text)
}

fn load_corpus(path: Option<&Path>) -> Outcome<Corpus> {
    read_corpus(open(path)?).map_err(failed(display(path)))
}

fn emit(out: Option<&Path>, text: &str) -> Outcome {
    let result = match out {
        Some(p) => std::fs::write(p, text),
        None => {
            let mut stdout = io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
        }
    };
    result.map_err(io_failed(
        out.map_or("<stdout>".to_owned(), |p| p.display().to_string()),
    ))
}

fn write_columns(out: Option<&Path>, corpus: &Corpus) -> Outcome {
    emit(out, &write_corpus(corpus).map_err(failed("output"))?)
}

enum Model {
    Baseline(BaselineModel),
    Markov(MarkovModel),
}

impl Model {
    fn load(path: &Path) -> Outcome<Model> {
        let text = read_text(Some(path))?;
        let model = if text.starts_with("# shallow markov model") {
            MarkovModel::from_text(&text).map(Model::Markov)
        } else {
            BaselineModel::from_text(&text).map(Model::Baseline)
        };
        model.map_err(failed(path.display()))
    }

    fn chunker(&self) -> &dyn Chunker {
        match self {
            Model::Baseline(m) => m,
            Model::Markov(m) => m,
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Convert { io, head_rules } => {
            let rules = match head_rules {
                Some(p) => {
                    HeadRuleTable::parse(&read_text(Some(&p))?).map_err(failed(p.display()))?
                }
                None => HeadRuleTable::default(),
            };
            let source = display(io.input.as_deref());
            let trees = parse_trees(&read_text(io.input.as_deref())?).map_err(failed(&source))?;
            let corpus = chunk_corpus(&trees, &rules).map_err(failed(&source))?;
            log::info!(
                "converted {} trees into {} sentences",
                trees.len(),
                corpus.len()
            );
            write_columns(io.out.as_deref(), &corpus)
        }
        Command::Encode { io } => {
            let source = display(io.input.as_deref());
            let mut sentences = Vec::new();
            for (i, line) in read_text(io.input.as_deref())?.lines().enumerate() {
                if !line.trim().is_empty() {
                    sentences
                        .push(parse_brackets(line).map_err(failed(format!("{source}:{}", i + 1)))?);
                }
            }
            write_columns(io.out.as_deref(), &Corpus::new(sentences))
        }
        Command::Decode { io } => {
            let corpus = load_corpus(io.input.as_deref())?;
            let mut text = String::new();
            for (i, sentence) in corpus.sentences.iter().enumerate() {
                text.push_str(&format_brackets(sentence).map_err(failed(format!("sentence {i}")))?);
                text.push('\n');
            }
            emit(io.out.as_deref(), &text)
        }
        Command::Repair { io } => {
            let corpus = load_corpus(io.input.as_deref())?;
            let repaired = corpus
                .sentences
                .iter()
                .map(|s| match s.tags() {
                    Some(tags) => s.with_tags(repair_tags(tags)),
                    None => Ok(s.clone()),
                })
                .collect::<shallow::Result<Corpus>>()
                .map_err(failed("repair"))?;
            write_columns(io.out.as_deref(), &repaired)
        }
        Command::Eval {
            gold,
            pred,
            beta,
            format,
            out,
        } => {
            let config = EvalConfig::new(beta).map_err(failed("--beta"))?;
            let gold_corpus = load_corpus(Some(&gold))?;
            let pred_corpus = load_corpus(Some(&pred))?;
            let report = evaluate(&gold_corpus, &pred_corpus, &config).map_err(failed(format!(
                "{} vs {}",
                gold.display(),
                pred.display()
            )))?;
            let text = match format {
                ReportFormat::Text => format_report(&report),
                ReportFormat::KeyValue => format_key_values(&report),
            };
            emit(out.as_deref(), &text)
        }
        Command::BaselineTrain { io, model } => {
            let corpus = load_corpus(io.input.as_deref())?;
            let trained = train_baseline(&corpus).map_err(failed(display(io.input.as_deref())))?;
            log::info!("baseline covers {} POS tags", trained.len());
            emit(Some(&model), &trained.to_text())
        }
        Command::MarkovTrain {
            io,
            model,
            smoothing,
            cutoff,
            pos_only,
        } => {
            let config = if pos_only {
                MarkovConfig::pos_only(smoothing)
            } else {
                MarkovConfig::new(smoothing, cutoff)
            }
            .map_err(failed("markov-train"))?;
            let corpus = load_corpus(io.input.as_deref())?;
            let trained =
                train_markov(&corpus, config).map_err(failed(display(io.input.as_deref())))?;
            emit(Some(&model), &trained.to_text())
        }
        Command::Tag { io, model } => {
            let model = Model::load(&model)?;
            let corpus = load_corpus(io.input.as_deref())?;
            let tagged = model
                .chunker()
                .tag_corpus(&corpus)
                .map_err(failed("tagging"))?;
            write_columns(io.out.as_deref(), &tagged)
        }
        Command::Stats { io } => {
            let corpus = load_corpus(io.input.as_deref())?;
            let counts = census(&corpus).map_err(failed(display(io.input.as_deref())))?;
            emit(io.out.as_deref(), &format_census(&counts))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure { code, message }) => {
            eprintln!("shallow: {message}");
            ExitCode::from(code)
        }
    }
}

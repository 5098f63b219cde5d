//! `fuzzyreport`: daily weather observations in, short report out.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use fuzzy_d2t::aggregator::AggregationPath;
use fuzzy_d2t::lexicalizer::MultiQuantifierMode;
use fuzzy_d2t::pipeline::{self, ErrorClass, PipelineError, PipelineOptions};
use fuzzy_d2t::realizer::OutputFormat;

const EXIT_USAGE: u8 = 1;
const EXIT_VALIDATION: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Html,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Aggregation {
    Structural,
    Content,
    Both,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Coverage,
    Specificity,
    Default,
}

#[derive(Debug, Parser)]
#[command(name = "fuzzyreport", version, about = "Generate a textual weather report from daily observations")]
struct Args {
    /// CSV file with header `date,temperature,precipitation,humidity`
    #[arg(long)]
    input: PathBuf,
    /// Knowledge base / configuration (TOML); the built-in one if omitted
    #[arg(long)]
    kb: Option<PathBuf>,
    /// Write the report here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long, value_enum, default_value = "structural")]
    aggregation: Aggregation,
    /// How two quantifiers over the same term are expressed
    #[arg(long, value_enum, default_value = "default")]
    mode: Mode,
    /// Print the candidate statements of every trend variable and exit
    #[arg(long)]
    dump_candidates: bool,
    /// Accepted for reproducible invocations; generation is deterministic
    #[arg(long)]
    seed: Option<u64>,
    /// Print each intermediate representation as JSON on standard error
    #[arg(long)]
    trace: bool,
    /// Where `--aggregation both` writes its comparison record
    #[arg(long)]
    comparison_out: Option<PathBuf>,
}

enum Failure {
    Pipeline(PipelineError),
    Io(String),
}

impl From<PipelineError> for Failure {
    fn from(e: PipelineError) -> Self {
        Failure::Pipeline(e)
    }
}

fn write_file(path: &PathBuf, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display())))
}

fn run(args: Args) -> Result<(), Failure> {
    let bundle = pipeline::load_bundle(args.kb.as_deref())?;
    let table = pipeline::load_table(&bundle, &args.input)?;

    if args.dump_candidates {
        let tsv = pipeline::candidate_table(&bundle, &table)?;
        return match &args.out {
            Some(p) => write_file(p, &tsv),
            None => {
                print!("{tsv}");
                Ok(())
            }
        };
    }

    let opts = PipelineOptions {
        format: match args.format {
            Format::Text => OutputFormat::Text,
            Format::Html => OutputFormat::Html,
        },
        aggregation: match args.aggregation {
            Aggregation::Structural => AggregationPath::Structural,
            Aggregation::Content => AggregationPath::Content,
            Aggregation::Both => AggregationPath::Both,
        },
        mode: match args.mode {
            Mode::Coverage => MultiQuantifierMode::Coverage,
            Mode::Specificity => MultiQuantifierMode::Specificity,
            Mode::Default => MultiQuantifierMode::Default,
        },
        trace: args.trace,
    };
    let output = pipeline::run(&bundle, &table, &opts)?;

    if args.trace {
        let mut err = std::io::stderr().lock();
        for record in &output.trace {
            let _ = writeln!(err, "{}", record.to_json_line());
        }
    }
    if let AggregationPath::Both = opts.aggregation {
        let path = args
            .comparison_out
            .clone()
            .unwrap_or_else(|| args.out.as_ref().map_or_else(|| PathBuf::from("comparison.json"), |o| o.with_extension("comparison.json")));
        match &output.comparison {
            Some(c) => write_file(&path, &format!("{}\n", c.to_json_pretty()))?,
            None => eprintln!("note: no two adjacent trends to compare; no comparison written"),
        }
    }
    match &args.out {
        Some(p) => write_file(p, &output.report),
        None => {
            print!("{}", output.report);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Pipeline(e)) => {
            eprintln!("{e}");
            ExitCode::from(match e.class {
                ErrorClass::Validation => EXIT_VALIDATION,
                ErrorClass::Internal => EXIT_INTERNAL,
            })
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error [output]: {msg}");
            ExitCode::from(EXIT_VALIDATION)
        }
    }
}

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use logfano::report::{run, Format, Mode, RunConfig, Source};
use logfano::Word;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Report,
    Certify,
    Sweep,
    ReducedWords,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Table,
}

/// Boundary divisors and log Fano certificates for Schubert varieties.
#[derive(Debug, Parser)]
#[command(name = "logfano", version)]
struct Cli {
    /// Builtin Cartan type, e.g. A3, B2, G2, A1~.
    #[arg(
        long = "type",
        conflicts_with = "cartan",
        required_unless_present = "cartan"
    )]
    cartan_type: Option<String>,
    /// JSON file {"rank": n, "cartan": [[...]]}.
    #[arg(long)]
    cartan: Option<PathBuf>,
    /// Comma-separated 1-based node indices.
    #[arg(long, allow_hyphen_values = true)]
    word: Option<Word>,
    /// Denominator M; must exceed every a_j (default: max a_j + 1)
    #[arg(long = "M")]
    m: Option<i64>,
    /// Longest element length visited by a sweep (required for infinite types)
    #[arg(long)]
    max_length: Option<usize>,
    /// Check every reduced word of every element in sweeps.
    #[arg(long)]
    all_words: bool,
    /// Element cap for enumerations.
    #[arg(long, env = "LOGFANO_CAP")]
    cap: Option<usize>,
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
    #[arg(value_enum)]
    mode: ModeArg,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let source = match (cli.cartan_type, cli.cartan) {
        (Some(t), _) => Source::Builtin(t),
        (None, Some(p)) => Source::CartanFile(p),
        (None, None) => unreachable!("clap enforces a source"),
    };
    let mode = match cli.mode {
        ModeArg::Report => Mode::Report,
        ModeArg::Certify => Mode::Certify,
        ModeArg::Sweep => Mode::Sweep,
        ModeArg::ReducedWords => Mode::ReducedWords,
    };
    let mut config = RunConfig::new(source, mode);
    config.word = cli.word;
    config.m = cli.m;
    config.max_length = cli.max_length;
    config.all_words = cli.all_words;
    config.cap = cli.cap;
    config.format = match cli.format {
        FormatArg::Json => Format::Json,
        FormatArg::Table => Format::Table,
    };
    let out = run(&config);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    ExitCode::from(out.code as u8)
}

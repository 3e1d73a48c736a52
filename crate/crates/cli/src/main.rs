mod commands;
mod input;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "knotsym", version, about = "Build and check symmetric knot diagrams")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    out: OutputOpts,
}

#[derive(Args, Clone)]
pub struct OutputOpts {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Shorthand for `--format json`.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write to this file instead of standard output.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
    /// Catalog file of `name dt:(...)` lines; the builtin catalog otherwise.
    #[arg(long, env = "KNOTSYM_CATALOG", global = true)]
    pub catalog: Option<PathBuf>,
}

impl OutputOpts {
    pub fn json(&self) -> bool {
        self.json || self.format == Format::Json
    }

    pub fn sink(&self) -> std::io::Result<Box<dyn Write>> {
        Ok(match &self.output {
            Some(p) => Box::new(std::io::BufWriter::new(std::fs::File::create(p)?)),
            None => Box::new(std::io::stdout().lock()),
        })
    }
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Build a diagram and print it as PD.
    Build(BuildArgs),
    /// Expand a quarter template into a doubly symmetric diagram.
    Expand(ExpandArgs),
    /// Determinant, Alexander, Jones, bracket and writhe.
    Invariants(InputArg),
    /// Structural and symmetry checks.
    Check(CheckArgs),
    /// Look a knot up in the catalog.
    Identify(InputArg),
    /// Build and check every spec in a manifest.
    Batch(BatchArgs),
    /// Random Reidemeister walks; invariants must not change.
    Fuzz(FuzzArgs),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
pub struct BuildSource {
    /// Braid word `<strands>: <letters>`, e.g. "3: 1 -2 1 -2".
    #[arg(long)]
    pub braid: Option<String>,
    /// DT code, e.g. "dt:(4 6 2)".
    #[arg(long)]
    pub dt: Option<String>,
    /// PD text, e.g. "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]".
    #[arg(long)]
    pub pd: Option<String>,
    /// Closure of (σ1 σ2^-1)^n.
    #[arg(long)]
    pub rosette: Option<i64>,
}

#[derive(Args)]
pub struct BuildArgs {
    #[command(flatten)]
    pub source: BuildSource,
    /// Reject links.
    #[arg(long)]
    pub knot_only: bool,
}

#[derive(Args)]
pub struct ExpandArgs {
    /// Template file.
    pub template: PathBuf,
    /// x-axis twists, comma or space separated.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    pub x: String,
    /// y-axis twists, comma or space separated.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    pub y: String,
    /// Switch one symmetric pair, e.g. "I,III:c1".
    #[arg(long)]
    pub switch: Option<String>,
}

#[derive(Args)]
pub struct InputArg {
    /// Diagram file, `-` for standard input, or an inline spec
    /// (braid:, dt:, pd:, rosette:, template:, union:).
    pub input: String,
}

#[derive(Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub input: InputArg,
    /// Necessary conditions for strong positive amphicheirality.
    #[arg(long)]
    pub spa: bool,
}

#[derive(Args)]
pub struct BatchArgs {
    /// Manifest with one spec per line; `#` starts a comment.
    pub manifest: PathBuf,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Args)]
pub struct FuzzArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Walks per base diagram.
    #[arg(long, default_value_t = 50)]
    pub walks: usize,
    /// Moves per walk.
    #[arg(long, default_value_t = 12)]
    pub steps: usize,
    /// Crossings allowed above the base diagram.
    #[arg(long, default_value_t = 6)]
    pub headroom: usize,
    /// Base diagrams; the first twenty catalog knots when omitted.
    pub inputs: Vec<String>,
}

/// What a command produced: text for the output sink and the exit code.
pub struct Report {
    /// `None` when the command already wrote its own output.
    pub body: Option<String>,
    pub code: u8,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.out.clone();
    let result = match cli.command {
        Command::Build(a) => commands::build(&a, &out),
        Command::Expand(a) => commands::expand(&a, &out),
        Command::Invariants(a) => commands::invariants(&a, &out),
        Command::Check(a) => commands::check(&a, &out),
        Command::Identify(a) => commands::identify(&a, &out),
        Command::Batch(a) => commands::batch(&a, &out),
        Command::Fuzz(a) => commands::fuzz(&a, &out),
    };
    match result {
        Ok(r) => {
            if let Some(body) = &r.body {
                if let Err(e) = emit(&out, body) {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            }
            ExitCode::from(r.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}

fn emit(out: &OutputOpts, body: &str) -> std::io::Result<()> {
    out.sink()?.write_all(body.as_bytes())
}

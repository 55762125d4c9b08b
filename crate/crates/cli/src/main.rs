//! `cobord`: Lazard bases, formal group laws and cobordism rings of
//! classifying spaces, as JSON or text.

mod cache;
mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use cache::TableSource;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Parser)]
#[command(name = "cobord", version, about = "Algebraic cobordism of classifying spaces, computed exactly")]
struct Cli {
    /// Output format; `fgl` prints text unless told otherwise.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Directory for cached Lazard tables.
    #[arg(long, global = true, env = "COBORD_CACHE_DIR")]
    cache_dir: Option<PathBuf>,

    /// Rebuild cached tables instead of reading them.
    #[arg(long, global = true)]
    rebuild_cache: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Ranks and canonical basis of the Lazard ring.
    Lazard(LazardArgs),
    /// A formal group law, its inverse and n-series.
    Fgl(FglArgs),
    /// A presentation of the cobordism ring of BT, BGL_n or BSL_n.
    Ring(RingArgs),
    /// Symmetric-group invariants in the cobordism of BT_n.
    Invariants(InvariantArgs),
    /// Run the consistency checks and print the report.
    Check(CheckArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct LazardArgs {
    #[arg(long, default_value_t = 4)]
    pub max_codegree: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LawChoice {
    Universal,
    Additive,
    Multiplicative,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FglArgs {
    #[arg(long, default_value_t = 3)]
    pub order: u32,
    #[arg(long, value_enum, default_value_t = LawChoice::Universal)]
    pub law: LawChoice,
    /// Also print the formal inverse.
    #[arg(long)]
    pub inverse: bool,
    /// Also print the k-series.
    #[arg(long, allow_negative_numbers = true)]
    pub n_series: Option<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Group {
    Torus,
    Gl,
    Sl,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Theory {
    Cobordism,
    Chow,
    Ktheory,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct RingArgs {
    #[arg(long, value_enum, default_value_t = Group::Torus)]
    pub group: Group,
    #[arg(long, default_value_t = 1)]
    pub rank: usize,
    /// Truncation degree in the Chern classes.
    #[arg(long, default_value_t = 3)]
    pub t_degree: u32,
    /// Graded pieces to list; all of 0..=t-degree by default.
    #[arg(long, allow_negative_numbers = true, value_delimiter = ',')]
    pub degree: Vec<i64>,
    #[arg(long, value_enum, default_value_t = Theory::Cobordism)]
    pub specialize: Theory,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct InvariantArgs {
    #[arg(long, default_value_t = 2)]
    pub rank: usize,
    #[arg(long, default_value_t = 3)]
    pub t_degree: u32,
    /// Compare with the image of BGL_n.
    #[arg(long)]
    pub compare_gl: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CheckArgs {
    #[arg(long, default_value_t = cobord_core::checks::DEFAULT_SEED)]
    pub seed: u64,
    /// Random inputs per randomized case.
    #[arg(long, default_value_t = 6)]
    pub samples: usize,
    /// Only these checks, by number.
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<u32>,
}

/// What a command produced: a JSON result and its text rendering.
pub struct Output {
    pub query: serde_json::Value,
    pub result: serde_json::Value,
    pub text: String,
    pub success: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let default_format = match cli.command {
        Command::Fgl(_) => Format::Text,
        _ => Format::Json,
    };
    let format = cli.format.unwrap_or(default_format);
    let source = TableSource::new(cli.cache_dir.clone(), cli.rebuild_cache);
    let outcome = match &cli.command {
        Command::Lazard(a) => commands::lazard(a, &source),
        Command::Fgl(a) => commands::fgl(a, &source),
        Command::Ring(a) => commands::ring(a, &source),
        Command::Invariants(a) => commands::invariants(a, &source),
        Command::Check(a) => commands::check(a, &source),
    };
    match outcome {
        Ok(out) => {
            let body = match format {
                Format::Json => {
                    let doc = serde_json::json!({
                        "version": SCHEMA_VERSION,
                        "query": out.query,
                        "result": out.result,
                    });
                    serde_json::to_string_pretty(&doc).expect("JSON serializes") + "\n"
                }
                Format::Text => out.text,
            };
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(body.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            if out.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            }
        }
        Err(e) => {
            report_error(&e, format);
            ExitCode::from(1)
        }
    }
}

fn report_error(e: &anyhow::Error, format: Format) {
    let kind = e
        .chain()
        .find_map(|c| c.downcast_ref::<cobord_core::Error>())
        .map_or("io", |c| c.kind());
    let message = format!("{e:#}");
    match format {
        Format::Json => {
            let doc = serde_json::json!({
                "version": SCHEMA_VERSION,
                "error": {"kind": kind, "message": message},
            });
            eprintln!("{}", serde_json::to_string_pretty(&doc).expect("JSON serializes"));
        }
        Format::Text => eprintln!("error ({kind}): {message}"),
    }
}

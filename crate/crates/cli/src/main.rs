//! `linkhom`: command-line front end for link-homotopy invariants in
//! thickened surfaces.
//!
//! Exit codes: 0 success, 1 malformed input, 2 degenerate geometry,
//! 3 internal oracle mismatch.

mod commands;
mod error;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SurfaceArg {
    Klein,
    Torus,
}

impl SurfaceArg {
    pub fn surface(self) -> linkhom::Surface {
        match self {
            SurfaceArg::Klein => linkhom::Surface::Klein,
            SurfaceArg::Torus => linkhom::Surface::Torus,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "linkhom", version, about = "Link-homotopy invariants of two-component links in thickened surfaces")]
pub struct Cli {
    /// Surface for word arguments; for file inputs it must match the file.
    #[arg(long, global = true, value_enum)]
    pub surface: Option<SurfaceArg>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Free classes of the components and the crossings of a diagram.
    Classify {
        #[arg(long)]
        input: PathBuf,
    },
    /// Whether the discriminant component with code (ALPHA, BETA) is coorientable.
    Coorient {
        alpha: String,
        beta: String,
        /// Cross-check against a brute-force search over conjugators up to this size.
        #[arg(long)]
        bound: Option<i64>,
    },
    /// Canonical representative of a pair modulo simultaneous conjugation.
    CanonPair { alpha: String, beta: String },
    /// Degree-one linking value of a diagram.
    Lk {
        #[arg(long)]
        input: PathBuf,
    },
    /// Degree-two invariant of the end of a move script from a split link.
    I2 {
        #[arg(long)]
        moves: PathBuf,
    },
    /// Discriminant events of a move script.
    Events {
        #[arg(long)]
        moves: PathBuf,
    },
    /// Random checked scripts from a diagram, checking lk1 against path sums.
    Fuzz {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        scripts: usize,
        #[arg(long, default_value_t = 10)]
        length: usize,
        /// Allow height changes that cross the discriminant.
        #[arg(long)]
        events: bool,
    },
    /// Distance between two configurations given as JSON files.
    Distance { first: PathBuf, second: PathBuf },
    /// Whether the degree-one value is a link-homotopy invariant in a manifold.
    Applicability {
        /// One of klein, torus, s2xs1, rp2.
        #[arg(long)]
        manifold: String,
        class1: String,
        class2: String,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return if usage { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match commands::run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable")),
                Format::Text => print!("{}", out.text),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("linkhom: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

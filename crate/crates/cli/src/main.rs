use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use graded_morita::Field;
use graded_morita_cli::{analyze, morita, validate, Analysis, CliError, Level, Report, Workspace};

/// Graded algebras, modules and Morita contexts from JSON workspaces.
#[derive(Parser)]
#[command(name = "gmorita", version)]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Default field for objects that do not name one: Q or Fp:<p>.
    #[arg(long, global = true, value_parser = parse_field)]
    field: Option<Field>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the axioms of one object, given as KIND:KEY or KEY.
    Validate { file: PathBuf, target: String },
    /// Compute a derived object.
    Analyze {
        file: PathBuf,
        object: String,
        #[arg(value_enum)]
        what: Analysis,
        /// Second module for hom.
        #[arg(long = "with")]
        with: Option<String>,
        /// Write the workspace with the derived objects added.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify a Morita context.
    Morita {
        file: PathBuf,
        context: String,
        #[arg(value_enum)]
        level: Level,
        /// Comma-separated module keys to use as naturality samples.
        #[arg(long, value_delimiter = ',')]
        samples: Option<Vec<String>>,
    },
}

fn parse_field(s: &str) -> Result<Field, String> {
    Field::parse(s).map_err(|e| e.to_string())
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Validate { file, target } => validate(&Workspace::load(file, cli.field)?, target),
        Command::Analyze { file, object, what, with, out } => {
            let mut ws = Workspace::load(file, cli.field)?;
            let report = analyze(&mut ws, object, *what, with.as_deref())?;
            if let Some(out) = out {
                ws.write(out)?;
            }
            Ok(report)
        }
        Command::Morita { file, context, level, samples } => {
            morita(&Workspace::load(file, cli.field)?, context, *level, samples.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let echo: Vec<String> = std::env::args().skip(1).collect();
    match run(&cli) {
        Ok(mut report) => {
            report.command = echo;
            if cli.json {
                print!("{}", report.render_json());
            } else {
                print!("{}", report.render_text());
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            if cli.json {
                let v = serde_json::json!({"command": echo, "error": e.to_string(), "exit": e.exit_code()});
                println!("{}", serde_json::to_string_pretty(&v).expect("JSON values serialize"));
            }
            eprintln!("gmorita: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

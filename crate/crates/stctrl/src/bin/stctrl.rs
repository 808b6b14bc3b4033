//! Command-line front end: decide structural (target) controllability of a
//! network described by a JSON document, optionally cross-validated by the
//! Monte-Carlo oracle.
//!
//! Exit codes: 0 analysis completed (whatever the decision), 2 input error,
//! 3 internal numeric failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use stctrl::document::parse_network;
use stctrl::report::{render_text, run_analysis, AnalysisError, AnalysisOptions, Check};

#[derive(Parser)]
#[command(name = "stctrl", version, about = "Structural controllability of undirected networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a network document and print a report.
    Analyze {
        /// Path to the JSON network document.
        path: PathBuf,
        /// Property to decide; defaults to target when targets are known,
        /// full otherwise.
        #[arg(long, value_enum)]
        check: Option<CheckArg>,
        /// Target states (1-based, comma separated); overrides the document.
        #[arg(long, value_delimiter = ',')]
        targets: Option<Vec<usize>>,
        /// Cross-validate the verdict with seeded random realizations.
        #[arg(long)]
        verify: bool,
        /// Monte-Carlo trial count.
        #[arg(long, default_value_t = 20)]
        trials: usize,
        /// Master seed for the Monte-Carlo trials.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Relative rank tolerance override.
        #[arg(long)]
        tol: Option<f64>,
        /// Output format.
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
        /// Include the saturating-matching witness in the report.
        #[arg(long)]
        certificate: bool,
        /// Suggest input attachments that repair a failing verdict.
        #[arg(long)]
        augment: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckArg {
    Full,
    Target,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

const EXIT_INPUT: u8 = 2;
const EXIT_NUMERIC: u8 = 3;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err((code, message)) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}

fn run(cli: Cli) -> Result<(), (u8, String)> {
    match cli.command {
        Command::Analyze {
            path,
            check,
            targets,
            verify,
            trials,
            seed,
            tol,
            format,
            certificate,
            augment,
        } => {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| (EXIT_INPUT, format!("{}: {e}", path.display())))?;
            let doc = parse_network(&text).map_err(|e| (EXIT_INPUT, e.to_string()))?;
            let opts = AnalysisOptions {
                check: check.map(|c| match c {
                    CheckArg::Full => Check::Full,
                    CheckArg::Target => Check::Target,
                }),
                targets,
                verify,
                trials,
                seed,
                rank_rel: tol,
                certificate,
                augment,
            };
            let report = run_analysis(&doc, &opts).map_err(|e| match e {
                AnalysisError::Input(msg) => (EXIT_INPUT, msg),
                AnalysisError::Numeric(err) => (EXIT_NUMERIC, err.to_string()),
            })?;
            match format {
                FormatArg::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&report)
                        .expect("report serialization cannot fail")
                ),
                FormatArg::Text => print!("{}", render_text(&report)),
            }
            Ok(())
        }
    }
}

//! `cubic-dirac`: runs the verification suites and prints a report.
//!
//! Exit status is 0 when no check fails, 1 when some check fails and 2 for
//! usage errors.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cubic_dirac::report::Report;
use cubic_dirac::spectral::{Sl2Spectral, DEFAULT_TRUNCATION};
use cubic_dirac::suites;

#[derive(Parser)]
#[command(name = "cubic-dirac", version, about = "Exact checks of the Dirac operator embedding identity")]
struct Cli {
    /// Report format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites
    Verify {
        #[command(subcommand)]
        target: Target,
    },
    /// Representations of G'×K' in the kernel for E of highest weight 2m
    Table64 {
        /// Highest weight 2m of E (even)
        #[arg(long)]
        weight: usize,
        #[arg(long, default_value_t = DEFAULT_TRUNCATION)]
        truncation: usize,
    },
}

#[derive(Subcommand)]
enum Target {
    /// Every suite
    All {
        #[arg(long, default_value_t = DEFAULT_TRUNCATION)]
        truncation: usize,
    },
    /// Clifford relations, α-map and cubic elements
    Clifford,
    /// Spin modules and the multiplication map
    Spin,
    /// The SL(2,R)×SL(2,R) triple
    Triple,
    /// The embedding identity in both forms for E of highest weight 2m
    Embedding {
        #[arg(long)]
        weight: usize,
    },
    /// Block eigenvalues, kernels and discrete-series scans
    Spectral {
        /// Highest weight of E; odd weights run the parity checks only
        #[arg(long)]
        weight: usize,
        #[arg(long, default_value_t = DEFAULT_TRUNCATION)]
        truncation: usize,
    },
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn require_even(weight: usize) -> Result<(), ExitCode> {
    if weight % 2 == 1 {
        return Err(usage_error(&format!("--weight must be even here, got {weight}")));
    }
    Ok(())
}

fn require_truncation(n: usize) -> Result<(), ExitCode> {
    if n < 2 {
        return Err(usage_error("--truncation must be at least 2"));
    }
    Ok(())
}

fn context(truncation: usize) -> Result<(Sl2Spectral, cubic_dirac::spectral::CandidateScan), String> {
    let ctx = Sl2Spectral::new().map_err(|e| e.to_string())?;
    let scan = ctx.scan_candidates(truncation).map_err(|e| e.to_string())?;
    Ok((ctx, scan))
}

fn render(report: &Report, format: Format, rows: Option<serde_json::Value>) -> String {
    match format {
        Format::Text => {
            let mut s = String::new();
            if let Some(serde_json::Value::Array(rows)) = &rows {
                for r in rows {
                    s.push_str(&format!("row: {r}\n"));
                }
            }
            s + &report.to_text()
        }
        Format::Json => {
            let mut v = serde_json::to_value(report).expect("report serializes");
            if let Some(rows) = rows {
                v["rows"] = rows;
            }
            serde_json::to_string_pretty(&v).expect("report serializes") + "\n"
        }
    }
}

fn execute(cli: &Cli) -> Result<(Report, Option<serde_json::Value>), ExitCode> {
    let (checks, rows) = match &cli.command {
        Command::Verify { target } => match target {
            Target::All { truncation } => {
                require_truncation(*truncation)?;
                (suites::all_suites(*truncation), None)
            }
            Target::Clifford => (suites::clifford_suite(), None),
            Target::Spin => (suites::spin_suite(), None),
            Target::Triple => (suites::triple_suite(), None),
            Target::Embedding { weight } => {
                require_even(*weight)?;
                let ctx = Sl2Spectral::new().map_err(|e| usage_error(&e.to_string()))?;
                (suites::embedding_suite(&ctx.setup, *weight), None)
            }
            Target::Spectral { weight, truncation } => {
                require_truncation(*truncation)?;
                let (ctx, scan) = context(*truncation).map_err(|e| usage_error(&e))?;
                (suites::spectral_suite(&ctx, &scan, *weight), None)
            }
        },
        Command::Table64 { weight, truncation } => {
            require_even(*weight)?;
            require_truncation(*truncation)?;
            let (ctx, scan) = context(*truncation).map_err(|e| usage_error(&e))?;
            let (checks, row) = suites::table_suite(&ctx, &scan, *weight);
            (checks, row.map(|r| r.to_json_rows()))
        }
    };
    Ok((Report::from_checks(checks), rows))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (report, rows) = match execute(&cli) {
        Ok(r) => r,
        Err(code) => return code,
    };
    let text = render(&report, cli.format, rows);
    match &cli.out {
        Some(path) => {
            if let Err(e) = fs::write(path, &text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

//! Command-line front end: parses a presentation (from a file or the
//! built-in catalog) and dispatches to the library.
//!
//! Exit codes: 0 when every check passes, 1 when a mathematical verdict is
//! false or a hypothesis fails, 2 on input or parse errors.

use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use pbwforge::dsl::{self, PresentationFile};
use pbwforge::report::{self, ReportOptions};
use pbwforge::skewext::FiltrationMode;
use pbwforge::{catalog, Error};

#[derive(Parser)]
#[command(
    name = "pbwforge",
    about = "construct and verify skew PBW extensions: normal forms, filtrations, homogenization, Hilbert functions",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the structural checks: confluence, well-definedness, the
    /// σ-filtered verdict, connectedness, bijectivity.
    Check {
        /// Presentation file or catalog entry name.
        input: String,
        #[arg(long)]
        json: bool,
        /// Degree bound for dimension-style checks (default 10).
        #[arg(long)]
        degree: Option<usize>,
        /// Coefficient filtration: standard or trivial.
        #[arg(long)]
        filtration: Option<String>,
    },
    /// Print the homogenized presentation in DSL form.
    Homogenize { input: String },
    /// Print the associated graded presentation in DSL form.
    Gr { input: String },
    /// Bring an element expression into PBW normal form.
    Nf { input: String, expr: String },
    /// Dimension tables: Hilbert function of the (homogenized) presentation,
    /// filtration dimensions, associated-graded dimensions.
    Hilbert {
        input: String,
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// The full verification chain with tables and artifacts.
    Report {
        input: String,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long)]
        filtration: Option<String>,
    },
    /// List the shipped presentations, or print one as DSL source.
    Catalog { name: Option<String> },
}

fn main() -> ExitCode {
    // die quietly when the output pipe closes instead of panicking mid-write
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(all_pass) => {
            if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::Parse(_) | Error::UnknownEntry { .. } | Error::Structural(_) => 2,
                _ => 1,
            };
            ExitCode::from(code)
        }
    }
}

fn run(cli: Cli) -> Result<bool, Error> {
    match cli.command {
        Command::Check {
            input,
            json,
            degree,
            filtration,
        } => {
            let (source, file) = load_input(&input)?;
            let opts = options(&file, degree, filtration)?;
            let report = report::run_check(&file, &source, &opts);
            if json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.render_text());
            }
            Ok(report.all_pass())
        }
        Command::Report {
            input,
            json,
            degree,
            filtration,
        } => {
            let (source, file) = load_input(&input)?;
            let opts = options(&file, degree, filtration)?;
            let report = report::run_report(&file, &source, &opts);
            if json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.render_text());
            }
            Ok(report.all_pass())
        }
        Command::Homogenize { input } => {
            let (_, file) = load_input(&input)?;
            let ext = require_extension(&file)?;
            print!("{}", report::run_homogenize(ext)?);
            Ok(true)
        }
        Command::Gr { input } => {
            let (_, file) = load_input(&input)?;
            let ext = require_extension(&file)?;
            print!("{}", report::run_gr(ext)?);
            Ok(true)
        }
        Command::Nf { input, expr } => {
            let (_, file) = load_input(&input)?;
            let ext = require_extension(&file)?;
            println!("{}", report::run_nf(ext, &expr)?);
            Ok(true)
        }
        Command::Hilbert {
            input,
            degree,
            json,
        } => {
            let (source, file) = load_input(&input)?;
            let n = degree.or(file.options.degree).unwrap_or(10);
            let report = report::run_hilbert(&file, &source, n)?;
            if json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.render_text());
            }
            Ok(true)
        }
        Command::Catalog { name } => {
            match name {
                None => {
                    for entry in catalog::entries() {
                        println!("{:20} {}", entry.name, entry.summary);
                    }
                }
                Some(name) => {
                    let entry = catalog::find(&name).ok_or_else(|| Error::UnknownEntry {
                        name: name.clone(),
                        available: catalog::entries()
                            .iter()
                            .map(|e| e.name)
                            .collect::<Vec<_>>()
                            .join(", "),
                    })?;
                    print!("{}", entry.source);
                }
            }
            Ok(true)
        }
    }
}

/// Resolves the input as a file path first, then as a catalog entry name.
fn load_input(input: &str) -> Result<(String, PresentationFile), Error> {
    if Path::new(input).exists() {
        let text = std::fs::read_to_string(input)
            .map_err(|e| Error::Structural(format!("cannot read `{input}`: {e}")))?;
        Ok((input.to_string(), dsl::parse_or_error(&text)?))
    } else if catalog::find(input).is_some() {
        Ok((input.to_string(), catalog::load(input)?))
    } else {
        Err(Error::Structural(format!(
            "`{input}` is neither a readable file nor a catalog entry (try `pbwforge catalog`)"
        )))
    }
}

fn require_extension(file: &PresentationFile) -> Result<&pbwforge::ExtensionPresentation, Error> {
    file.extension
        .as_ref()
        .ok_or_else(|| Error::Structural("the input declares no extension block".into()))
}

fn options(
    file: &PresentationFile,
    degree: Option<usize>,
    filtration: Option<String>,
) -> Result<ReportOptions, Error> {
    let mut opts = ReportOptions::default().with_file(file);
    if let Some(n) = degree {
        opts.degree = n;
    }
    if let Some(mode) = filtration {
        opts.filtration = match mode.as_str() {
            "standard" => FiltrationMode::Standard,
            "trivial" => FiltrationMode::Trivial,
            other => {
                return Err(Error::Structural(format!(
                    "unknown filtration mode `{other}` (use standard or trivial)"
                )))
            }
        };
    }
    Ok(opts)
}

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use tightmaps::counts::{count_tight_method, slicings, BoundarySpec, Method};
use tightmaps::mapgen::{dart_cap_from_env, oracle_count};
use tightmaps::numeric::rat_to_string;
use tightmaps::verify::{run_suite, Suite};
use tightmaps::{Error, Report};

const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CAP: u8 = 3;

#[derive(Parser)]
#[command(
    name = "tightmaps",
    version,
    about = "Exact counts of planar tight maps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Number of planar tight maps with the given boundary lengths.
    Count {
        #[arg(long, value_delimiter = ',', required = true)]
        boundaries: Vec<u32>,
        /// auto, bipartite, quasi, general or unified.
        #[arg(long, default_value = "auto")]
        method: Method,
    },
    /// Number of planar maps (not necessarily tight) with the given boundary lengths.
    Slicings {
        #[arg(long, value_delimiter = ',', required = true)]
        boundaries: Vec<u32>,
    },
    /// Brute-force count by enumerating rotation systems.
    Oracle {
        #[arg(long, value_delimiter = ',', required = true)]
        boundaries: Vec<u32>,
        #[arg(long)]
        non_tight: bool,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Run a verification suite and print a JSON report.
    Verify {
        #[arg(long, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 6)]
        bound: u32,
    },
    /// Counts over every boundary tuple with entries at most `max`.
    Table {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        max: u32,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long, conflicts_with = "non_tight")]
        tight: bool,
        #[arg(long)]
        non_tight: bool,
        /// Write to a file instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Serialize)]
struct ValueOut<'a> {
    boundaries: &'a [u32],
    value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    method: Option<&'static str>,
}

#[derive(Serialize)]
struct OracleOut<'a> {
    boundaries: &'a [u32],
    value: String,
    tight: bool,
    darts: String,
    involutions: String,
}

#[derive(Serialize)]
struct RunReport<'a> {
    #[serde(flatten)]
    report: &'a Report,
    passed: bool,
    wall_time_ms: String,
}

enum Failure {
    Usage(String),
    Cap(String),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::DartCap { .. } | Error::SizeCap { .. } => Failure::Cap(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn print_json<T: Serialize>(v: &T) -> Result<(), Failure> {
    let s = serde_json::to_string(v).map_err(|e| Failure::Io(e.into()))?;
    writeln!(io::stdout().lock(), "{s}")?;
    Ok(())
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Count { boundaries, method } => {
            let spec = BoundarySpec::new(boundaries.clone())?;
            let (value, used) = count_tight_method(&spec, method)?;
            print_json(&ValueOut {
                boundaries: &boundaries,
                value: value.to_string(),
                method: Some(used.name()),
            })?;
        }
        Command::Slicings { boundaries } => {
            let spec = BoundarySpec::new(boundaries.clone())?;
            let value = slicings(&spec)?;
            print_json(&ValueOut {
                boundaries: &boundaries,
                value: value.to_string(),
                method: None,
            })?;
        }
        Command::Oracle {
            boundaries,
            non_tight,
            jobs,
        } => {
            let res = oracle_count(&boundaries, !non_tight, dart_cap_from_env(), jobs)?;
            print_json(&OracleOut {
                boundaries: &boundaries,
                value: rat_to_string(&res.value),
                tight: !non_tight,
                darts: res.darts.to_string(),
                involutions: res.involutions.to_string(),
            })?;
        }
        Command::Verify { suite, bound } => {
            let start = Instant::now();
            let report = run_suite(suite, bound, dart_cap_from_env())?;
            let passed = report.passed();
            print_json(&RunReport {
                report: &report,
                passed,
                wall_time_ms: start.elapsed().as_millis().to_string(),
            })?;
            if !passed {
                return Ok(EXIT_FAILED);
            }
        }
        Command::Table {
            n,
            max,
            format,
            tight: _,
            non_tight,
            output,
        } => {
            if n < 3 {
                return Err(Failure::Usage(format!("--n must be at least 3, got {n}")));
            }
            let rows = table(n, max, !non_tight)?;
            let mut out: Box<dyn Write> = match output {
                Some(p) => Box::new(File::create(p)?),
                None => Box::new(io::stdout().lock()),
            };
            match format {
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(out);
                    let mut header: Vec<String> = (1..=n).map(|i| format!("d{i}")).collect();
                    header.push("value".into());
                    w.write_record(&header).map_err(csv_err)?;
                    for (ds, v) in &rows {
                        let mut rec: Vec<String> = ds.iter().map(u32::to_string).collect();
                        rec.push(v.clone());
                        w.write_record(&rec).map_err(csv_err)?;
                    }
                    w.flush()?;
                }
                Format::Json => {
                    let items: Vec<ValueOut> = rows
                        .iter()
                        .map(|(ds, v)| ValueOut {
                            boundaries: ds,
                            value: v.clone(),
                            method: None,
                        })
                        .collect();
                    let s = serde_json::to_string(&items).map_err(|e| Failure::Io(e.into()))?;
                    writeln!(out, "{s}")?;
                }
            }
        }
    }
    Ok(0)
}

fn csv_err(e: csv::Error) -> Failure {
    Failure::Io(io::Error::other(e))
}

/// Rows in lexicographic order, skipping the all-zero tuple.
fn table(n: usize, max: u32, tight: bool) -> Result<Vec<(Vec<u32>, String)>, Error> {
    let mut rows = Vec::new();
    let mut ds = vec![0u32; n];
    loop {
        if ds.iter().any(|&d| d > 0) {
            let spec = BoundarySpec::new(ds.clone())?;
            let v = if tight {
                count_tight_method(&spec, Method::Auto)?.0
            } else {
                slicings(&spec)?
            };
            rows.push((ds.clone(), v.to_string()));
        }
        let Some(i) = (0..n).rev().find(|&i| ds[i] < max) else {
            return Ok(rows);
        };
        ds[i] += 1;
        for d in &mut ds[i + 1..] {
            *d = 0;
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Cap(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_CAP)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_FAILED)
        }
    }
}

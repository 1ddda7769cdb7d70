//! Command-line front end: `relcalc <command> <file> [--tol X] [--verify]
//! [--format json|text] [--batch DIR]`.
//!
//! Exit codes: 0 on success, 2 when the answer is that no solution exists,
//! 1 on any error.

pub mod dispatch;
pub mod problem;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Parser, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use crate::tolerance::Tolerance;
pub use dispatch::{dispatch, Command};
pub use problem::{parse, parse_str, ProblemError, ProblemFile};
pub use report::{Report, Status};

pub const TOL_ENV: &str = "RELCALC_TOL";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "relcalc",
    version,
    about = "Linear relations, multivalued projections and weighted least squares"
)]
#[command(group(ArgGroup::new("input").required(true).args(["file", "batch"])))]
pub struct Args {
    /// Operation to run.
    #[arg(value_enum)]
    pub command: Command,
    /// Problem file (JSON, version 1).
    pub file: Option<PathBuf>,
    /// Absolute rank tolerance; falls back to params.tol in the file, then RELCALC_TOL.
    #[arg(long, value_name = "X")]
    pub tol: Option<f64>,
    /// Also run the reference oracle and report its deviation.
    #[arg(long)]
    pub verify: bool,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Run the command on every `*.json` file in a directory.
    #[arg(long, value_name = "DIR", conflicts_with = "file")]
    pub batch: Option<PathBuf>,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_NO_SOLUTION: i32 = 2;

fn parse_tol(source: &str, text: &str) -> Result<f64, String> {
    match text.trim().parse::<f64>() {
        Ok(x) if x.is_finite() && x > 0.0 => Ok(x),
        _ => Err(format!("{source} must be a positive number, got '{text}'")),
    }
}

fn tolerance(flag: Option<f64>, file: &ProblemFile, env: Option<f64>) -> Tolerance {
    flag.or(file.params.tol)
        .or(env)
        .map(Tolerance::with_abs)
        .unwrap_or_default()
}

/// Runs one problem file; the error string is ready for printing.
pub fn run_file(
    cmd: Command,
    path: &Path,
    flag_tol: Option<f64>,
    env_tol: Option<f64>,
    verify: bool,
) -> Result<Report, String> {
    let file = parse(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let tol = tolerance(flag_tol, &file, env_tol);
    dispatch(cmd, &file, &tol, verify).map_err(|e| format!("{}: {e}", path.display()))
}

fn exit_code(result: &Result<Report, String>) -> i32 {
    match result {
        Ok(r) if r.status == Status::NoSolution => EXIT_NO_SOLUTION,
        Ok(_) => EXIT_OK,
        Err(_) => EXIT_ERROR,
    }
}

fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    }
}

fn batch_files(dir: &Path) -> std::io::Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    Ok(files)
}

/// Entry point shared by the binary and the tests. Returns the exit code.
pub fn run_from<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    if let Some(t) = args.tol {
        if !(t.is_finite() && t > 0.0) {
            let _ = writeln!(err, "error: --tol must be a positive number, got {t}");
            return EXIT_ERROR;
        }
    }
    let env_tol = match std::env::var(TOL_ENV) {
        Ok(text) => match parse_tol(TOL_ENV, &text) {
            Ok(x) => Some(x),
            Err(msg) => {
                let _ = writeln!(err, "error: {msg}");
                return EXIT_ERROR;
            }
        },
        Err(_) => None,
    };

    if let Some(dir) = &args.batch {
        let files = match batch_files(dir) {
            Ok(f) => f,
            Err(e) => {
                let _ = writeln!(err, "error: cannot read {}: {e}", dir.display());
                return EXIT_ERROR;
            }
        };
        let results: Vec<(String, Result<Report, String>)> = files
            .par_iter()
            .map(|p| {
                let name = p
                    .file_name()
                    .map(|n| n.to_string_lossy().into_owned())
                    .unwrap_or_default();
                (
                    name,
                    run_file(args.command, p, args.tol, env_tol, args.verify),
                )
            })
            .collect();
        let code = results
            .iter()
            .map(|(_, r)| exit_code(r))
            .max_by_key(|c| match *c {
                EXIT_ERROR => 2,
                EXIT_NO_SOLUTION => 1,
                _ => 0,
            })
            .unwrap_or(EXIT_OK);
        match args.format {
            Format::Json => {
                let items: Vec<_> = results
                    .iter()
                    .map(|(name, r)| match r {
                        Ok(rep) => json!({"file": name, "exit_code": exit_code(&Ok(rep.clone())), "report": rep}),
                        Err(msg) => json!({"file": name, "exit_code": EXIT_ERROR, "error": msg}),
                    })
                    .collect();
                let value = serde_json::to_value(items).expect("batch serializes");
                let _ = writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&value).expect("value serializes")
                );
            }
            Format::Text => {
                for (name, r) in &results {
                    let _ = writeln!(out, "== {name} ==");
                    match r {
                        Ok(rep) => {
                            let _ = write!(out, "{}", rep.to_text());
                        }
                        Err(msg) => {
                            let _ = writeln!(out, "error: {msg}");
                        }
                    }
                }
            }
        }
        for (_, r) in &results {
            if let Err(msg) = r {
                let _ = writeln!(err, "error: {msg}");
            }
        }
        return code;
    }

    let path = args.file.as_ref().expect("clap enforces file or batch");
    let result = run_file(args.command, path, args.tol, env_tol, args.verify);
    match &result {
        Ok(rep) => {
            let _ = write!(out, "{}", render(rep, args.format));
        }
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
        }
    }
    exit_code(&result)
}

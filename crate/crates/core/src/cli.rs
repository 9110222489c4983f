//! Command-line front end: argument parsing, traversal and dispatch.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::Parser;
use rayon::prelude::*;
use walkdir::WalkDir;

use crate::error::{Error, Result};
use crate::metrics::compute_metrics;
use crate::registry::identify_language;
use crate::report::{build_report, write_output, write_reports, FileReport};
use crate::scanner::{scan_file, strip_comments};

/// Bytes inspected for a NUL when deciding whether a file is binary.
const BINARY_SNIFF_LEN: usize = 8 * 1024;

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "commex", version, about = "Extract comments and line metrics from source files")]
pub struct Args {
    /// Source file or directory to scan
    pub input: PathBuf,

    /// Write output to FILE instead of standard output
    #[arg(short, long, value_name = "FILE")]
    pub output: Option<PathBuf>,

    /// Print the input file with all comments removed
    #[arg(long)]
    pub source_only: bool,

    /// Only scan the top level of a directory
    #[arg(long)]
    pub no_recurse: bool,

    /// Include dot-prefixed files and directories
    #[arg(long)]
    pub include_hidden: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Comments,
    SourceOnly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanConfig {
    pub input_path: PathBuf,
    pub output_path: Option<PathBuf>,
    pub mode: Mode,
    pub recurse: bool,
    pub include_hidden: bool,
}

impl ScanConfig {
    pub fn new(input_path: impl Into<PathBuf>) -> Self {
        ScanConfig {
            input_path: input_path.into(),
            output_path: None,
            mode: Mode::Comments,
            recurse: true,
            include_hidden: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let meta = fs::metadata(&self.input_path)
            .map_err(|_| Error::InputNotFound(self.input_path.clone()))?;
        if self.mode == Mode::SourceOnly && !meta.is_file() {
            return Err(Error::InvalidArguments(
                "--source-only requires a single input file".into(),
            ));
        }
        Ok(())
    }
}

impl From<Args> for ScanConfig {
    fn from(args: Args) -> Self {
        ScanConfig {
            input_path: args.input,
            output_path: args.output,
            mode: if args.source_only {
                Mode::SourceOnly
            } else {
                Mode::Comments
            },
            recurse: !args.no_recurse,
            include_hidden: args.include_hidden,
        }
    }
}

fn is_hidden(name: &std::ffi::OsStr) -> bool {
    name.to_string_lossy().starts_with('.')
}

/// Lists the files to scan, in path order. Symbolic links are not followed.
pub fn walk(input_path: &Path, config: &ScanConfig) -> Result<Vec<PathBuf>> {
    let meta = fs::symlink_metadata(input_path)
        .map_err(|_| Error::InputNotFound(input_path.to_path_buf()))?;
    if !meta.is_dir() {
        return Ok(vec![input_path.to_path_buf()]);
    }
    let mut walker = WalkDir::new(input_path).follow_links(false);
    if !config.recurse {
        walker = walker.max_depth(1);
    }
    let mut files: Vec<PathBuf> = walker
        .into_iter()
        .filter_entry(|e| e.depth() == 0 || config.include_hidden || !is_hidden(e.file_name()))
        .filter_map(|e| e.ok())
        .filter(|e| e.file_type().is_file())
        .map(|e| e.into_path())
        .collect();
    files.sort();
    Ok(files)
}

/// Reads a file as text. Invalid UTF-8 is replaced; a NUL byte near the start
/// marks the file as binary.
pub fn load_source(path: &Path) -> Result<String> {
    let bytes = fs::read(path).map_err(|source| Error::Read {
        path: path.to_path_buf(),
        source,
    })?;
    let head = &bytes[..bytes.len().min(BINARY_SNIFF_LEN)];
    if head.contains(&0) {
        return Err(Error::Binary(path.to_path_buf()));
    }
    Ok(String::from_utf8_lossy(&bytes).into_owned())
}

/// Scans one file into its report. Unterminated-block warnings are returned
/// alongside.
pub fn scan_path(path: &Path) -> Result<(FileReport, Vec<String>)> {
    let spec = identify_language(path)?;
    let text = load_source(path)?;
    let extraction = scan_file(&text, spec);
    let metrics = compute_metrics(&text, &extraction);
    let report = build_report(path, spec, &extraction, &metrics);
    Ok((report, extraction.warnings))
}

/// Runs a validated configuration, writing diagnostics to `diag`.
pub fn run_with(config: &ScanConfig, diag: &mut dyn Write) -> i32 {
    if let Err(err) = config.validate() {
        let _ = writeln!(diag, "error: {err}");
        return EXIT_USAGE;
    }
    let result = match config.mode {
        Mode::Comments => run_comments(config, diag),
        Mode::SourceOnly => run_source_only(config),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            let _ = writeln!(diag, "error: {err}");
            match err {
                Error::InputNotFound(_) | Error::InvalidArguments(_) => EXIT_USAGE,
                _ => EXIT_IO,
            }
        }
    }
}

pub fn run(config: &ScanConfig) -> i32 {
    run_with(config, &mut io::stderr().lock())
}

fn run_comments(config: &ScanConfig, diag: &mut dyn Write) -> Result<i32> {
    let files = walk(&config.input_path, config)?;
    let outcomes: Vec<_> = files.par_iter().map(|p| scan_path(p)).collect();

    let mut reports = Vec::with_capacity(outcomes.len());
    for (path, outcome) in files.iter().zip(outcomes) {
        match outcome {
            Ok((report, warnings)) => {
                for w in warnings {
                    let _ = writeln!(diag, "warning: {}: {w}", path.display());
                }
                reports.push(report);
            }
            Err(err) => {
                let _ = writeln!(diag, "warning: skipping {}", err);
            }
        }
    }
    write_reports(&reports, config.output_path.as_deref())?;

    let single_file = !config.input_path.is_dir();
    if single_file && reports.is_empty() {
        return Ok(EXIT_IO);
    }
    Ok(EXIT_OK)
}

fn run_source_only(config: &ScanConfig) -> Result<i32> {
    let spec = identify_language(&config.input_path)?;
    let text = load_source(&config.input_path)?;
    let stripped = strip_comments(&text, spec);
    write_output(stripped.as_bytes(), config.output_path.as_deref())?;
    Ok(EXIT_OK)
}

/// Parses `args` (program name first) and runs.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(args) => args,
        Err(err) => {
            let code = if err.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = err.print();
            return code;
        }
    };
    run(&ScanConfig::from(args))
}

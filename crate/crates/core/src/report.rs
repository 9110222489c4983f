//! JSON report assembly.
//!
//! One array element per file:
//!
//! ```json
//! {
//!   "metadata": [{ "blank_lines": 0, "filename": "a.py", "lang": "Python", ... }],
//!   "multi_line_comment": [{ "comment": "...", "end_line": 2, "start_line": 1 }],
//!   "single_line_comment": [{ "comment": "...", "line_number": 4 }]
//! }
//! ```
//!
//! Keys are emitted in lexicographic order and `metadata` is always a
//! one-element array.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::metrics::FileMetrics;
use crate::registry::LanguageSpec;
use crate::scanner::{CommentRecord, ExtractionResult};

// Field order is the serialized key order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileMetadata {
    pub blank_lines: usize,
    pub filename: String,
    pub lang: String,
    pub sloc: usize,
    pub total_lines: usize,
    pub total_lines_of_comments: usize,
}

impl FileMetadata {
    pub fn metrics(&self) -> FileMetrics {
        FileMetrics {
            total_lines: self.total_lines,
            blank_lines: self.blank_lines,
            total_lines_of_comments: self.total_lines_of_comments,
            sloc: self.sloc,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MultiLineComment {
    pub comment: String,
    pub end_line: usize,
    pub start_line: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SingleLineComment {
    pub comment: String,
    pub line_number: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileReport {
    #[serde(with = "one_element")]
    pub metadata: FileMetadata,
    pub multi_line_comment: Vec<MultiLineComment>,
    pub single_line_comment: Vec<SingleLineComment>,
}

mod one_element {
    use super::*;
    use serde::de::Error as _;

    pub fn serialize<S: Serializer>(meta: &FileMetadata, s: S) -> Result<S::Ok, S::Error> {
        [meta].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<FileMetadata, D::Error> {
        let mut items = Vec::<FileMetadata>::deserialize(d)?;
        if items.len() != 1 {
            return Err(D::Error::invalid_length(items.len(), &"exactly one metadata object"));
        }
        Ok(items.remove(0))
    }
}

/// Maps one file's extraction and metrics into its report entry.
pub fn build_report(
    path: &Path,
    spec: &LanguageSpec,
    extraction: &ExtractionResult,
    metrics: &FileMetrics,
) -> FileReport {
    let filename = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string());

    let mut single_line_comment = Vec::with_capacity(extraction.singles.len());
    let mut multi_line_comment = Vec::with_capacity(extraction.blocks.len());
    for rec in extraction.singles.iter().chain(&extraction.blocks) {
        match rec {
            CommentRecord::Single {
                text, line_number, ..
            } => single_line_comment.push(SingleLineComment {
                comment: text.clone(),
                line_number: *line_number,
            }),
            CommentRecord::MultiBlock {
                text,
                start_line,
                end_line,
            } => multi_line_comment.push(MultiLineComment {
                comment: text.clone(),
                end_line: *end_line,
                start_line: *start_line,
            }),
        }
    }
    single_line_comment.sort_by_key(|c| c.line_number);
    multi_line_comment.sort_by_key(|c| c.start_line);

    FileReport {
        metadata: FileMetadata {
            blank_lines: metrics.blank_lines,
            filename,
            lang: spec.name.to_string(),
            sloc: metrics.sloc,
            total_lines: metrics.total_lines,
            total_lines_of_comments: metrics.total_lines_of_comments,
        },
        multi_line_comment,
        single_line_comment,
    }
}

/// Renders reports as a pretty-printed JSON array (2-space indent).
pub fn serialize(reports: &[FileReport]) -> String {
    serde_json::to_string_pretty(reports).expect("report types always serialize")
}

/// Writes the serialized reports plus a trailing newline to `dest`, or to
/// standard output when `dest` is `None`.
pub fn write_reports(reports: &[FileReport], dest: Option<&Path>) -> Result<()> {
    let mut json = serialize(reports);
    json.push('\n');
    write_output(json.as_bytes(), dest)
}

pub(crate) fn write_output(bytes: &[u8], dest: Option<&Path>) -> Result<()> {
    match dest {
        Some(path) => fs::write(path, bytes).map_err(Error::IoWrite),
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(bytes)
                .and_then(|_| lock.flush())
                .map_err(Error::IoWrite)
        }
    }
}

//! Per-file line accounting.
//!
//! Every physical line falls in exactly one bucket: comment (any comment
//! touches it, including inline comments after code), blank (whitespace only),
//! or source.

use serde::{Deserialize, Serialize};

use crate::scanner::{split_lines, ExtractionResult};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileMetrics {
    pub total_lines: usize,
    pub blank_lines: usize,
    pub total_lines_of_comments: usize,
    pub sloc: usize,
}

/// `extraction` must come from scanning this same `text`.
pub fn compute_metrics(text: &str, extraction: &ExtractionResult) -> FileMetrics {
    let lines = split_lines(text);
    let total_lines = lines.len();
    let mut commented = vec![false; total_lines];
    for rec in extraction.singles.iter().chain(&extraction.blocks) {
        for n in rec.lines() {
            if let Some(slot) = n.checked_sub(1).and_then(|i| commented.get_mut(i)) {
                *slot = true;
            }
        }
    }
    let total_lines_of_comments = commented.iter().filter(|&&c| c).count();
    let blank_lines = lines
        .iter()
        .zip(&commented)
        .filter(|(line, &c)| !c && line.content.trim().is_empty())
        .count();
    FileMetrics {
        total_lines,
        blank_lines,
        total_lines_of_comments,
        sloc: total_lines - blank_lines - total_lines_of_comments,
    }
}

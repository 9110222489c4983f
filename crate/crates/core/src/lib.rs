//! Comment and metadata extraction for source files.
//!
//! The pipeline is: pick a language from the file extension
//! ([`registry::identify_language`]), scan the text for comments
//! ([`scanner::scan_file`]), count lines ([`metrics::compute_metrics`]) and
//! assemble the JSON report ([`report::build_report`], [`report::serialize`]).

pub mod cli;
pub mod error;
pub mod metrics;
pub mod registry;
pub mod report;
pub mod scanner;

pub use error::{Error, Result};
pub use metrics::{compute_metrics, FileMetrics};
pub use registry::{
    identify_language, supported_languages, syntax_for, CommentSyntax, Guard, LanguageSpec,
    StringForm, SyntaxKind,
};
pub use report::{build_report, serialize, FileReport};
pub use scanner::{
    match_multiline, match_single_line, merge_contiguous, scan_file, strip_comments,
    CommentKind, CommentRecord, ExtractionResult, ScanState,
};

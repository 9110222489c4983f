use std::io;
use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported file extension: {}", .0.display())]
    UnknownExtension(PathBuf),

    #[error("binary file: {}", .0.display())]
    Binary(PathBuf),

    #[error("input not found: {}", .0.display())]
    InputNotFound(PathBuf),

    #[error("invalid arguments: {0}")]
    InvalidArguments(String),

    #[error("failed to read {}: {source}", path.display())]
    Read { path: PathBuf, source: io::Error },

    #[error("failed to write output: {0}")]
    IoWrite(#[source] io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

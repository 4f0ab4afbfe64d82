//! JSON files for matrices, problems and solutions.

use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::QMatrix;
use crate::solvers::{PairSolution, SolveReport};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("cannot parse {path}: {source}")]
    Parse { path: PathBuf, source: serde_json::Error },
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, IoError> {
    let text = fs::read_to_string(path).map_err(|source| IoError::Read { path: path.into(), source })?;
    serde_json::from_str(&text).map_err(|source| IoError::Parse { path: path.into(), source })
}

pub fn read_matrix(path: &Path) -> Result<QMatrix, IoError> {
    read_json(path)
}

/// Pretty JSON with a trailing newline; identical values give identical text.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable value");
    s.push('\n');
    s
}

pub fn write_text(path: &Path, text: &str) -> Result<(), IoError> {
    fs::write(path, text).map_err(|source| IoError::Write { path: path.into(), source })
}

/// `{"x1": ..., "x2": ... | null, "report": ...}`
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolutionFile {
    pub x1: QMatrix,
    pub x2: Option<QMatrix>,
    pub report: SolveReport,
}

impl SolutionFile {
    pub fn new(sol: PairSolution, report: SolveReport) -> Self {
        SolutionFile { x1: sol.x1, x2: sol.x2, report }
    }
}

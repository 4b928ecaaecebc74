//! File formats: Matrix Market input, canonical JSON reports, CSV sweep tables.

mod canonical;
mod matrix_market;
mod report;
mod table;

use std::path::{Path, PathBuf};

pub use canonical::{format_real, to_canonical_json};
pub use matrix_market::{parse_matrix_market, read_matrix_market, render_matrix_market, write_matrix_market, MAX_DIMENSION};
pub use report::{
    input_digest, read_report, write_report, Certificate, CertificateReport, InputDigest, OracleSection,
    SCHEMA_VERSION,
};
pub use table::{read_sweep_config, write_sweep_csv, SWEEP_CSV_HEADER};

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{rows}x{cols} exceeds the {limit} dimension limit")]
    SizeOverflow { rows: usize, cols: usize, limit: usize },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("report: {0}")]
    Schema(String),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl IoError {
    pub fn code(&self) -> &'static str {
        match self {
            Self::Io { .. } | Self::Csv(_) => "IO_ERROR",
            Self::Parse { .. } | Self::Json(_) | Self::Schema(_) => "PARSE_ERROR",
            Self::SizeOverflow { .. } => "SIZE_OVERFLOW",
        }
    }

    pub(crate) fn io(path: &Path, source: std::io::Error) -> Self {
        Self::Io {
            path: path.to_path_buf(),
            source,
        }
    }
}

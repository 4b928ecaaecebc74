//! Sweep configuration input and per-instance CSV output.

use std::fs;
use std::io::Write;
use std::path::Path;

use super::canonical::format_real;
use super::IoError;
use crate::ensemble::{SweepConfig, SweepResult};

pub const SWEEP_CSV_HEADER: [&str; 10] =
    ["instance", "seed", "n", "k", "rho", "gap", "tan_bound", "exact_tan", "ratio", "status"];

pub fn read_sweep_config(path: impl AsRef<Path>) -> Result<SweepConfig, IoError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| IoError::io(path, e))?;
    Ok(serde_json::from_str(&text)?)
}

fn optional(x: Option<f64>) -> String {
    x.map(format_real).unwrap_or_default()
}

/// One row per instance, in instance order; missing values are empty cells.
pub fn write_sweep_csv(result: &SweepResult, out: impl Write) -> Result<(), IoError> {
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(SWEEP_CSV_HEADER)?;
    for r in &result.records {
        writer.write_record([
            r.instance.to_string(),
            r.seed.to_string(),
            r.n.to_string(),
            r.k.to_string(),
            optional(r.rho),
            optional(r.gap),
            optional(r.tan_bound),
            optional(r.exact_tan),
            optional(r.ratio),
            r.status.clone(),
        ])?;
    }
    writer.flush().map_err(|e| IoError::Csv(e.into()))?;
    Ok(())
}

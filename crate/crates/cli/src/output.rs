//! CSV/JSON emission with stable, round-trippable byte output.

use std::io::Write;
use std::path::PathBuf;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// A rectangular table of string cells with a header row.  Formatting
/// happens when cells are written, so re-emitting parsed output is
/// byte-identical.
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: Vec<String>) -> Self {
        Self {
            header,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Result<Vec<u8>, CliError> {
        let mut wtr = csv::Writer::from_writer(Vec::new());
        wtr.write_record(&self.header).map_err(csv_err)?;
        for row in &self.rows {
            wtr.write_record(row).map_err(csv_err)?;
        }
        wtr.into_inner()
            .map_err(|e| CliError::Validation(format!("csv flush failed: {e}")))
    }

    pub fn to_json(&self) -> Result<Vec<u8>, CliError> {
        let objects: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| {
                let map: serde_json::Map<String, serde_json::Value> = self
                    .header
                    .iter()
                    .zip(row)
                    .map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone())))
                    .collect();
                serde_json::Value::Object(map)
            })
            .collect();
        let mut bytes = serde_json::to_vec_pretty(&objects)
            .map_err(|e| CliError::Validation(format!("json encoding failed: {e}")))?;
        bytes.push(b'\n');
        Ok(bytes)
    }

    pub fn emit(&self, format: Format, out: Option<&PathBuf>) -> Result<(), CliError> {
        let bytes = match format {
            Format::Csv => self.to_csv()?,
            Format::Json => self.to_json()?,
        };
        write_bytes(&bytes, out)
    }
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::Validation(format!("csv encoding failed: {e}"))
}

pub fn write_bytes(bytes: &[u8], out: Option<&PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, bytes)
            .map_err(|e| CliError::Validation(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(bytes)
                .and_then(|()| stdout.flush())
                .map_err(|e| CliError::Validation(format!("cannot write stdout: {e}")))
        }
    }
}

/// Fixed-precision float cell: ten significant decimals, stable across
/// runs and platforms.
pub fn cell_f64(x: f64) -> String {
    format!("{x:.10}")
}

/// Four-decimal probability cell, matching the published table precision.
pub fn cell_beta(x: f64) -> String {
    format!("{x:.4}")
}

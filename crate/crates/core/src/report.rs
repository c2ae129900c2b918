//! Comparison and tradeoff records with CSV/JSON encodings.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::Result;

/// One analytic-vs-empirical row, per alignment set of a simulated scheme.
/// Delay columns repeat the per-scheme values on each of its set rows.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    /// Dash-separated set sizes, e.g. `2-4`.
    pub tuple: String,
    pub n: u64,
    pub trials: u64,
    pub set_index: usize,
    pub size: u32,
    pub beta_hat: f64,
    pub beta_analytic: f64,
    pub delay_hat: f64,
    pub delay_analytic: f64,
    /// Standard error of `beta_hat`.
    pub std_err: f64,
}

pub fn write_comparison_csv<W: Write>(rows: &[ComparisonRow], writer: W) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(writer);
    for row in rows {
        wtr.serialize(row)?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn read_comparison_csv<R: Read>(reader: R) -> Result<Vec<ComparisonRow>> {
    let mut rdr = csv::Reader::from_reader(reader);
    let mut rows = Vec::new();
    for record in rdr.deserialize() {
        rows.push(record?);
    }
    Ok(rows)
}

/// One point of a delay-rate tradeoff curve.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TradeoffRow {
    /// Weight on the faster scheme.
    pub alpha: f64,
    /// Time-shared delay divided by the alphabet cardinality.
    pub delay_norm: f64,
    /// Time-shared delay in steps.
    pub delay_abs: f64,
    /// Per-user rates in bits per channel use.
    pub rates: Vec<f64>,
}

/// A whole tradeoff sweep.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TradeoffReport {
    pub alphabet_n: u64,
    pub rows: Vec<TradeoffRow>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_rows() -> Vec<ComparisonRow> {
        vec![
            ComparisonRow {
                tuple: "2-4".into(),
                n: 64,
                trials: 1000,
                set_index: 0,
                size: 2,
                beta_hat: 0.751,
                beta_analytic: 0.75,
                delay_hat: 0.7493,
                delay_analytic: 0.75,
                std_err: 0.0137,
            },
            ComparisonRow {
                tuple: "2-4".into(),
                n: 64,
                trials: 1000,
                set_index: 1,
                size: 4,
                beta_hat: 0.249,
                beta_analytic: 0.25,
                delay_hat: 0.7493,
                delay_analytic: 0.75,
                std_err: 0.0137,
            },
        ]
    }

    #[test]
    fn csv_round_trip_is_byte_identical() {
        let rows = sample_rows();
        let mut bytes = Vec::new();
        write_comparison_csv(&rows, &mut bytes).unwrap();
        let parsed = read_comparison_csv(bytes.as_slice()).unwrap();
        assert_eq!(parsed, rows);
        let mut again = Vec::new();
        write_comparison_csv(&parsed, &mut again).unwrap();
        assert_eq!(bytes, again);
    }

    #[test]
    fn csv_columns_in_contract_order() {
        let mut bytes = Vec::new();
        write_comparison_csv(&sample_rows(), &mut bytes).unwrap();
        let header = String::from_utf8(bytes).unwrap();
        assert!(header.starts_with(
            "tuple,n,trials,set_index,size,beta_hat,beta_analytic,delay_hat,delay_analytic,std_err"
        ));
    }

    #[test]
    fn tradeoff_report_serializes() {
        let report = TradeoffReport {
            alphabet_n: 64,
            rows: vec![TradeoffRow {
                alpha: 0.5,
                delay_norm: 0.875,
                delay_abs: 56.0,
                rates: vec![0.96, 0.96],
            }],
        };
        let json = serde_json::to_string(&report).unwrap();
        let parsed: TradeoffReport = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed.rows[0].delay_norm, 0.875);
    }
}

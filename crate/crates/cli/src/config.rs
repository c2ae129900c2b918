//! Experiment manifests: a JSON config file supplies defaults, command-line
//! flags win.

use std::path::PathBuf;

use serde::Deserialize;

use crate::CliError;

/// Optional defaults loadable from `--config FILE`.
#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub tuples: Option<Vec<Vec<u32>>>,
    pub n: Option<u64>,
    pub trials: Option<u64>,
    pub seed: Option<u64>,
    pub users: Option<usize>,
    pub snr: Option<Vec<f64>>,
    pub fades: Option<PathBuf>,
    pub alpha_grid: Option<Vec<f64>>,
    pub size: Option<u32>,
    pub max_n: Option<usize>,
    pub format: Option<String>,
    pub out: Option<PathBuf>,
    pub absolute: Option<bool>,
}

impl RunConfig {
    pub fn load(path: Option<&PathBuf>) -> Result<Self, CliError> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Usage(format!("bad config {}: {e}", path.display())))
    }
}

/// Parses `2,4` into a size list.
pub fn parse_sizes(text: &str) -> Result<Vec<u32>, CliError> {
    text.split(',')
        .map(|p| {
            p.trim()
                .parse::<u32>()
                .map_err(|e| CliError::Usage(format!("bad set size {p:?}: {e}")))
        })
        .collect()
}

/// Parses `2,4;2,6` into a list of size lists.
pub fn parse_tuple_list(text: &str) -> Result<Vec<Vec<u32>>, CliError> {
    text.split(';')
        .filter(|p| !p.trim().is_empty())
        .map(parse_sizes)
        .collect()
}

/// Parses `0,0.25,0.5` into a weight grid.
pub fn parse_grid(text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|e| CliError::Usage(format!("bad alpha value {p:?}: {e}")))
        })
        .collect()
}

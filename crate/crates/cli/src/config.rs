//! Optional JSON run configuration. Field names mirror the command-line
//! flags; any flag given explicitly overrides the file value.

use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Deserialize;

#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    // Data source (exactly one of simulated / synthetic / data).
    pub simulated: Option<String>,
    pub noise: Option<f64>,
    pub synthetic: Option<String>,
    pub rows: Option<usize>,
    pub data: Option<PathBuf>,
    pub label: Option<String>,
    pub iqr_coefficient: Option<f64>,
    pub iqr_columns: Option<Vec<String>>,
    pub val_fraction: Option<f64>,

    // Search space and training template.
    pub log2_units: Option<(f64, f64)>,
    pub dropout: Option<(f64, f64)>,
    pub epochs: Option<u32>,
    pub batch_size: Option<usize>,
    pub hidden_layers: Option<usize>,

    // Execution.
    pub out: Option<PathBuf>,
    pub master_seed: Option<u64>,
    pub workers: Option<usize>,

    // Zoom.
    pub schedule: Option<Vec<u64>>,
    pub quantile: Option<f64>,
    pub margin: Option<f64>,
    pub grid_resolution: Option<usize>,

    // Surrogate fits.
    pub surrogate_epochs: Option<u32>,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> Result<Self> {
        match path {
            None => Ok(Self::default()),
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading config {}", path.display()))?;
                serde_json::from_str(&text)
                    .with_context(|| format!("parsing config {}", path.display()))
            }
        }
    }
}

/// Comma-separated pair, e.g. "3,10".
pub fn parse_pair(text: &str) -> std::result::Result<(f64, f64), String> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("expected LO,HI, got \"{text}\""));
    }
    let lo: f64 = parts[0]
        .trim()
        .parse()
        .map_err(|_| format!("bad number \"{}\"", parts[0]))?;
    let hi: f64 = parts[1]
        .trim()
        .parse()
        .map_err(|_| format!("bad number \"{}\"", parts[1]))?;
    Ok((lo, hi))
}

/// Comma-separated region, e.g. "6.0,7.5,0.2,0.4" as log2 lo, log2 hi,
/// dropout lo, dropout hi.
pub fn parse_region(text: &str) -> std::result::Result<(f64, f64, f64, f64), String> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 4 {
        return Err(format!("expected L2LO,L2HI,DLO,DHI, got \"{text}\""));
    }
    let mut values = [0.0; 4];
    for (v, p) in values.iter_mut().zip(&parts) {
        *v = p
            .trim()
            .parse()
            .map_err(|_| format!("bad number \"{p}\""))?;
    }
    Ok((values[0], values[1], values[2], values[3]))
}

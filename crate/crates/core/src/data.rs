//! Tabular data handling: CSV ingestion, IQR outlier filtering,
//! standardization, stratified splitting, and synthetic datasets for tests.

use std::path::Path;

use crate::linalg::Matrix;
use crate::rng::SplitMix64;
use crate::{Error, Result};

/// A feature matrix with binary labels.
#[derive(Debug, Clone)]
pub struct Dataset {
    features: Matrix,
    labels: Vec<u8>,
    feature_names: Vec<String>,
}

impl Dataset {
    pub fn new(features: Matrix, labels: Vec<u8>, feature_names: Vec<String>) -> Result<Self> {
        if features.rows() == 0 {
            return Err(Error::DegenerateData("dataset has no rows".into()));
        }
        if labels.len() != features.rows() {
            return Err(Error::Shape(format!(
                "{} labels for {} rows",
                labels.len(),
                features.rows()
            )));
        }
        if feature_names.len() != features.cols() {
            return Err(Error::Shape(format!(
                "{} feature names for {} columns",
                feature_names.len(),
                features.cols()
            )));
        }
        if let Some(bad) = labels.iter().find(|&&y| y > 1) {
            return Err(Error::Schema(format!("label {bad} is not binary")));
        }
        if !features.is_finite() {
            return Err(Error::Schema("dataset contains non-finite values".into()));
        }
        Ok(Self {
            features,
            labels,
            feature_names,
        })
    }

    pub fn len(&self) -> usize {
        self.features.rows()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn feature_count(&self) -> usize {
        self.features.cols()
    }

    pub fn features(&self) -> &Matrix {
        &self.features
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    pub fn feature_names(&self) -> &[String] {
        &self.feature_names
    }

    /// Index of a named feature column.
    pub fn feature_index(&self, name: &str) -> Result<usize> {
        self.feature_names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::Schema(format!("no feature column named \"{name}\"")))
    }

    fn select(&self, indices: &[usize]) -> Result<Dataset> {
        Dataset::new(
            self.features.select_rows(indices),
            indices.iter().map(|&i| self.labels[i]).collect(),
            self.feature_names.clone(),
        )
    }
}

/// Per-feature mean and (population) standard deviation of a training split.
#[derive(Debug, Clone)]
pub struct FeatureStats {
    pub means: Vec<f64>,
    pub stds: Vec<f64>,
}

/// Result of [`load_csv`]: the parsed dataset plus the number of rows dropped
/// for missing values.
#[derive(Debug)]
pub struct CsvLoad {
    pub dataset: Dataset,
    pub dropped_rows: usize,
}

/// Loads a comma-separated UTF-8 file with a header row. All columns are
/// parsed as decimal numbers; rows containing an empty cell are dropped and
/// counted. The label column must hold only 0 and 1.
pub fn load_csv(path: &Path, label_column: &str) -> Result<CsvLoad> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut lines = text.lines().enumerate();
    let (_, header_line) = lines
        .next()
        .ok_or_else(|| Error::Schema("empty CSV file".into()))?;
    let header: Vec<String> = header_line
        .split(',')
        .map(|s| s.trim().to_string())
        .collect();
    let label_idx = header
        .iter()
        .position(|h| h == label_column)
        .ok_or_else(|| Error::Schema(format!("no column named \"{label_column}\"")))?;

    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut labels: Vec<u8> = Vec::new();
    let mut dropped = 0usize;

    for (line_idx, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let row_no = line_idx + 1; // 1-based file line number
        let cells: Vec<&str> = line.split(',').map(str::trim).collect();
        if cells.len() != header.len() {
            return Err(Error::Parse {
                row: row_no,
                column: String::new(),
                message: format!("expected {} fields, got {}", header.len(), cells.len()),
            });
        }
        if cells.iter().any(|c| c.is_empty()) {
            dropped += 1;
            continue;
        }
        let mut feature_row = Vec::with_capacity(header.len() - 1);
        let mut label = 0u8;
        for (i, cell) in cells.iter().enumerate() {
            let value: f64 = cell.parse().map_err(|_| Error::Parse {
                row: row_no,
                column: header[i].clone(),
                message: format!("\"{cell}\" is not a number"),
            })?;
            if !value.is_finite() {
                return Err(Error::Parse {
                    row: row_no,
                    column: header[i].clone(),
                    message: format!("\"{cell}\" is not finite"),
                });
            }
            if i == label_idx {
                if value == 0.0 {
                    label = 0;
                } else if value == 1.0 {
                    label = 1;
                } else {
                    return Err(Error::Schema(format!(
                        "label column \"{label_column}\" contains {value} at row {row_no}"
                    )));
                }
            } else {
                feature_row.push(value);
            }
        }
        rows.push(feature_row);
        labels.push(label);
    }

    if rows.is_empty() {
        return Err(Error::DegenerateData(
            "CSV contains no usable data rows".into(),
        ));
    }
    let feature_names: Vec<String> = header
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != label_idx)
        .map(|(_, n)| n.clone())
        .collect();
    let dataset = Dataset::new(Matrix::from_rows(&rows)?, labels, feature_names)?;
    Ok(CsvLoad {
        dataset,
        dropped_rows: dropped,
    })
}

/// Quantile of a sorted slice by linear interpolation between order statistics.
fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    debug_assert!(!sorted.is_empty());
    let h = (sorted.len() - 1) as f64 * q;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

/// Drops every row holding a value outside [Q1 - c*IQR, Q3 + c*IQR] in any of
/// the selected columns (`None` = all columns). Quantiles are computed once,
/// per column, on the input dataset.
pub fn iqr_filter(ds: &Dataset, coefficient: f64, columns: Option<&[usize]>) -> Result<Dataset> {
    if !coefficient.is_finite() || coefficient <= 0.0 {
        return Err(Error::InvalidConfig(format!(
            "IQR coefficient must be > 0, got {coefficient}"
        )));
    }
    let all: Vec<usize> = (0..ds.feature_count()).collect();
    let columns = columns.unwrap_or(&all);
    for &c in columns {
        if c >= ds.feature_count() {
            return Err(Error::Schema(format!("column index {c} out of range")));
        }
    }

    let mut keep = vec![true; ds.len()];
    for &c in columns {
        let mut values: Vec<f64> = (0..ds.len()).map(|r| ds.features.get(r, c)).collect();
        values.sort_by(f64::total_cmp);
        let q1 = quantile_sorted(&values, 0.25);
        let q3 = quantile_sorted(&values, 0.75);
        let iqr = q3 - q1;
        let lo = q1 - coefficient * iqr;
        let hi = q3 + coefficient * iqr;
        for (r, flag) in keep.iter_mut().enumerate() {
            let v = ds.features.get(r, c);
            if v < lo || v > hi {
                *flag = false;
            }
        }
    }

    let kept: Vec<usize> = (0..ds.len()).filter(|&r| keep[r]).collect();
    if kept.is_empty() {
        return Err(Error::DegenerateData("IQR filter removed every row".into()));
    }
    ds.select(&kept)
}

/// Subtracts the training means and divides by the training standard
/// deviations; the same affine transform is applied to every dataset in
/// `others`.
pub fn standardize(
    train: &Dataset,
    others: &[&Dataset],
) -> Result<(Dataset, Vec<Dataset>, FeatureStats)> {
    let d = train.feature_count();
    let means = train.features.column_means();
    let mut stds = vec![0.0; d];
    for r in 0..train.len() {
        for (c, std) in stds.iter_mut().enumerate() {
            let delta = train.features.get(r, c) - means[c];
            *std += delta * delta;
        }
    }
    for (c, std) in stds.iter_mut().enumerate() {
        *std = (*std / train.len() as f64).sqrt();
        if *std == 0.0 {
            return Err(Error::Schema(format!(
                "feature \"{}\" has zero variance on the training split",
                train.feature_names[c]
            )));
        }
    }

    let apply = |ds: &Dataset| -> Result<Dataset> {
        if ds.feature_count() != d {
            return Err(Error::Shape(format!(
                "dataset has {} features, training split has {}",
                ds.feature_count(),
                d
            )));
        }
        let mut features = ds.features.clone();
        for r in 0..features.rows() {
            let row = features.row_mut(r);
            for c in 0..d {
                row[c] = (row[c] - means[c]) / stds[c];
            }
        }
        Dataset::new(features, ds.labels.clone(), ds.feature_names.clone())
    };

    let train_out = apply(train)?;
    let others_out: Vec<Dataset> = others.iter().map(|ds| apply(ds)).collect::<Result<_>>()?;
    Ok((train_out, others_out, FeatureStats { means, stds }))
}

/// Stratified train/validation split, deterministic under `seed`. Each class
/// contributes round(val_fraction * class size) rows to the validation side.
pub fn split(ds: &Dataset, val_fraction: f64, seed: u64) -> Result<(Dataset, Dataset)> {
    if !(val_fraction > 0.0 && val_fraction < 1.0) {
        return Err(Error::InvalidConfig(format!(
            "val_fraction must be in (0,1), got {val_fraction}"
        )));
    }
    let mut rng = SplitMix64::new(seed);
    let mut val_indices: Vec<usize> = Vec::new();
    let mut train_indices: Vec<usize> = Vec::new();
    for class in [0u8, 1u8] {
        let mut members: Vec<usize> = (0..ds.len()).filter(|&r| ds.labels[r] == class).collect();
        if members.is_empty() {
            continue;
        }
        let n_val = (val_fraction * members.len() as f64).round() as usize;
        if n_val == 0 || n_val == members.len() {
            return Err(Error::Stratification(format!(
                "class {class} would be absent from one split ({} members, {} to validation)",
                members.len(),
                n_val
            )));
        }
        rng.shuffle(&mut members);
        val_indices.extend_from_slice(&members[..n_val]);
        train_indices.extend_from_slice(&members[n_val..]);
    }
    val_indices.sort_unstable();
    train_indices.sort_unstable();
    Ok((ds.select(&train_indices)?, ds.select(&val_indices)?))
}

/// Synthetic dataset families used as test oracles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SyntheticKind {
    /// Two well-separated 2-D Gaussian clusters; linearly separable.
    SeparableBlobs,
    /// Inner disk labeled 1, outer ring labeled 0; requires a curved boundary.
    Annulus,
}

/// Generates a deterministic 2-D dataset with balanced classes.
pub fn make_synthetic(kind: SyntheticKind, m: usize, seed: u64) -> Result<Dataset> {
    if m < 10 {
        return Err(Error::InvalidConfig(format!(
            "synthetic datasets need at least 10 rows, got {m}"
        )));
    }
    let mut rng = SplitMix64::new(seed);
    let mut rows = Vec::with_capacity(m);
    let mut labels = Vec::with_capacity(m);
    for i in 0..m {
        let label = (i % 2) as u8;
        let (x, y) = match kind {
            SyntheticKind::SeparableBlobs => {
                let center = if label == 1 { 2.0 } else { -2.0 };
                (
                    center + 0.5 * rng.next_gaussian(),
                    center + 0.5 * rng.next_gaussian(),
                )
            }
            SyntheticKind::Annulus => {
                let radius = if label == 1 {
                    rng.uniform(0.0, 0.8)
                } else {
                    rng.uniform(1.2, 2.0)
                };
                let angle = rng.uniform(0.0, std::f64::consts::TAU);
                (radius * angle.cos(), radius * angle.sin())
            }
        };
        rows.push(vec![x, y]);
        labels.push(label);
    }
    Dataset::new(
        Matrix::from_rows(&rows)?,
        labels,
        vec!["x1".into(), "x2".into()],
    )
}

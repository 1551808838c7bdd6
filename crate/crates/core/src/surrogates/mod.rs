//! Surrogate models fitted to a trial ledger.
//!
//! Three families, in increasing expressiveness:
//! - threshold-filtered linear regression of dropout on log2(units),
//! - polynomial logistic regression classifying superior/inferior cost,
//! - small neural networks fitting the cost/accuracy surface directly, plus
//!   the inverse network predicting dropout from (units, cost, accuracy).
//!
//! All surrogates share one input convention: log2(units) is affinely mapped
//! from (3, 10) to [0, 1] and the dropout rate is used raw.

mod linear;
mod logistic;
mod network;

pub use linear::{fit_linear, LinearModel};
pub use logistic::{fit_logistic, fit_logistic_points, poly_features, LogisticModel};
pub use network::{
    fit_inverse, fit_surface, predict_inverse, predict_surface, InverseModel, PredictionGrid,
    SurfaceSurrogate, SurfaceTarget, SurrogateTrainConfig,
};

use serde::{Deserialize, Serialize};

use crate::harness::TrialRecord;
use crate::{Error, Result};

/// Affine normalization of the units axis shared by every surrogate:
/// û = (log2(units) - lo) / (hi - lo).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InputNorm {
    pub log2_lo: f64,
    pub log2_hi: f64,
}

impl Default for InputNorm {
    fn default() -> Self {
        Self {
            log2_lo: 3.0,
            log2_hi: 10.0,
        }
    }
}

impl InputNorm {
    pub fn normalize_log2(&self, log2_units: f64) -> f64 {
        (log2_units - self.log2_lo) / (self.log2_hi - self.log2_lo)
    }

    pub fn normalize_units(&self, units: u32) -> f64 {
        self.normalize_log2((units as f64).log2())
    }
}

/// Cost threshold selecting the "trough" records a surrogate is fitted to.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThresholdSpec {
    /// Keep records with cost strictly below this value.
    Numeric(f64),
    /// Keep records with cost at or below the nearest-rank p-th percentile of
    /// the ledger's costs, p in (0, 100].
    Percentile(f64),
}

impl ThresholdSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            ThresholdSpec::Numeric(v) => {
                if !(v > 0.0 && v.is_finite()) {
                    return Err(Error::InvalidConfig(format!(
                        "numeric threshold must be positive, got {v}"
                    )));
                }
            }
            ThresholdSpec::Percentile(p) => {
                if !(p > 0.0 && p <= 100.0) {
                    return Err(Error::InvalidConfig(format!(
                        "percentile must be in (0,100], got {p}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Nearest-rank percentile: the ⌈p/100·n⌉-th smallest value.
pub(crate) fn nearest_rank_percentile(values: &[f64], p: f64) -> f64 {
    debug_assert!(!values.is_empty());
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let rank = ((p / 100.0) * sorted.len() as f64).ceil() as usize;
    sorted[rank.clamp(1, sorted.len()) - 1]
}

pub(crate) fn live_records(records: &[TrialRecord]) -> Vec<&TrialRecord> {
    records.iter().filter(|r| !r.is_skipped()).collect()
}

/// Selects the records a threshold admits: `cost < value` for numeric
/// thresholds, `cost <= percentile value` for percentile thresholds
/// (nearest-rank ties included). Skipped records never qualify.
pub fn select_by_threshold(
    records: &[TrialRecord],
    spec: ThresholdSpec,
) -> Result<Vec<TrialRecord>> {
    spec.validate()?;
    let live = live_records(records);
    if live.is_empty() {
        return Err(Error::DegenerateData(
            "ledger holds no usable records".into(),
        ));
    }
    let selected: Vec<TrialRecord> = match spec {
        ThresholdSpec::Numeric(value) => live
            .into_iter()
            .filter(|r| r.cost < value)
            .cloned()
            .collect(),
        ThresholdSpec::Percentile(p) => {
            let costs: Vec<f64> = live.iter().map(|r| r.cost).collect();
            let cutoff = nearest_rank_percentile(&costs, p);
            live.into_iter()
                .filter(|r| r.cost <= cutoff)
                .cloned()
                .collect()
        }
    };
    if selected.is_empty() {
        return Err(Error::DegenerateData(format!(
            "threshold {spec:?} selected no records"
        )));
    }
    Ok(selected)
}

/// A fitted model as written to disk: one JSON document per family, tagged by
/// a `family` field, carrying the architecture, normalization constants, and
/// flat row-major parameter arrays where applicable.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum ModelDocument {
    Linear(LinearModel),
    Logistic(LogisticModel),
    Surface(SurfaceSurrogate),
    Inverse(InverseModel),
}

impl ModelDocument {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

//! Closed-form least squares of dropout on log2(units).

use serde::{Deserialize, Serialize};

use crate::harness::TrialRecord;
use crate::{Error, Result};

/// dropout ≈ slope · log2(units) + intercept, with the training MAE recorded.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LinearModel {
    pub slope: f64,
    pub intercept: f64,
    pub mae: f64,
}

impl LinearModel {
    pub fn predict(&self, log2_units: f64) -> f64 {
        self.slope * log2_units + self.intercept
    }
}

/// Ordinary least squares in closed form over the selected records
/// (x = log2 units, y = dropout). Needs at least two distinct x values.
pub fn fit_linear(subset: &[TrialRecord]) -> Result<LinearModel> {
    let points: Vec<(f64, f64)> = subset
        .iter()
        .filter(|r| !r.is_skipped())
        .map(|r| (r.log2_units(), r.dropout))
        .collect();
    if points.len() < 2 {
        return Err(Error::Fit(format!(
            "linear fit needs at least 2 records, got {}",
            points.len()
        )));
    }
    let n = points.len() as f64;
    let x_mean = points.iter().map(|p| p.0).sum::<f64>() / n;
    let y_mean = points.iter().map(|p| p.1).sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for &(x, y) in &points {
        sxx += (x - x_mean) * (x - x_mean);
        sxy += (x - x_mean) * (y - y_mean);
    }
    if sxx == 0.0 {
        return Err(Error::Fit(
            "linear fit is rank-deficient: all records share one width".into(),
        ));
    }
    let slope = sxy / sxx;
    let intercept = y_mean - slope * x_mean;
    let mae = points
        .iter()
        .map(|&(x, y)| (y - (slope * x + intercept)).abs())
        .sum::<f64>()
        / n;
    Ok(LinearModel {
        slope,
        intercept,
        mae,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(units: u32, dropout: f64) -> TrialRecord {
        TrialRecord {
            trial: units as u64,
            units,
            dropout,
            cost: 0.5,
            accuracy: 50.0,
            epochs: 1,
            seed: 0,
            wall_seconds: 0.0,
            skipped: None,
        }
    }

    /// Gradient-descent least squares over sufficient statistics; an
    /// independent iterative route to the same minimum.
    pub(crate) fn gradient_descent_ols(points: &[(f64, f64)]) -> (f64, f64) {
        let n = points.len() as f64;
        let sx: f64 = points.iter().map(|p| p.0).sum();
        let sy: f64 = points.iter().map(|p| p.1).sum();
        let sxx: f64 = points.iter().map(|p| p.0 * p.0).sum();
        let sxy: f64 = points.iter().map(|p| p.0 * p.1).sum();
        let mut slope = 0.0_f64;
        let mut intercept = 0.0_f64;
        let lr = 0.5 / (1.0 + sxx / n);
        for _ in 0..400_000 {
            let g_slope = 2.0 * (slope * sxx + intercept * sx - sxy) / n;
            let g_intercept = 2.0 * (slope * sx + intercept * n - sy) / n;
            slope -= lr * g_slope;
            intercept -= lr * g_intercept;
        }
        (slope, intercept)
    }

    #[test]
    fn recovers_an_exact_line() {
        // Points exactly on d = 0.05*log2(u) + 0.1.
        let records: Vec<TrialRecord> = [8u32, 16, 32, 64, 128, 256]
            .iter()
            .map(|&u| record(u, 0.05 * (u as f64).log2() + 0.1))
            .collect();
        let model = fit_linear(&records).unwrap();
        assert!((model.slope - 0.05).abs() < 1e-10, "slope {}", model.slope);
        assert!(
            (model.intercept - 0.1).abs() < 1e-10,
            "intercept {}",
            model.intercept
        );
        assert!(model.mae < 1e-10, "mae {}", model.mae);
    }

    #[test]
    fn closed_form_matches_iterative_oracle() {
        let mut rng = crate::rng::SplitMix64::new(23);
        let records: Vec<TrialRecord> = (0..60)
            .map(|i| {
                let units = 8 + (rng.next_u64() % 1000) as u32;
                let noise = rng.uniform(-0.05, 0.05);
                let mut r = record(
                    units,
                    (0.03 * (units as f64).log2() + 0.2 + noise).clamp(0.0, 0.99),
                );
                r.trial = i;
                r
            })
            .collect();
        let model = fit_linear(&records).unwrap();
        let points: Vec<(f64, f64)> = records
            .iter()
            .map(|r| (r.log2_units(), r.dropout))
            .collect();
        let (slope, intercept) = gradient_descent_ols(&points);
        assert!(
            (model.slope - slope).abs() < 1e-8,
            "slope {} vs oracle {slope}",
            model.slope
        );
        assert!(
            (model.intercept - intercept).abs() < 1e-8,
            "intercept {} vs oracle {intercept}",
            model.intercept
        );
    }

    #[test]
    fn desk_scale_mae_is_modest() {
        // Dropout scattered ±0.05 around a line: the MAE must come out
        // finite and well under the scatter scale.
        let mut rng = crate::rng::SplitMix64::new(5);
        let records: Vec<TrialRecord> = (0..200)
            .map(|i| {
                let units = 8 + (rng.next_u64() % 1016) as u32;
                let d = (0.04 * (units as f64).log2() + 0.15 + rng.uniform(-0.05, 0.05))
                    .clamp(0.0, 0.99);
                let mut r = record(units, d);
                r.trial = i;
                r
            })
            .collect();
        let model = fit_linear(&records).unwrap();
        assert!(
            model.mae.is_finite() && model.mae <= 0.2,
            "mae {}",
            model.mae
        );
    }

    #[test]
    fn rank_deficient_input_is_rejected() {
        let records = vec![record(16, 0.1), record(16, 0.9)];
        assert!(matches!(fit_linear(&records), Err(Error::Fit(_))));
    }

    #[test]
    fn single_record_is_rejected() {
        assert!(matches!(fit_linear(&[record(8, 0.5)]), Err(Error::Fit(_))));
    }
}

//! Polynomial logistic regression over (normalized log2 units, dropout).

use serde::{Deserialize, Serialize};

use super::{live_records, nearest_rank_percentile, InputNorm};
use crate::harness::TrialRecord;
use crate::nn::AdamParams;
use crate::{Error, Result};

const GRAD_TOLERANCE: f64 = 1e-6;
const MAX_ITERATIONS: usize = 50_000;

/// Monomials of (a, b) up to `degree`, graded-lexicographic with the constant
/// term first: [1, a, b, a², ab, b², a³, a²b, ab², b³].
///
/// Degree 1 (a plain linear decision function) is supported as the baseline
/// the nonlinearity comparisons are made against.
pub fn poly_features(a: f64, b: f64, degree: u32) -> Vec<f64> {
    assert!((1..=3).contains(&degree), "degree must be 1, 2, or 3");
    let mut features = vec![1.0, a, b];
    if degree >= 2 {
        features.extend_from_slice(&[a * a, a * b, b * b]);
    }
    if degree >= 3 {
        features.extend_from_slice(&[a * a * a, a * a * b, a * b * b, b * b * b]);
    }
    features
}

/// Number of monomials in two variables up to `degree`.
pub fn feature_count(degree: u32) -> usize {
    ((degree + 1) * (degree + 2) / 2) as usize
}

#[inline]
fn sigmoid(z: f64) -> f64 {
    1.0 / (1.0 + (-z).exp())
}

/// A fitted polynomial logistic classifier. `training_accuracy` is the
/// fraction of training points classified correctly (0..=1).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LogisticModel {
    pub degree: u32,
    pub coefficients: Vec<f64>,
    pub training_accuracy: f64,
}

impl LogisticModel {
    pub fn decision(&self, a: f64, b: f64) -> f64 {
        poly_features(a, b, self.degree)
            .iter()
            .zip(&self.coefficients)
            .map(|(f, w)| f * w)
            .sum()
    }

    pub fn predict_proba(&self, a: f64, b: f64) -> f64 {
        sigmoid(self.decision(a, b))
    }

    pub fn classify(&self, a: f64, b: f64) -> u8 {
        u8::from(self.predict_proba(a, b) >= 0.5)
    }

    /// Fraction of the given points classified correctly.
    pub fn accuracy(&self, points: &[(f64, f64)], labels: &[u8]) -> f64 {
        let correct = points
            .iter()
            .zip(labels)
            .filter(|(&(a, b), &y)| self.classify(a, b) == y)
            .count();
        correct as f64 / points.len() as f64
    }
}

/// Fits a logistic model on raw 2-D points by full-batch Adam on the mean
/// BCE, starting from zero weights, until the gradient ∞-norm drops below
/// 1e-6 or 50,000 iterations elapse. Deterministic: no randomness anywhere.
pub fn fit_logistic_points(
    points: &[(f64, f64)],
    labels: &[u8],
    degree: u32,
    adam: &AdamParams,
) -> Result<LogisticModel> {
    if !(1..=3).contains(&degree) {
        return Err(Error::InvalidConfig(format!(
            "polynomial degree must be 1, 2, or 3, got {degree}"
        )));
    }
    if points.is_empty() || points.len() != labels.len() {
        return Err(Error::Shape(format!(
            "{} points vs {} labels",
            points.len(),
            labels.len()
        )));
    }
    adam.validate()?;
    let positives = labels.iter().filter(|&&y| y == 1).count();
    if positives == 0 || positives == labels.len() {
        return Err(Error::Fit(format!(
            "logistic fit needs both classes, got {positives} positives of {}",
            labels.len()
        )));
    }

    let features: Vec<Vec<f64>> = points
        .iter()
        .map(|&(a, b)| poly_features(a, b, degree))
        .collect();
    let dim = feature_count(degree);
    let m = points.len() as f64;

    let mut weights = vec![0.0; dim];
    let mut first = vec![0.0; dim];
    let mut second = vec![0.0; dim];
    let mut grad = vec![0.0; dim];
    for t in 1..=MAX_ITERATIONS as u64 {
        grad.fill(0.0);
        for (phi, &y) in features.iter().zip(labels) {
            let z: f64 = phi.iter().zip(&weights).map(|(f, w)| f * w).sum();
            let residual = sigmoid(z) - y as f64;
            for (g, f) in grad.iter_mut().zip(phi) {
                *g += residual * f;
            }
        }
        for g in &mut grad {
            *g /= m;
        }
        let inf_norm = grad.iter().fold(0.0_f64, |acc, g| acc.max(g.abs()));
        if inf_norm < GRAD_TOLERANCE {
            break;
        }
        let bias1 = 1.0 - adam.beta1.powi(t as i32);
        let bias2 = 1.0 - adam.beta2.powi(t as i32);
        crate::nn::adam_update_slice(
            &mut weights,
            &grad,
            &mut first,
            &mut second,
            adam,
            bias1,
            bias2,
        );
    }

    let model = LogisticModel {
        degree,
        coefficients: weights,
        training_accuracy: 0.0,
    };
    let training_accuracy = model.accuracy(points, labels);
    Ok(LogisticModel {
        training_accuracy,
        ..model
    })
}

/// Labels ledger records by cost percentile (1 = superior: cost at or below
/// the nearest-rank p-th percentile) and fits a polynomial logistic model on
/// the normalized (û, dropout) points.
pub fn fit_logistic(
    records: &[TrialRecord],
    percentile: f64,
    degree: u32,
    adam: &AdamParams,
    norm: InputNorm,
) -> Result<LogisticModel> {
    if !(percentile > 0.0 && percentile < 100.0) {
        return Err(Error::InvalidConfig(format!(
            "label percentile must be in (0,100), got {percentile}"
        )));
    }
    let live = live_records(records);
    if live.is_empty() {
        return Err(Error::DegenerateData(
            "ledger holds no usable records".into(),
        ));
    }
    let costs: Vec<f64> = live.iter().map(|r| r.cost).collect();
    let cutoff = nearest_rank_percentile(&costs, percentile);
    let points: Vec<(f64, f64)> = live
        .iter()
        .map(|r| (norm.normalize_units(r.units), r.dropout))
        .collect();
    let labels: Vec<u8> = live.iter().map(|r| u8::from(r.cost <= cutoff)).collect();
    fit_logistic_points(&points, &labels, degree, adam)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_features_hand_values() {
        assert_eq!(
            poly_features(2.0, 3.0, 2),
            vec![1.0, 2.0, 3.0, 4.0, 6.0, 9.0]
        );
        let origin = poly_features(0.0, 0.0, 3);
        assert_eq!(origin[0], 1.0);
        assert!(origin[1..].iter().all(|&f| f == 0.0));
        assert_eq!(poly_features(1.0, 1.0, 3).len(), 10);
        assert_eq!(feature_count(1), 3);
        assert_eq!(feature_count(2), 6);
        assert_eq!(feature_count(3), 10);
    }

    #[test]
    fn separable_labels_reach_near_perfect_training_accuracy() {
        let mut rng = crate::rng::SplitMix64::new(3);
        let mut points = Vec::new();
        let mut labels = Vec::new();
        for _ in 0..300 {
            let a = rng.uniform(0.0, 1.0);
            let b = rng.uniform(0.0, 1.0);
            // Margin of 0.1 around the separating line a + b = 1.
            let y = if a + b > 1.05 {
                1u8
            } else if a + b < 0.95 {
                0u8
            } else {
                continue;
            };
            points.push((a, b));
            labels.push(y);
        }
        let model = fit_logistic_points(&points, &labels, 2, &AdamParams::default()).unwrap();
        assert!(
            model.training_accuracy >= 0.999,
            "accuracy {}",
            model.training_accuracy
        );
    }

    fn radial_ledger(n: u64) -> Vec<TrialRecord> {
        // Cost grows with distance from the center of the normalized space,
        // so a percentile label region is a disk: linearly inseparable,
        // exactly separable with degree-2 features.
        let mut rng = crate::rng::SplitMix64::new(77);
        (0..n)
            .map(|i| {
                let units = 2.0_f64.powf(rng.uniform(3.0, 10.0)).floor() as u32;
                let dropout = rng.uniform(0.0, 1.0);
                let u_hat = ((units as f64).log2() - 3.0) / 7.0;
                let cost = (u_hat - 0.5).powi(2) + (dropout - 0.5).powi(2);
                TrialRecord {
                    trial: i,
                    units,
                    dropout,
                    cost,
                    accuracy: 50.0,
                    epochs: 1,
                    seed: i,
                    wall_seconds: 0.0,
                    skipped: None,
                }
            })
            .collect()
    }

    #[test]
    fn radial_region_needs_quadratic_features() {
        let records = radial_ledger(400);
        let adam = AdamParams::default();
        let linear = fit_logistic(&records, 50.0, 1, &adam, InputNorm::default()).unwrap();
        let quadratic = fit_logistic(&records, 50.0, 2, &adam, InputNorm::default()).unwrap();
        assert!(
            linear.training_accuracy <= 0.7,
            "degree-1 accuracy {}",
            linear.training_accuracy
        );
        assert!(
            quadratic.training_accuracy >= 0.95,
            "degree-2 accuracy {}",
            quadratic.training_accuracy
        );
    }

    #[test]
    fn separable_blobs_admit_a_linear_classifier() {
        let ds = crate::data::make_synthetic(crate::data::SyntheticKind::SeparableBlobs, 300, 4)
            .unwrap();
        let points: Vec<(f64, f64)> = (0..ds.len())
            .map(|r| (ds.features().get(r, 0), ds.features().get(r, 1)))
            .collect();
        let model = fit_logistic_points(&points, ds.labels(), 1, &AdamParams::default()).unwrap();
        assert!(
            model.training_accuracy >= 0.99,
            "degree-1 accuracy on blobs {}",
            model.training_accuracy
        );
    }

    #[test]
    fn single_class_labels_are_rejected() {
        let points = vec![(0.1, 0.2), (0.3, 0.4)];
        assert!(matches!(
            fit_logistic_points(&points, &[1, 1], 2, &AdamParams::default()),
            Err(Error::Fit(_))
        ));
    }

    #[test]
    fn percentile_100_labels_are_single_class() {
        let records = radial_ledger(50);
        assert!(fit_logistic(
            &records,
            100.0,
            2,
            &AdamParams::default(),
            InputNorm::default()
        )
        .is_err());
    }

    #[test]
    fn decision_is_invariant_under_consistent_permutation() {
        // Reordering monomials and coefficients together cannot change the
        // decision function; the ordering is purely a convention.
        let model = LogisticModel {
            degree: 2,
            coefficients: vec![0.3, -1.2, 0.8, 2.0, -0.5, 0.9],
            training_accuracy: 0.0,
        };
        let permutation = [5usize, 2, 0, 4, 1, 3];
        for &(a, b) in &[(0.2, 0.7), (1.5, -0.3), (0.0, 0.0)] {
            let features = poly_features(a, b, 2);
            let direct = model.decision(a, b);
            let permuted: f64 = permutation
                .iter()
                .map(|&i| features[i] * model.coefficients[i])
                .sum();
            assert!((direct - permuted).abs() < 1e-12);
        }
    }

    #[test]
    fn deterministic_fit() {
        let records = radial_ledger(100);
        let adam = AdamParams::default();
        let a = fit_logistic(&records, 25.0, 3, &adam, InputNorm::default()).unwrap();
        let b = fit_logistic(&records, 25.0, 3, &adam, InputNorm::default()).unwrap();
        assert_eq!(a.coefficients, b.coefficients);
    }
}

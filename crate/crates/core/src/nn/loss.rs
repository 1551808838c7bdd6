//! Binary cross-entropy cost and binary accuracy.

use crate::{Error, Result};

const CLAMP: f64 = 1e-7;

/// Mean binary cross-entropy, -(1/m) Σ [y ln h + (1-y) ln(1-h)], with
/// predictions clamped to [1e-7, 1-1e-7] before the logarithms.
pub fn bce_cost(predictions: &[f64], labels: &[u8]) -> Result<f64> {
    if predictions.is_empty() {
        return Err(Error::Domain("bce_cost on empty input".into()));
    }
    if predictions.len() != labels.len() {
        return Err(Error::Shape(format!(
            "{} predictions vs {} labels",
            predictions.len(),
            labels.len()
        )));
    }
    let mut sum = 0.0;
    for (&h, &y) in predictions.iter().zip(labels) {
        if y > 1 {
            return Err(Error::Domain(format!("label {y} is not binary")));
        }
        let h = h.clamp(CLAMP, 1.0 - CLAMP);
        sum += if y == 1 { h.ln() } else { (1.0 - h).ln() };
    }
    Ok(-sum / predictions.len() as f64)
}

/// Binary accuracy in percent: a prediction counts as class 1 iff h >= 0.5.
pub fn binary_accuracy(predictions: &[f64], labels: &[u8]) -> Result<f64> {
    if predictions.is_empty() {
        return Err(Error::Domain("binary_accuracy on empty input".into()));
    }
    if predictions.len() != labels.len() {
        return Err(Error::Shape(format!(
            "{} predictions vs {} labels",
            predictions.len(),
            labels.len()
        )));
    }
    let mut correct = 0usize;
    for (&h, &y) in predictions.iter().zip(labels) {
        if y > 1 {
            return Err(Error::Domain(format!("label {y} is not binary")));
        }
        let predicted = u8::from(h >= 0.5);
        if predicted == y {
            correct += 1;
        }
    }
    Ok(100.0 * correct as f64 / predictions.len() as f64)
}

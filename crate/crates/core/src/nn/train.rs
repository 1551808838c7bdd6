//! Mini-batch training loops.

use super::adam::{adam_step, AdamState};
use super::loss::{bce_cost, binary_accuracy};
use super::model::{labels_to_targets, LossKind, MlpModel};
use super::{Metrics, MlpConfig, TrainConfig};
use crate::data::Dataset;
use crate::linalg::Matrix;
use crate::rng::SplitMix64;
use crate::{Error, Result};

fn batch_loss(predictions: &[f64], targets: &[f64], loss: LossKind) -> f64 {
    let m = predictions.len() as f64;
    match loss {
        LossKind::BinaryCrossEntropy => {
            let mut sum = 0.0;
            for (&h, &t) in predictions.iter().zip(targets) {
                let h = h.clamp(1e-7, 1.0 - 1e-7);
                sum += t * h.ln() + (1.0 - t) * (1.0 - h).ln();
            }
            -sum / m
        }
        LossKind::MeanSquaredError => {
            predictions
                .iter()
                .zip(targets)
                .map(|(&h, &t)| (h - t) * (h - t))
                .sum::<f64>()
                / m
        }
    }
}

/// Shuffled mini-batch epochs over `(features, targets)`; the final partial
/// batch is trained on. Fails with `Diverged` if any batch loss goes
/// non-finite.
fn run_epochs(
    model: &mut MlpModel,
    tcfg: &TrainConfig,
    features: &Matrix,
    targets: &[f64],
    loss: LossKind,
) -> Result<()> {
    let mut shuffle_rng = SplitMix64::new(tcfg.shuffle_seed);
    let mut dropout_rng = SplitMix64::new(tcfg.dropout_seed);
    let mut state = AdamState::new(model);
    let mut indices: Vec<usize> = (0..features.rows()).collect();

    for epoch in 0..tcfg.epochs {
        shuffle_rng.shuffle(&mut indices);
        for chunk in indices.chunks(tcfg.batch_size) {
            let batch = features.select_rows(chunk);
            let batch_targets: Vec<f64> = chunk.iter().map(|&i| targets[i]).collect();
            let masks = model.sample_masks(batch.rows(), &mut dropout_rng);
            let (grads, predictions) =
                model.backward_with_loss(&batch, &batch_targets, Some(&masks), loss)?;
            let cost = batch_loss(&predictions, &batch_targets, loss);
            if !cost.is_finite() {
                return Err(Error::Diverged {
                    epoch,
                    message: format!("batch cost is {cost}"),
                });
            }
            match adam_step(model, &grads, &mut state, &tcfg.adam) {
                Err(Error::NonFiniteGradient { layer }) => {
                    return Err(Error::Diverged {
                        epoch,
                        message: format!("non-finite gradient in layer {layer}"),
                    })
                }
                other => other?,
            }
        }
    }
    Ok(())
}

/// Trains a binary classifier with BCE and returns the model together with
/// its eval-mode validation metrics after the final epoch.
///
/// Fully deterministic given (`mcfg.init_seed`, `tcfg.shuffle_seed`,
/// `tcfg.dropout_seed`).
pub fn train(
    mcfg: &MlpConfig,
    tcfg: &TrainConfig,
    train_set: &Dataset,
    val_set: &Dataset,
) -> Result<(MlpModel, Metrics)> {
    mcfg.validate()?;
    tcfg.validate()?;
    for (name, ds) in [("train", train_set), ("validation", val_set)] {
        if ds.feature_count() != mcfg.input_dim {
            return Err(Error::Shape(format!(
                "{name} set has {} features, model expects {}",
                ds.feature_count(),
                mcfg.input_dim
            )));
        }
    }

    let mut model = MlpModel::init(mcfg.clone())?;
    let targets = labels_to_targets(train_set.labels())?;
    run_epochs(
        &mut model,
        tcfg,
        train_set.features(),
        &targets,
        LossKind::BinaryCrossEntropy,
    )?;

    let predictions = model.predict(val_set.features())?;
    let cost = bce_cost(&predictions, val_set.labels())?;
    let accuracy = binary_accuracy(&predictions, val_set.labels())?;
    if !cost.is_finite() {
        return Err(Error::Diverged {
            epoch: tcfg.epochs - 1,
            message: "validation cost is non-finite".into(),
        });
    }
    Ok((model, Metrics { cost, accuracy }))
}

/// Trains a scalar regressor with MSE through the sigmoid output. Targets
/// must lie in (0,1) for the fit to be attainable.
pub fn train_regression(
    mcfg: &MlpConfig,
    tcfg: &TrainConfig,
    inputs: &Matrix,
    targets: &[f64],
) -> Result<MlpModel> {
    mcfg.validate()?;
    tcfg.validate()?;
    if inputs.rows() != targets.len() {
        return Err(Error::Shape(format!(
            "{} input rows vs {} targets",
            inputs.rows(),
            targets.len()
        )));
    }
    if inputs.rows() == 0 {
        return Err(Error::Domain("train_regression on empty input".into()));
    }
    let mut model = MlpModel::init(mcfg.clone())?;
    run_epochs(
        &mut model,
        tcfg,
        inputs,
        targets,
        LossKind::MeanSquaredError,
    )?;
    Ok(model)
}

//! From-scratch dense feed-forward network.
//!
//! A model is a stack of equally sized ReLU hidden layers with inverted
//! dropout after each activation, followed by a single sigmoid output unit.
//! Weights use Xavier-uniform initialization, training uses shuffled
//! mini-batches with bias-corrected Adam, and the loss is binary
//! cross-entropy (mean squared error is available for the surrogate
//! regressions built on the same machinery).
//!
//! All arithmetic is f64 and every source of randomness is an explicit seed,
//! so identical seeds give bitwise-identical trained parameters.

mod adam;
mod loss;
mod model;
mod train;

pub(crate) use adam::adam_update_slice;
pub use adam::{adam_step, AdamState};
pub use loss::{bce_cost, binary_accuracy};
pub use model::{
    xavier_init, DropoutMasks, Gradients, HiddenActivation, LayerParams, LossKind, MlpModel, Mode,
    OutputActivation,
};
pub use train::{train, train_regression};

use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Architecture and initialization of one model.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MlpConfig {
    pub input_dim: usize,
    pub hidden_layers: usize,
    pub hidden_units: usize,
    pub dropout_rate: f64,
    pub hidden_activation: HiddenActivation,
    pub output_activation: OutputActivation,
    pub init_seed: u64,
}

impl MlpConfig {
    /// Validated constructor with the stock ReLU/sigmoid activations.
    pub fn new(
        input_dim: usize,
        hidden_layers: usize,
        hidden_units: usize,
        dropout_rate: f64,
        init_seed: u64,
    ) -> Result<Self> {
        let cfg = Self {
            input_dim,
            hidden_layers,
            hidden_units,
            dropout_rate,
            hidden_activation: HiddenActivation::Relu,
            output_activation: OutputActivation::Sigmoid,
            init_seed,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.input_dim == 0 {
            return Err(Error::InvalidConfig("input_dim must be >= 1".into()));
        }
        if self.hidden_layers == 0 {
            return Err(Error::InvalidConfig("hidden_layers must be >= 1".into()));
        }
        if self.hidden_units == 0 {
            return Err(Error::InvalidConfig("hidden_units must be >= 1".into()));
        }
        if !(0.0..1.0).contains(&self.dropout_rate) {
            return Err(Error::InvalidConfig(format!(
                "dropout_rate must be in [0,1), got {}",
                self.dropout_rate
            )));
        }
        Ok(())
    }
}

/// Adam constants. Defaults are (0.001, 0.9, 0.999, 1e-8).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AdamParams {
    pub learning_rate: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub epsilon: f64,
}

impl Default for AdamParams {
    fn default() -> Self {
        Self {
            learning_rate: 0.001,
            beta1: 0.9,
            beta2: 0.999,
            epsilon: 1e-8,
        }
    }
}

impl AdamParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.learning_rate > 0.0 && self.learning_rate.is_finite()) {
            return Err(Error::InvalidConfig(
                "learning_rate must be positive".into(),
            ));
        }
        for (name, beta) in [("beta1", self.beta1), ("beta2", self.beta2)] {
            if !(0.0 < beta && beta < 1.0) {
                return Err(Error::InvalidConfig(format!("{name} must be in (0,1)")));
            }
        }
        if !self.epsilon.is_finite() || self.epsilon <= 0.0 {
            return Err(Error::InvalidConfig("epsilon must be positive".into()));
        }
        Ok(())
    }
}

/// Training-loop settings. Epoch and batch defaults are 150 and 128.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrainConfig {
    pub epochs: u32,
    pub batch_size: usize,
    pub adam: AdamParams,
    pub shuffle_seed: u64,
    pub dropout_seed: u64,
}

impl TrainConfig {
    pub fn with_seeds(shuffle_seed: u64, dropout_seed: u64) -> Self {
        Self {
            epochs: 150,
            batch_size: 128,
            adam: AdamParams::default(),
            shuffle_seed,
            dropout_seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.epochs == 0 {
            return Err(Error::InvalidConfig("epochs must be >= 1".into()));
        }
        if self.batch_size == 0 {
            return Err(Error::InvalidConfig("batch_size must be >= 1".into()));
        }
        self.adam.validate()
    }
}

/// Validation-set performance of a trained model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    /// Binary cross-entropy on the validation set (eval mode).
    pub cost: f64,
    /// Binary accuracy in percent, 0..=100.
    pub accuracy: f64,
}

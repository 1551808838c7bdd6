//! Bias-corrected Adam parameter updates.

use super::model::{Gradients, LayerParams, MlpModel};
use super::AdamParams;
use crate::linalg::Matrix;
use crate::{Error, Result};

/// First/second-moment accumulators matching the model's parameter shapes.
#[derive(Debug, Clone)]
pub struct AdamState {
    first: Vec<LayerParams>,
    second: Vec<LayerParams>,
    t: u64,
}

impl AdamState {
    pub fn new(model: &MlpModel) -> Self {
        let zeros = || {
            model
                .layers
                .iter()
                .map(|l| LayerParams {
                    weights: Matrix::zeros(l.weights.rows(), l.weights.cols()),
                    biases: vec![0.0; l.biases.len()],
                })
                .collect::<Vec<_>>()
        };
        Self {
            first: zeros(),
            second: zeros(),
            t: 0,
        }
    }

    pub fn timestep(&self) -> u64 {
        self.t
    }
}

/// The element-wise Adam update shared with the flat-vector fits elsewhere in
/// the crate.
pub(crate) fn adam_update_slice(
    params: &mut [f64],
    grads: &[f64],
    m: &mut [f64],
    v: &mut [f64],
    cfg: &AdamParams,
    bias1: f64,
    bias2: f64,
) {
    for i in 0..params.len() {
        let g = grads[i];
        m[i] = cfg.beta1 * m[i] + (1.0 - cfg.beta1) * g;
        v[i] = cfg.beta2 * v[i] + (1.0 - cfg.beta2) * g * g;
        let m_hat = m[i] / bias1;
        let v_hat = v[i] / bias2;
        params[i] -= cfg.learning_rate * m_hat / (v_hat.sqrt() + cfg.epsilon);
    }
}

/// One bias-corrected Adam step over every weight and bias; increments the
/// timestep by exactly 1. A non-finite gradient aborts with the offending
/// layer index before any parameter is touched.
pub fn adam_step(
    model: &mut MlpModel,
    grads: &Gradients,
    state: &mut AdamState,
    cfg: &AdamParams,
) -> Result<()> {
    if grads.layers.len() != model.layers.len() {
        return Err(Error::Shape(format!(
            "{} gradient layers for {} model layers",
            grads.layers.len(),
            model.layers.len()
        )));
    }
    for (l, (layer, grad)) in model.layers.iter().zip(&grads.layers).enumerate() {
        if layer.weights.rows() != grad.weights.rows()
            || layer.weights.cols() != grad.weights.cols()
            || layer.biases.len() != grad.biases.len()
        {
            return Err(Error::Shape(format!(
                "gradient shape mismatch in layer {l}"
            )));
        }
        let finite = grad.weights.is_finite() && grad.biases.iter().all(|b| b.is_finite());
        if !finite {
            return Err(Error::NonFiniteGradient { layer: l });
        }
    }

    state.t += 1;
    let bias1 = 1.0 - cfg.beta1.powi(state.t as i32);
    let bias2 = 1.0 - cfg.beta2.powi(state.t as i32);
    for l in 0..model.layers.len() {
        adam_update_slice(
            model.layers[l].weights.data_mut(),
            grads.layers[l].weights.data(),
            state.first[l].weights.data_mut(),
            state.second[l].weights.data_mut(),
            cfg,
            bias1,
            bias2,
        );
        adam_update_slice(
            &mut model.layers[l].biases,
            &grads.layers[l].biases,
            &mut state.first[l].biases,
            &mut state.second[l].biases,
            cfg,
            bias1,
            bias2,
        );
    }
    Ok(())
}

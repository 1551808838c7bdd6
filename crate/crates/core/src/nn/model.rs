//! Model parameters, initialization, forward pass, and backpropagation.

use serde::{Deserialize, Serialize};

use super::MlpConfig;
use crate::linalg::Matrix;
use crate::rng::SplitMix64;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HiddenActivation {
    Relu,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputActivation {
    Sigmoid,
}

/// Loss driving the output-layer delta in [`MlpModel::backward_with_loss`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LossKind {
    /// Binary cross-entropy against 0/1 targets.
    BinaryCrossEntropy,
    /// Mean squared error against continuous targets in (0,1).
    MeanSquaredError,
}

/// Xavier-uniform weight matrix: entries drawn from U(-L, L) with
/// L = sqrt(6 / (fan_in + fan_out)), laid out as fan_out rows by fan_in columns.
pub fn xavier_init(fan_in: usize, fan_out: usize, rng: &mut SplitMix64) -> Matrix {
    assert!(fan_in >= 1 && fan_out >= 1, "fan dimensions must be >= 1");
    let limit = (6.0 / (fan_in + fan_out) as f64).sqrt();
    let mut weights = Matrix::zeros(fan_out, fan_in);
    for w in weights.data_mut() {
        *w = rng.uniform(-limit, limit);
    }
    weights
}

/// One dense layer: weights are row-major (out_dim x in_dim), biases start at 0.
#[derive(Debug, Clone, PartialEq)]
pub struct LayerParams {
    pub weights: Matrix,
    pub biases: Vec<f64>,
}

impl LayerParams {
    fn xavier(in_dim: usize, out_dim: usize, rng: &mut SplitMix64) -> Self {
        Self {
            weights: xavier_init(in_dim, out_dim, rng),
            biases: vec![0.0; out_dim],
        }
    }

    #[inline]
    pub fn in_dim(&self) -> usize {
        self.weights.cols()
    }

    #[inline]
    pub fn out_dim(&self) -> usize {
        self.weights.rows()
    }

    fn zeros_like(other: &LayerParams) -> Self {
        Self {
            weights: Matrix::zeros(other.weights.rows(), other.weights.cols()),
            biases: vec![0.0; other.biases.len()],
        }
    }
}

/// Per-layer gradients, shaped exactly like the model parameters.
#[derive(Debug, Clone)]
pub struct Gradients {
    pub layers: Vec<LayerParams>,
}

impl Gradients {
    pub fn zeros_like(model: &MlpModel) -> Self {
        Self {
            layers: model.layers.iter().map(LayerParams::zeros_like).collect(),
        }
    }
}

/// Inverted-dropout masks for one batch: entry values are 0 (dropped) or
/// 1/(1-p) (kept and rescaled), one matrix per hidden layer.
#[derive(Debug, Clone)]
pub struct DropoutMasks {
    pub layers: Vec<Matrix>,
}

/// Forward-pass mode: `Train` samples a fresh dropout mask from the supplied
/// generator, `Eval` applies no dropout.
pub enum Mode<'a> {
    Eval,
    Train(&'a mut SplitMix64),
}

/// Dense feed-forward model: `hidden_layers` equally wide ReLU layers with
/// inverted dropout, then one sigmoid output unit.
#[derive(Debug, Clone)]
pub struct MlpModel {
    pub layers: Vec<LayerParams>,
    pub config: MlpConfig,
}

pub(crate) struct ForwardTrace {
    /// Post-dropout hidden activations, one (rows x units) matrix per hidden layer.
    pub hidden: Vec<Matrix>,
    /// Sigmoid outputs, one per batch row.
    pub output: Vec<f64>,
}

#[inline]
fn sigmoid(z: f64) -> f64 {
    1.0 / (1.0 + (-z).exp())
}

impl MlpModel {
    /// Initializes weights with Xavier init seeded from `config.init_seed`;
    /// biases start at zero.
    ///
    /// `hidden_layers == 0` is accepted and yields a plain logistic model —
    /// useful as a closed-form oracle — even though sweep configurations
    /// require at least one hidden layer (see [`MlpConfig::validate`]).
    pub fn init(config: MlpConfig) -> Result<Self> {
        if config.input_dim == 0 {
            return Err(Error::InvalidConfig("input_dim must be >= 1".into()));
        }
        if config.hidden_layers > 0 && config.hidden_units == 0 {
            return Err(Error::InvalidConfig("hidden_units must be >= 1".into()));
        }
        if !(0.0..1.0).contains(&config.dropout_rate) {
            return Err(Error::InvalidConfig(format!(
                "dropout_rate must be in [0,1), got {}",
                config.dropout_rate
            )));
        }
        let mut rng = SplitMix64::new(config.init_seed);
        let mut layers = Vec::with_capacity(config.hidden_layers + 1);
        let mut in_dim = config.input_dim;
        for _ in 0..config.hidden_layers {
            layers.push(LayerParams::xavier(in_dim, config.hidden_units, &mut rng));
            in_dim = config.hidden_units;
        }
        layers.push(LayerParams::xavier(in_dim, 1, &mut rng));
        Ok(Self { layers, config })
    }

    pub fn hidden_layer_count(&self) -> usize {
        self.layers.len() - 1
    }

    /// Samples one inverted-dropout mask per hidden layer for a batch of
    /// `rows` examples. Each unit is kept with probability 1-p and scaled by
    /// 1/(1-p); with p = 0 every entry is exactly 1.
    pub fn sample_masks(&self, rows: usize, rng: &mut SplitMix64) -> DropoutMasks {
        let p = self.config.dropout_rate;
        let scale = 1.0 / (1.0 - p);
        let mut layers = Vec::with_capacity(self.hidden_layer_count());
        for layer in &self.layers[..self.hidden_layer_count()] {
            let mut mask = Matrix::zeros(rows, layer.out_dim());
            for v in mask.data_mut() {
                *v = if rng.next_f64() >= p { scale } else { 0.0 };
            }
            layers.push(mask);
        }
        DropoutMasks { layers }
    }

    /// z = input * W^T + b for one layer.
    fn affine(layer: &LayerParams, input: &Matrix) -> Matrix {
        let rows = input.rows();
        let out_dim = layer.out_dim();
        let mut z = Matrix::zeros(rows, out_dim);
        for r in 0..rows {
            let in_row = input.row(r);
            let z_row = z.row_mut(r);
            for (j, z_out) in z_row.iter_mut().enumerate() {
                let w_row = layer.weights.row(j);
                let mut sum = layer.biases[j];
                for (w, x) in w_row.iter().zip(in_row) {
                    sum += w * x;
                }
                *z_out = sum;
            }
        }
        z
    }

    fn check_batch(&self, batch: &Matrix) -> Result<()> {
        if batch.cols() != self.config.input_dim {
            return Err(Error::Shape(format!(
                "batch has {} columns, model expects {}",
                batch.cols(),
                self.config.input_dim
            )));
        }
        if batch.rows() == 0 {
            return Err(Error::Shape("batch has no rows".into()));
        }
        Ok(())
    }

    /// Full forward pass retaining per-layer activations. `masks: None` is
    /// eval mode (dropout is the identity).
    pub(crate) fn trace(
        &self,
        batch: &Matrix,
        masks: Option<&DropoutMasks>,
    ) -> Result<ForwardTrace> {
        self.check_batch(batch)?;
        if let Some(masks) = masks {
            if masks.layers.len() != self.hidden_layer_count() {
                return Err(Error::Shape(format!(
                    "{} masks supplied for {} hidden layers",
                    masks.layers.len(),
                    self.hidden_layer_count()
                )));
            }
        }
        let mut hidden: Vec<Matrix> = Vec::with_capacity(self.hidden_layer_count());
        for (l, layer) in self.layers[..self.hidden_layer_count()].iter().enumerate() {
            let input = if l == 0 { batch } else { &hidden[l - 1] };
            let mut z = Self::affine(layer, input);
            for v in z.data_mut() {
                if *v < 0.0 {
                    *v = 0.0;
                }
            }
            if let Some(masks) = masks {
                let mask = &masks.layers[l];
                if mask.rows() != z.rows() || mask.cols() != z.cols() {
                    return Err(Error::Shape(format!(
                        "mask {l} is {}x{}, expected {}x{}",
                        mask.rows(),
                        mask.cols(),
                        z.rows(),
                        z.cols()
                    )));
                }
                for (v, m) in z.data_mut().iter_mut().zip(mask.data()) {
                    *v *= m;
                }
            }
            hidden.push(z);
        }
        let last = hidden.last().unwrap_or(batch);
        let z_out = Self::affine(&self.layers[self.hidden_layer_count()], last);
        let output = (0..z_out.rows())
            .map(|r| sigmoid(z_out.get(r, 0)))
            .collect();
        Ok(ForwardTrace { hidden, output })
    }

    /// Predictions in (0,1) for a batch. In train mode each hidden layer's
    /// post-activation output is multiplied by a freshly sampled
    /// inverted-dropout mask; in eval mode dropout is the identity.
    pub fn forward(&self, batch: &Matrix, mode: Mode<'_>) -> Result<Vec<f64>> {
        match mode {
            Mode::Eval => Ok(self.trace(batch, None)?.output),
            Mode::Train(rng) => {
                let masks = self.sample_masks(batch.rows(), rng);
                Ok(self.trace(batch, Some(&masks))?.output)
            }
        }
    }

    /// Eval-mode predictions.
    pub fn predict(&self, batch: &Matrix) -> Result<Vec<f64>> {
        self.forward(batch, Mode::Eval)
    }

    /// Batch-averaged loss gradients for every weight and bias.
    ///
    /// `masks` must be the masks used in the corresponding forward pass
    /// (`None` for eval mode). The returned predictions come for free from the
    /// internal forward pass.
    pub fn backward_with_loss(
        &self,
        batch: &Matrix,
        targets: &[f64],
        masks: Option<&DropoutMasks>,
        loss: LossKind,
    ) -> Result<(Gradients, Vec<f64>)> {
        let m = batch.rows();
        if targets.len() != m {
            return Err(Error::Shape(format!(
                "{} targets for a batch of {} rows",
                targets.len(),
                m
            )));
        }
        let trace = self.trace(batch, masks)?;
        let scale = 1.0 / m as f64;

        // Output-layer pre-activation delta dJ/dz, one column.
        let mut dz = Matrix::zeros(m, 1);
        for (r, (&h, &t)) in trace.output.iter().zip(targets).enumerate() {
            let d = match loss {
                LossKind::BinaryCrossEntropy => (h - t) * scale,
                LossKind::MeanSquaredError => 2.0 * (h - t) * h * (1.0 - h) * scale,
            };
            dz.set(r, 0, d);
        }

        let mut grads = Gradients::zeros_like(self);
        for l in (0..self.layers.len()).rev() {
            let layer = &self.layers[l];
            let input = if l == 0 { batch } else { &trace.hidden[l - 1] };
            let grad = &mut grads.layers[l];
            for r in 0..m {
                let dz_row = dz.row(r);
                let in_row = input.row(r);
                for (j, &d) in dz_row.iter().enumerate() {
                    grad.biases[j] += d;
                    let w_row = grad.weights.row_mut(j);
                    for (w, x) in w_row.iter_mut().zip(in_row) {
                        *w += d * x;
                    }
                }
            }
            if l == 0 {
                break;
            }
            // Propagate to the previous hidden layer: through the weights,
            // then through its dropout mask and ReLU.
            let prev_width = layer.in_dim();
            let mut d_prev = Matrix::zeros(m, prev_width);
            for r in 0..m {
                let dz_row = dz.row(r);
                let d_row = d_prev.row_mut(r);
                for (j, &d) in dz_row.iter().enumerate() {
                    if d != 0.0 {
                        for (acc, w) in d_row.iter_mut().zip(layer.weights.row(j)) {
                            *acc += d * w;
                        }
                    }
                }
            }
            let h = &trace.hidden[l - 1];
            let mask = masks.map(|ms| &ms.layers[l - 1]);
            for r in 0..m {
                for j in 0..prev_width {
                    let mut d = d_prev.get(r, j);
                    if let Some(mask) = mask {
                        d *= mask.get(r, j);
                    }
                    // Post-activation output is positive iff the
                    // pre-activation was (for kept units), so it doubles as
                    // the ReLU derivative indicator.
                    if h.get(r, j) <= 0.0 {
                        d = 0.0;
                    }
                    d_prev.set(r, j, d);
                }
            }
            dz = d_prev;
        }
        Ok((grads, trace.output))
    }

    /// Binary cross-entropy gradients dJ/dθ averaged over the batch, with
    /// `masks` as used in the matching forward pass.
    pub fn backward(
        &self,
        batch: &Matrix,
        labels: &[u8],
        masks: Option<&DropoutMasks>,
    ) -> Result<Gradients> {
        let targets = labels_to_targets(labels)?;
        let (grads, _) =
            self.backward_with_loss(batch, &targets, masks, LossKind::BinaryCrossEntropy)?;
        Ok(grads)
    }

    pub fn parameters_are_finite(&self) -> bool {
        self.layers
            .iter()
            .all(|l| l.weights.is_finite() && l.biases.iter().all(|b| b.is_finite()))
    }
}

pub(crate) fn labels_to_targets(labels: &[u8]) -> Result<Vec<f64>> {
    labels
        .iter()
        .map(|&y| match y {
            0 => Ok(0.0),
            1 => Ok(1.0),
            other => Err(Error::Domain(format!("label {other} is not binary"))),
        })
        .collect()
}

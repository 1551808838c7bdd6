//! Neural surrogates: the cost/accuracy surface network and the inverse
//! dropout-prediction network.
//!
//! Both use the same small architecture — six hidden layers of 16 units,
//! dropout 0.1 — trained with MSE through the sigmoid output. The surface
//! network maps (û, dropout) to cost or accuracy; the inverse network maps
//! (û, cost, accuracy) to a dropout rate.
//!
//! The inverse mapping famously fails the vertical-line test: two different
//! dropout rates can reach the same (cost, accuracy) at the same width, so
//! no function of those inputs can recover both. `fit_inverse` reports the
//! held-out MAE so that failure is measurable; see
//! `harness::find_nonidentifiable_pairs` for the direct witnesses.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{live_records, InputNorm};
use crate::harness::TrialRecord;
use crate::linalg::Matrix;
use crate::nn::{train_regression, AdamParams, MlpConfig, MlpModel, TrainConfig};
use crate::rng::SplitMix64;
use crate::sampler::{derive_trial_seed, SearchSpace};
use crate::{Error, Result};

const HIDDEN_LAYERS: usize = 6;
const HIDDEN_UNITS: usize = 16;
const DROPOUT_RATE: f64 = 0.1;
const HOLDOUT_FRACTION: f64 = 0.2;
const MIN_RECORDS: usize = 20;

// Seed-derivation tags for the independent randomness streams of one fit.
const TAG_INIT: u64 = 0;
const TAG_SHUFFLE: u64 = 1;
const TAG_DROPOUT: u64 = 2;
const TAG_HOLDOUT: u64 = 3;

/// Training budget for the neural surrogates; defaults to 2,000 epochs of
/// batch-128 Adam with the stock constants.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SurrogateTrainConfig {
    pub epochs: u32,
    pub batch_size: usize,
    pub adam: AdamParams,
    pub seed: u64,
}

impl SurrogateTrainConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            epochs: 2000,
            batch_size: 128,
            adam: AdamParams::default(),
            seed,
        }
    }

    fn train_config(&self) -> TrainConfig {
        TrainConfig {
            epochs: self.epochs,
            batch_size: self.batch_size,
            adam: self.adam.clone(),
            shuffle_seed: derive_trial_seed(self.seed, TAG_SHUFFLE),
            dropout_seed: derive_trial_seed(self.seed, TAG_DROPOUT),
        }
    }
}

/// Which measurement the surface network fits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SurfaceTarget {
    /// Raw validation cost.
    Cost,
    /// Validation accuracy rescaled from percent to [0, 1].
    Accuracy,
}

/// Neural response surface over (û, dropout).
#[derive(Debug, Clone)]
pub struct SurfaceSurrogate {
    pub mlp: MlpModel,
    pub target: SurfaceTarget,
    pub norm: InputNorm,
    /// MAE on the 20% held-out split, in the target's scale.
    pub holdout_mae: f64,
}

impl SurfaceSurrogate {
    /// Eval-mode prediction at one (log2 units, dropout) coordinate.
    pub fn predict_at(&self, log2_units: f64, dropout: f64) -> Result<f64> {
        let batch = Matrix::from_vec(1, 2, vec![self.norm.normalize_log2(log2_units), dropout])?;
        Ok(self.mlp.predict(&batch)?[0])
    }
}

/// Neural inverse model over (û, cost, accuracy).
#[derive(Debug, Clone)]
pub struct InverseModel {
    pub mlp: MlpModel,
    pub norm: InputNorm,
    /// MAE of predicted dropout on the 20% held-out split.
    pub holdout_mae: f64,
}

fn mean_absolute_error(predictions: &[f64], targets: &[f64]) -> f64 {
    predictions
        .iter()
        .zip(targets)
        .map(|(p, t)| (p - t).abs())
        .sum::<f64>()
        / targets.len() as f64
}

/// Deterministic 80/20 row split driven by the fit seed.
fn holdout_split(n: usize, seed: u64) -> (Vec<usize>, Vec<usize>) {
    let mut indices: Vec<usize> = (0..n).collect();
    SplitMix64::new(derive_trial_seed(seed, TAG_HOLDOUT)).shuffle(&mut indices);
    let n_holdout = ((HOLDOUT_FRACTION * n as f64).round() as usize).clamp(1, n - 1);
    let holdout = indices[..n_holdout].to_vec();
    let train = indices[n_holdout..].to_vec();
    (train, holdout)
}

fn surrogate_mlp_config(input_dim: usize, seed: u64) -> MlpConfig {
    MlpConfig {
        input_dim,
        hidden_layers: HIDDEN_LAYERS,
        hidden_units: HIDDEN_UNITS,
        dropout_rate: DROPOUT_RATE,
        hidden_activation: crate::nn::HiddenActivation::Relu,
        output_activation: crate::nn::OutputActivation::Sigmoid,
        init_seed: derive_trial_seed(seed, TAG_INIT),
    }
}

fn fit_regression_with_holdout(
    inputs: Vec<Vec<f64>>,
    targets: Vec<f64>,
    input_dim: usize,
    cfg: &SurrogateTrainConfig,
) -> Result<(MlpModel, f64)> {
    let n = inputs.len();
    let (train_idx, holdout_idx) = holdout_split(n, cfg.seed);
    let gather = |idx: &[usize]| -> Result<(Matrix, Vec<f64>)> {
        let rows: Vec<Vec<f64>> = idx.iter().map(|&i| inputs[i].clone()).collect();
        let t: Vec<f64> = idx.iter().map(|&i| targets[i]).collect();
        Ok((Matrix::from_rows(&rows)?, t))
    };
    let (train_x, train_t) = gather(&train_idx)?;
    let (holdout_x, holdout_t) = gather(&holdout_idx)?;

    let mcfg = surrogate_mlp_config(input_dim, cfg.seed);
    let model = train_regression(&mcfg, &cfg.train_config(), &train_x, &train_t)?;
    let predictions = model.predict(&holdout_x)?;
    let mae = mean_absolute_error(&predictions, &holdout_t);
    Ok((model, mae))
}

/// Trains the 6x16 dropout-0.1 surface network on (û, dropout) → target and
/// reports its MAE on a 20% held-out split.
pub fn fit_surface(
    records: &[TrialRecord],
    target: SurfaceTarget,
    cfg: &SurrogateTrainConfig,
    norm: InputNorm,
) -> Result<SurfaceSurrogate> {
    let live = live_records(records);
    if live.len() < MIN_RECORDS {
        return Err(Error::Fit(format!(
            "surface fit needs at least {MIN_RECORDS} records, got {}",
            live.len()
        )));
    }
    let inputs: Vec<Vec<f64>> = live
        .iter()
        .map(|r| vec![norm.normalize_units(r.units), r.dropout])
        .collect();
    let targets: Vec<f64> = live
        .iter()
        .map(|r| match target {
            SurfaceTarget::Cost => r.cost,
            SurfaceTarget::Accuracy => r.accuracy / 100.0,
        })
        .collect();
    let (mlp, holdout_mae) = fit_regression_with_holdout(inputs, targets, 2, cfg)?;
    Ok(SurfaceSurrogate {
        mlp,
        target,
        norm,
        holdout_mae,
    })
}

/// Trains the inverse network on (û, cost, accuracy) → dropout and reports
/// its MAE on a 20% held-out split.
pub fn fit_inverse(
    records: &[TrialRecord],
    cfg: &SurrogateTrainConfig,
    norm: InputNorm,
) -> Result<InverseModel> {
    let live = live_records(records);
    if live.len() < MIN_RECORDS {
        return Err(Error::Fit(format!(
            "inverse fit needs at least {MIN_RECORDS} records, got {}",
            live.len()
        )));
    }
    let inputs: Vec<Vec<f64>> = live
        .iter()
        .map(|r| vec![norm.normalize_units(r.units), r.cost, r.accuracy / 100.0])
        .collect();
    let targets: Vec<f64> = live.iter().map(|r| r.dropout).collect();
    let (mlp, holdout_mae) = fit_regression_with_holdout(inputs, targets, 3, cfg)?;
    Ok(InverseModel {
        mlp,
        norm,
        holdout_mae,
    })
}

/// Predicted dropout rate for a width and a desired (cost, accuracy in
/// percent). The sigmoid output keeps it inside (0, 1).
pub fn predict_inverse(
    model: &InverseModel,
    units: u32,
    desired_cost: f64,
    desired_accuracy: f64,
) -> Result<f64> {
    let batch = Matrix::from_vec(
        1,
        3,
        vec![
            model.norm.normalize_units(units),
            desired_cost,
            desired_accuracy / 100.0,
        ],
    )?;
    Ok(model.mlp.predict(&batch)?[0])
}

/// Surrogate predictions over an axis-aligned grid, endpoints inclusive.
/// Values are row-major with rows indexed by dropout and columns by
/// log2-units.
#[derive(Debug, Clone)]
pub struct PredictionGrid {
    pub region: SearchSpace,
    pub log2_units_axis: Vec<f64>,
    pub dropout_axis: Vec<f64>,
    pub values: Vec<f64>,
}

impl PredictionGrid {
    pub fn resolution(&self) -> (usize, usize) {
        (self.dropout_axis.len(), self.log2_units_axis.len())
    }

    pub fn value(&self, dropout_idx: usize, units_idx: usize) -> f64 {
        self.values[dropout_idx * self.log2_units_axis.len() + units_idx]
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Coordinates of the smallest predicted value.
    pub fn argmin(&self) -> (f64, f64) {
        let mut best = (0usize, 0usize);
        let mut best_value = f64::INFINITY;
        for di in 0..self.dropout_axis.len() {
            for ui in 0..self.log2_units_axis.len() {
                let v = self.value(di, ui);
                if v < best_value {
                    best_value = v;
                    best = (di, ui);
                }
            }
        }
        (self.log2_units_axis[best.1], self.dropout_axis[best.0])
    }
}

fn axis(lo: f64, hi: f64, resolution: usize) -> Vec<f64> {
    (0..resolution)
        .map(|i| lo + (hi - lo) * (i as f64 / (resolution - 1) as f64))
        .collect()
}

/// Eval-mode forward pass over the cartesian grid of a region.
pub fn predict_surface(
    model: &SurfaceSurrogate,
    region: &SearchSpace,
    resolution: usize,
) -> Result<PredictionGrid> {
    if resolution < 2 {
        return Err(Error::InvalidConfig(format!(
            "grid resolution must be >= 2, got {resolution}"
        )));
    }
    let log2_units_axis = axis(region.log2_units.0, region.log2_units.1, resolution);
    let dropout_axis = axis(region.dropout.0, region.dropout.1, resolution);
    let mut rows = Vec::with_capacity(resolution * resolution);
    for &d in &dropout_axis {
        for &l2 in &log2_units_axis {
            rows.push(vec![model.norm.normalize_log2(l2), d]);
        }
    }
    let values = model.mlp.predict(&Matrix::from_rows(&rows)?)?;
    Ok(PredictionGrid {
        region: *region,
        log2_units_axis,
        dropout_axis,
        values,
    })
}

// --- JSON document form -----------------------------------------------------
//
// Model files carry the architecture, the input normalization constants, the
// recorded held-out MAE, and flat row-major parameter arrays per layer.

#[derive(Serialize, Deserialize)]
struct LayerJson {
    in_dim: usize,
    out_dim: usize,
    weights: Vec<f64>,
    biases: Vec<f64>,
}

fn layers_to_json(mlp: &MlpModel) -> Vec<LayerJson> {
    mlp.layers
        .iter()
        .map(|l| LayerJson {
            in_dim: l.in_dim(),
            out_dim: l.out_dim(),
            weights: l.weights.data().to_vec(),
            biases: l.biases.clone(),
        })
        .collect()
}

fn mlp_from_json(
    config: MlpConfig,
    layers: Vec<LayerJson>,
) -> std::result::Result<MlpModel, String> {
    if layers.len() != config.hidden_layers + 1 {
        return Err(format!(
            "{} layers for {} hidden layers",
            layers.len(),
            config.hidden_layers
        ));
    }
    let mut expected_in = config.input_dim;
    let mut built = Vec::with_capacity(layers.len());
    for (i, layer) in layers.into_iter().enumerate() {
        let is_output = i == config.hidden_layers;
        let expected_out = if is_output { 1 } else { config.hidden_units };
        if layer.in_dim != expected_in || layer.out_dim != expected_out {
            return Err(format!(
                "layer {i} is {}x{}, expected {}x{}",
                layer.out_dim, layer.in_dim, expected_out, expected_in
            ));
        }
        let weights = Matrix::from_vec(layer.out_dim, layer.in_dim, layer.weights)
            .map_err(|e| e.to_string())?;
        if layer.biases.len() != layer.out_dim {
            return Err(format!("layer {i} has {} biases", layer.biases.len()));
        }
        if !weights.is_finite() || layer.biases.iter().any(|b| !b.is_finite()) {
            return Err(format!("layer {i} holds non-finite parameters"));
        }
        built.push(crate::nn::LayerParams {
            weights,
            biases: layer.biases,
        });
        expected_in = expected_out;
    }
    Ok(MlpModel {
        layers: built,
        config,
    })
}

#[derive(Serialize, Deserialize)]
struct SurfaceRepr {
    target: SurfaceTarget,
    normalization: InputNorm,
    holdout_mae: f64,
    architecture: MlpConfig,
    layers: Vec<LayerJson>,
}

impl Serialize for SurfaceSurrogate {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SurfaceRepr {
            target: self.target,
            normalization: self.norm,
            holdout_mae: self.holdout_mae,
            architecture: self.mlp.config.clone(),
            layers: layers_to_json(&self.mlp),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SurfaceSurrogate {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = SurfaceRepr::deserialize(deserializer)?;
        let mlp = mlp_from_json(repr.architecture, repr.layers).map_err(D::Error::custom)?;
        Ok(SurfaceSurrogate {
            mlp,
            target: repr.target,
            norm: repr.normalization,
            holdout_mae: repr.holdout_mae,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct InverseRepr {
    normalization: InputNorm,
    holdout_mae: f64,
    architecture: MlpConfig,
    layers: Vec<LayerJson>,
}

impl Serialize for InverseModel {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        InverseRepr {
            normalization: self.norm,
            holdout_mae: self.holdout_mae,
            architecture: self.mlp.config.clone(),
            layers: layers_to_json(&self.mlp),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for InverseModel {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = InverseRepr::deserialize(deserializer)?;
        let mlp = mlp_from_json(repr.architecture, repr.layers).map_err(D::Error::custom)?;
        Ok(InverseModel {
            mlp,
            norm: repr.normalization,
            holdout_mae: repr.holdout_mae,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{run_trials, RunOptions, SimulatedEvaluator};

    fn bowl_records(n: u64, seed: u64) -> Vec<TrialRecord> {
        let dir = tempfile::tempdir().unwrap();
        run_trials(
            &SearchSpace::default(),
            n,
            &SimulatedEvaluator::bowl(),
            seed,
            &dir.path().join("ledger.jsonl"),
            &RunOptions::default(),
        )
        .unwrap()
    }

    fn symmetric_records(n: u64, seed: u64) -> Vec<TrialRecord> {
        let dir = tempfile::tempdir().unwrap();
        run_trials(
            &SearchSpace::default(),
            n,
            &SimulatedEvaluator::symmetric_bowl(),
            seed,
            &dir.path().join("ledger.jsonl"),
            &RunOptions::default(),
        )
        .unwrap()
    }

    fn constant_records(n: u64, cost: f64) -> Vec<TrialRecord> {
        let mut rng = SplitMix64::new(40);
        (0..n)
            .map(|i| TrialRecord {
                trial: i,
                units: 8 + (rng.next_u64() % 1016) as u32,
                dropout: rng.uniform(0.0, 1.0),
                cost,
                accuracy: 50.0,
                epochs: 1,
                seed: i,
                wall_seconds: 0.0,
                skipped: None,
            })
            .collect()
    }

    #[test]
    fn constant_target_is_reproduced_on_the_grid() {
        let records = constant_records(40, 0.4);
        let cfg = SurrogateTrainConfig::with_seed(3);
        let surrogate =
            fit_surface(&records, SurfaceTarget::Cost, &cfg, InputNorm::default()).unwrap();
        let grid = predict_surface(&surrogate, &SearchSpace::default(), 16).unwrap();
        for &v in &grid.values {
            assert!((v - 0.4).abs() <= 0.01, "prediction {v}");
        }
    }

    #[test]
    fn bowl_surface_fit_has_small_holdout_mae() {
        let records = bowl_records(200, 8);
        let cfg = SurrogateTrainConfig::with_seed(4);
        let surrogate =
            fit_surface(&records, SurfaceTarget::Cost, &cfg, InputNorm::default()).unwrap();
        assert!(
            surrogate.holdout_mae <= 0.05,
            "holdout MAE {}",
            surrogate.holdout_mae
        );
        // Predictions track the analytic surface away from the data too.
        let grid = predict_surface(&surrogate, &SearchSpace::default(), 24).unwrap();
        let mut total = 0.0;
        for (di, &d) in grid.dropout_axis.iter().enumerate() {
            for (ui, &l2) in grid.log2_units_axis.iter().enumerate() {
                let u_hat = (l2 - 3.0) / 7.0;
                let truth = (u_hat - 0.5).powi(2) + (d - 0.3).powi(2);
                total += (grid.value(di, ui) - truth).abs();
            }
        }
        let grid_mae = total / grid.values.len() as f64;
        assert!(grid_mae <= 0.06, "grid MAE vs analytic surface {grid_mae}");
    }

    #[test]
    fn accuracy_target_is_fit_in_unit_scale() {
        let records = bowl_records(120, 9);
        let cfg = SurrogateTrainConfig::with_seed(5);
        let surrogate = fit_surface(
            &records,
            SurfaceTarget::Accuracy,
            &cfg,
            InputNorm::default(),
        )
        .unwrap();
        assert!(
            surrogate.holdout_mae <= 0.05,
            "holdout MAE {}",
            surrogate.holdout_mae
        );
        let grid = predict_surface(&surrogate, &SearchSpace::default(), 8).unwrap();
        for &v in &grid.values {
            assert!((0.0..=1.0).contains(&v));
        }
    }

    #[test]
    fn too_few_records_are_rejected() {
        let records = bowl_records(10, 2);
        assert!(matches!(
            fit_surface(
                &records,
                SurfaceTarget::Cost,
                &SurrogateTrainConfig::with_seed(1),
                InputNorm::default()
            ),
            Err(Error::Fit(_))
        ));
    }

    #[test]
    fn grid_values_match_direct_forward_calls() {
        let records = bowl_records(60, 11);
        let cfg = SurrogateTrainConfig::with_seed(12);
        let surrogate =
            fit_surface(&records, SurfaceTarget::Cost, &cfg, InputNorm::default()).unwrap();
        let grid = predict_surface(&surrogate, &SearchSpace::default(), 5).unwrap();
        for (di, &d) in grid.dropout_axis.iter().enumerate() {
            for (ui, &l2) in grid.log2_units_axis.iter().enumerate() {
                let direct = surrogate.predict_at(l2, d).unwrap();
                assert_eq!(grid.value(di, ui), direct);
            }
        }
    }

    #[test]
    fn nested_grids_agree_at_shared_points() {
        let records = bowl_records(60, 13);
        let cfg = SurrogateTrainConfig::with_seed(14);
        let surrogate =
            fit_surface(&records, SurfaceTarget::Cost, &cfg, InputNorm::default()).unwrap();
        let coarse = predict_surface(&surrogate, &SearchSpace::default(), 5).unwrap();
        let fine = predict_surface(&surrogate, &SearchSpace::default(), 9).unwrap();
        for di in 0..5 {
            for ui in 0..5 {
                assert_eq!(
                    coarse.value(di, ui).to_bits(),
                    fine.value(di * 2, ui * 2).to_bits(),
                    "coarse point ({di},{ui}) not reproduced on the nested grid"
                );
            }
        }
    }

    #[test]
    fn large_grid_is_finite_and_fast() {
        let records = bowl_records(60, 15);
        let cfg = SurrogateTrainConfig::with_seed(16);
        let surrogate =
            fit_surface(&records, SurfaceTarget::Cost, &cfg, InputNorm::default()).unwrap();
        let start = std::time::Instant::now();
        let grid = predict_surface(&surrogate, &SearchSpace::default(), 64).unwrap();
        assert!(start.elapsed().as_secs_f64() < 1.0);
        assert_eq!(grid.values.len(), 64 * 64);
        assert!(grid.values.iter().all(|v| v.is_finite()));
    }

    #[test]
    fn symmetric_surface_defeats_the_inverse_model() {
        // Costs are symmetric in dropout about 0.5, so dropout cannot be a
        // function of (units, cost, accuracy) and the fit must stay poor.
        let records = symmetric_records(200, 18);
        let cfg = SurrogateTrainConfig::with_seed(19);
        let inverse = fit_inverse(&records, &cfg, InputNorm::default()).unwrap();
        assert!(
            inverse.holdout_mae >= 0.1,
            "inverse holdout MAE {} unexpectedly small",
            inverse.holdout_mae
        );
    }

    #[test]
    fn inverse_predictions_stay_in_unit_interval() {
        let records = bowl_records(80, 20);
        let cfg = SurrogateTrainConfig::with_seed(21);
        let inverse = fit_inverse(&records, &cfg, InputNorm::default()).unwrap();
        for units in [8u32, 64, 512] {
            for cost in [0.0, 0.3, 2.0] {
                let d = predict_inverse(&inverse, units, cost, 90.0).unwrap();
                assert!((0.0..1.0).contains(&d), "prediction {d}");
            }
        }
    }

    #[test]
    fn surface_fit_is_deterministic() {
        let records = bowl_records(60, 23);
        let cfg = SurrogateTrainConfig::with_seed(24);
        let a = fit_surface(&records, SurfaceTarget::Cost, &cfg, InputNorm::default()).unwrap();
        let b = fit_surface(&records, SurfaceTarget::Cost, &cfg, InputNorm::default()).unwrap();
        assert_eq!(a.holdout_mae.to_bits(), b.holdout_mae.to_bits());
        for (la, lb) in a.mlp.layers.iter().zip(&b.mlp.layers) {
            assert_eq!(la.weights, lb.weights);
            assert_eq!(la.biases, lb.biases);
        }
    }

    #[test]
    fn surface_json_round_trip_preserves_predictions() {
        let records = bowl_records(60, 25);
        let cfg = SurrogateTrainConfig::with_seed(26);
        let surrogate =
            fit_surface(&records, SurfaceTarget::Cost, &cfg, InputNorm::default()).unwrap();
        let json = serde_json::to_string(&surrogate).unwrap();
        let restored: SurfaceSurrogate = serde_json::from_str(&json).unwrap();
        for &(l2, d) in &[(3.5, 0.2), (6.5, 0.3), (9.9, 0.8)] {
            assert_eq!(
                surrogate.predict_at(l2, d).unwrap().to_bits(),
                restored.predict_at(l2, d).unwrap().to_bits()
            );
        }
        // Re-serialization is byte-stable.
        assert_eq!(json, serde_json::to_string(&restored).unwrap());
    }

    #[test]
    fn corrupt_model_json_is_rejected() {
        let records = bowl_records(60, 27);
        let cfg = SurrogateTrainConfig::with_seed(28);
        let surrogate =
            fit_surface(&records, SurfaceTarget::Cost, &cfg, InputNorm::default()).unwrap();
        let mut value: serde_json::Value =
            serde_json::from_str(&serde_json::to_string(&surrogate).unwrap()).unwrap();
        // Drop one weight from the first layer: the shape chain must fail.
        let weights = value["layers"][0]["weights"].as_array_mut().unwrap();
        weights.pop();
        assert!(serde_json::from_value::<SurfaceSurrogate>(value).is_err());
    }
}

//! Resolves the evaluator behind a sweep or zoom: an analytic simulated
//! surface, a synthetic dataset, or a CSV file, the latter two trained with
//! the real network per trial.

use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};

use hypersurf_core::data::{
    iqr_filter, load_csv, make_synthetic, split, standardize, Dataset, SyntheticKind,
};
use hypersurf_core::harness::{train_evaluator, Evaluator, SimulatedEvaluator};
use hypersurf_core::nn::TrainConfig;
use hypersurf_core::sampler::derive_trial_seed;

// Seed-derivation tags far outside any trial-index range.
const TAG_DATASET: u64 = 1 << 40;
const TAG_SPLIT: u64 = (1 << 40) + 1;

pub struct SourceSpec {
    pub simulated: Option<String>,
    pub noise: f64,
    pub synthetic: Option<String>,
    pub rows: usize,
    pub data: Option<PathBuf>,
    pub label: Option<String>,
    pub iqr_coefficient: Option<f64>,
    pub iqr_columns: Option<Vec<String>>,
    pub val_fraction: f64,
    pub epochs: u32,
    pub batch_size: usize,
    pub hidden_layers: usize,
}

pub struct ResolvedSource {
    pub evaluator: Box<dyn Evaluator>,
    pub description: String,
}

fn prepare_splits(
    spec: &SourceSpec,
    dataset: Dataset,
    master_seed: u64,
) -> Result<(Dataset, Dataset)> {
    let dataset = match spec.iqr_coefficient {
        None => dataset,
        Some(coefficient) => {
            let columns = match &spec.iqr_columns {
                None => None,
                Some(names) => {
                    let indices: hypersurf_core::Result<Vec<usize>> =
                        names.iter().map(|n| dataset.feature_index(n)).collect();
                    Some(indices?)
                }
            };
            iqr_filter(&dataset, coefficient, columns.as_deref())?
        }
    };
    let (train, val) = split(
        &dataset,
        spec.val_fraction,
        derive_trial_seed(master_seed, TAG_SPLIT),
    )?;
    let (train, mut others, _) = standardize(&train, &[&val])?;
    Ok((train, others.remove(0)))
}

pub fn resolve(spec: &SourceSpec, master_seed: u64) -> Result<ResolvedSource> {
    let chosen = [
        spec.simulated.is_some(),
        spec.synthetic.is_some(),
        spec.data.is_some(),
    ]
    .iter()
    .filter(|&&c| c)
    .count();
    if chosen != 1 {
        bail!("exactly one of --simulated, --synthetic, or --data must be given");
    }

    if let Some(kind) = &spec.simulated {
        let evaluator = match kind.as_str() {
            "bowl" => SimulatedEvaluator::bowl(),
            "symmetric-bowl" | "symmetric" => SimulatedEvaluator::symmetric_bowl(),
            other => bail!("unknown simulated surface \"{other}\" (bowl, symmetric-bowl)"),
        };
        let evaluator = if spec.noise > 0.0 {
            evaluator.with_noise(spec.noise)
        } else {
            evaluator
        };
        return Ok(ResolvedSource {
            evaluator: Box::new(evaluator),
            description: format!("simulated {kind} (noise {})", spec.noise),
        });
    }

    let mut tcfg = TrainConfig::with_seeds(0, 0);
    tcfg.epochs = spec.epochs;
    tcfg.batch_size = spec.batch_size;

    let (train, val, description) = if let Some(kind) = &spec.synthetic {
        let kind = match kind.as_str() {
            "blobs" => SyntheticKind::SeparableBlobs,
            "annulus" => SyntheticKind::Annulus,
            other => bail!("unknown synthetic dataset \"{other}\" (blobs, annulus)"),
        };
        let dataset = make_synthetic(kind, spec.rows, derive_trial_seed(master_seed, TAG_DATASET))?;
        let (train, val) = prepare_splits(spec, dataset, master_seed)?;
        (
            train,
            val,
            format!("synthetic {kind:?} ({} rows)", spec.rows),
        )
    } else {
        let path = spec.data.as_ref().expect("data source checked above");
        let label = spec
            .label
            .as_ref()
            .ok_or_else(|| anyhow!("--label is required with --data"))?;
        let load = load_csv(path, label).with_context(|| format!("loading {}", path.display()))?;
        if load.dropped_rows > 0 {
            eprintln!(
                "note: dropped {} rows with missing values",
                load.dropped_rows
            );
        }
        let rows = load.dataset.len();
        let (train, val) = prepare_splits(spec, load.dataset, master_seed)?;
        (train, val, format!("{} ({rows} rows)", path.display()))
    };

    let evaluator = train_evaluator(train, val, spec.hidden_layers, tcfg)?;
    Ok(ResolvedSource {
        evaluator: Box::new(evaluator),
        description,
    })
}

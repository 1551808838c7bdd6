//! The four subcommands.

use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::Args;

use hypersurf_core::harness::{load_ledger, run_trials, RunOptions, TrialRecord};
use hypersurf_core::report::{
    bin_ledger, emit_grid_csv, emit_heatmap_svg, emit_linear_fit_plot, emit_scatter_csv,
    HeatmapSpec,
};
use hypersurf_core::sampler::SearchSpace;
use hypersurf_core::surrogates::{
    fit_inverse, fit_linear, fit_logistic, fit_surface, predict_inverse, predict_surface,
    select_by_threshold, InputNorm, ModelDocument, SurfaceTarget, SurrogateTrainConfig,
    ThresholdSpec,
};
use hypersurf_core::zoom::{ZoomConfig, ZoomReport, ZoomRun};

use crate::config::{parse_pair, parse_region, FileConfig};
use crate::source::{resolve, SourceSpec};

/// Flags shared by the commands that evaluate configurations.
#[derive(Args, Debug)]
pub struct SourceArgs {
    /// Analytic test surface: bowl or symmetric-bowl.
    #[arg(long)]
    simulated: Option<String>,
    /// Uniform noise amplitude on the simulated cost channel.
    #[arg(long)]
    noise: Option<f64>,
    /// Synthetic dataset: blobs or annulus.
    #[arg(long)]
    synthetic: Option<String>,
    /// Rows for the synthetic dataset.
    #[arg(long)]
    rows: Option<usize>,
    /// CSV dataset path (header row, numeric cells).
    #[arg(long)]
    data: Option<PathBuf>,
    /// Label column name in the CSV.
    #[arg(long)]
    label: Option<String>,
    /// Apply the IQR outlier rule with this coefficient before splitting.
    #[arg(long)]
    iqr_coefficient: Option<f64>,
    /// Columns the IQR rule applies to (default: all).
    #[arg(long, value_delimiter = ',')]
    iqr_columns: Option<Vec<String>>,
    /// Validation fraction of the stratified split.
    #[arg(long)]
    val_fraction: Option<f64>,
    /// Training epochs per trial.
    #[arg(long)]
    epochs: Option<u32>,
    /// Mini-batch size per trial.
    #[arg(long)]
    batch_size: Option<usize>,
    /// Hidden layers per trial network.
    #[arg(long)]
    hidden_layers: Option<usize>,
}

#[derive(Args, Debug)]
pub struct SpaceArgs {
    /// Sampled log2-units interval, e.g. 3,10.
    #[arg(long, value_parser = parse_pair)]
    log2_units: Option<(f64, f64)>,
    /// Sampled dropout interval, e.g. 0,1.
    #[arg(long, value_parser = parse_pair)]
    dropout: Option<(f64, f64)>,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// JSON config supplying defaults for any flag not given.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Number of trials.
    #[arg(long)]
    n: Option<u64>,
    /// Master seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Concurrent trial evaluations.
    #[arg(long)]
    workers: Option<usize>,
    #[command(flatten)]
    source: SourceArgs,
    #[command(flatten)]
    space: SpaceArgs,
}

struct Merged {
    spec: SourceSpec,
    space: SearchSpace,
    seed: u64,
    out: PathBuf,
    workers: usize,
    file: FileConfig,
}

fn merge(
    config: Option<&Path>,
    source: SourceArgs,
    space: SpaceArgs,
    seed: Option<u64>,
    out: Option<PathBuf>,
    workers: Option<usize>,
) -> Result<Merged> {
    let file = FileConfig::load(config)?;
    let seed = seed.or(file.master_seed).ok_or_else(|| {
        anyhow!("a master seed is required: pass --seed or set master_seed in the config")
    })?;
    let out = out.or_else(|| file.out.clone()).ok_or_else(|| {
        anyhow!("an output directory is required: pass --out or set out in the config")
    })?;
    let space = SearchSpace::new(
        space.log2_units.or(file.log2_units).unwrap_or((3.0, 10.0)),
        space.dropout.or(file.dropout).unwrap_or((0.0, 1.0)),
    )?;
    let spec = SourceSpec {
        simulated: source.simulated.or_else(|| file.simulated.clone()),
        noise: source.noise.or(file.noise).unwrap_or(0.0),
        synthetic: source.synthetic.or_else(|| file.synthetic.clone()),
        rows: source.rows.or(file.rows).unwrap_or(1000),
        data: source.data.or_else(|| file.data.clone()),
        label: source.label.or_else(|| file.label.clone()),
        iqr_coefficient: source.iqr_coefficient.or(file.iqr_coefficient),
        iqr_columns: source.iqr_columns.or_else(|| file.iqr_columns.clone()),
        val_fraction: source.val_fraction.or(file.val_fraction).unwrap_or(0.2),
        epochs: source.epochs.or(file.epochs).unwrap_or(150),
        batch_size: source.batch_size.or(file.batch_size).unwrap_or(128),
        hidden_layers: source.hidden_layers.or(file.hidden_layers).unwrap_or(6),
    };
    let workers = workers.or(file.workers).unwrap_or(1);
    Ok(Merged {
        spec,
        space,
        seed,
        out,
        workers,
        file,
    })
}

fn ensure_dir(path: &Path) -> Result<()> {
    std::fs::create_dir_all(path).with_context(|| format!("creating {}", path.display()))
}

fn best_record(records: &[TrialRecord]) -> Option<&TrialRecord> {
    records.iter().filter(|r| !r.is_skipped()).min_by(|a, b| {
        (a.cost, a.units, a.dropout)
            .partial_cmp(&(b.cost, b.units, b.dropout))
            .expect("ledger costs are finite")
    })
}

fn emit_binned_heatmaps(
    records: &[TrialRecord],
    space: &SearchSpace,
    out: &Path,
    resolution: usize,
) -> Result<()> {
    let cost = bin_ledger(records, space, resolution, resolution, |r| r.cost)?;
    let spec = HeatmapSpec::new(*space, resolution, resolution, cost, "observed cost")?;
    emit_heatmap_svg(&spec, Some(records), &out.join("cost_heatmap.svg"))?;

    let accuracy = bin_ledger(records, space, resolution, resolution, |r| r.accuracy)?;
    let spec = HeatmapSpec::new(
        *space,
        resolution,
        resolution,
        accuracy,
        "observed accuracy (percent)",
    )?;
    emit_heatmap_svg(&spec, Some(records), &out.join("accuracy_heatmap.svg"))?;
    Ok(())
}

pub fn sweep(args: SweepArgs) -> Result<()> {
    let merged = merge(
        args.config.as_deref(),
        args.source,
        args.space,
        args.seed,
        args.out,
        args.workers,
    )?;
    let n = args.n.ok_or_else(|| anyhow!("--n is required for sweep"))?;
    ensure_dir(&merged.out)?;
    let source = resolve(&merged.spec, merged.seed)?;

    let start = Instant::now();
    let ledger_path = merged.out.join("ledger.jsonl");
    let records = run_trials(
        &merged.space,
        n,
        source.evaluator.as_ref(),
        merged.seed,
        &ledger_path,
        &RunOptions {
            workers: merged.workers,
        },
    )?;
    let elapsed = start.elapsed().as_secs_f64();

    emit_scatter_csv(&records, &merged.out.join("scatter.csv"))?;
    emit_binned_heatmaps(&records, &merged.space, &merged.out, 16)?;

    let skips = records.iter().filter(|r| r.is_skipped()).count();
    println!("source: {}", source.description);
    println!("ledger: {}", ledger_path.display());
    println!("trials: {} ({skips} skipped)", records.len());
    if let Some(best) = best_record(&records) {
        println!(
            "min cost: {} at units={} dropout={}",
            best.cost, best.units, best.dropout
        );
    }
    if let Some(max_acc) = records
        .iter()
        .filter(|r| !r.is_skipped())
        .map(|r| r.accuracy)
        .max_by(f64::total_cmp)
    {
        println!("max accuracy: {max_acc}");
    }
    println!("wall time: {elapsed:.1}s");
    Ok(())
}

#[derive(Args, Debug)]
pub struct FitArgs {
    /// JSON config supplying defaults for any flag not given.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Ledger to fit.
    #[arg(long)]
    ledger: PathBuf,
    /// Surrogate family: linear, logistic, surface, or inverse.
    #[arg(long)]
    family: String,
    /// Output directory for the model JSON and plots.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Cost percentile for selection (linear) or labeling (logistic).
    #[arg(long)]
    percentile: Option<f64>,
    /// Numeric cost threshold for the linear fit (overrides --percentile).
    #[arg(long)]
    numeric_threshold: Option<f64>,
    /// Polynomial degree for the logistic fit (1, 2, or 3).
    #[arg(long)]
    degree: Option<u32>,
    /// Surface target: cost or accuracy.
    #[arg(long)]
    target: Option<String>,
    /// Seed for the neural surrogate fits.
    #[arg(long)]
    seed: Option<u64>,
    /// Training epochs for the neural surrogate fits.
    #[arg(long)]
    surrogate_epochs: Option<u32>,
    /// Normalization bounds for log2 units, e.g. 3,10.
    #[arg(long, value_parser = parse_pair)]
    log2_units: Option<(f64, f64)>,
}

fn write_model(out: &Path, family: &str, document: &ModelDocument) -> Result<PathBuf> {
    let path = out.join(format!("model_{family}.json"));
    std::fs::write(&path, document.to_json()?)
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(path)
}

pub fn fit(args: FitArgs) -> Result<()> {
    let file = FileConfig::load(args.config.as_deref())?;
    let out = args.out.or_else(|| file.out.clone()).ok_or_else(|| {
        anyhow!("an output directory is required: pass --out or set out in the config")
    })?;
    ensure_dir(&out)?;

    let ledger = load_ledger(&args.ledger)?;
    if let Some(tail) = &ledger.truncated_tail {
        eprintln!(
            "warning: dropped corrupt trailing line ({} bytes)",
            tail.len()
        );
    }
    let records = ledger.records;
    let percentile = args.percentile.unwrap_or(25.0);
    let norm_bounds = args.log2_units.or(file.log2_units).unwrap_or((3.0, 10.0));
    let norm = InputNorm {
        log2_lo: norm_bounds.0,
        log2_hi: norm_bounds.1,
    };
    let seed = args.seed.or(file.master_seed);
    let surrogate_cfg = |seed: u64| {
        let mut cfg = SurrogateTrainConfig::with_seed(seed);
        if let Some(epochs) = args.surrogate_epochs.or(file.surrogate_epochs) {
            cfg.epochs = epochs;
        }
        cfg
    };

    match args.family.as_str() {
        "linear" => {
            let threshold = match args.numeric_threshold {
                Some(value) => ThresholdSpec::Numeric(value),
                None => ThresholdSpec::Percentile(percentile),
            };
            let subset = select_by_threshold(&records, threshold)?;
            let model = fit_linear(&subset)?;
            emit_linear_fit_plot(&subset, &model, &out.join("linear_fit.svg"))?;
            let path = write_model(&out, "linear", &ModelDocument::Linear(model.clone()))?;
            println!(
                "family=linear threshold={threshold:?} n={} slope={} intercept={} mae={}",
                subset.len(),
                model.slope,
                model.intercept,
                model.mae
            );
            println!("model: {}", path.display());
        }
        "logistic" => {
            let degree = args.degree.unwrap_or(3);
            let model = fit_logistic(&records, percentile, degree, &Default::default(), norm)
                .with_context(|| format!("labeling costs at percentile {percentile}"))?;
            // Decision-probability map with the labeled points on top.
            let resolution = 48;
            let mut values = Vec::with_capacity(resolution * resolution);
            for di in 0..resolution {
                for ui in 0..resolution {
                    let u_hat = ui as f64 / (resolution - 1) as f64;
                    let d = di as f64 / (resolution - 1) as f64;
                    values.push(model.predict_proba(u_hat, d));
                }
            }
            let space = SearchSpace::new(norm_bounds, (0.0, 1.0))?;
            let spec = HeatmapSpec::new(
                space,
                resolution,
                resolution,
                values,
                "logistic superiority probability",
            )?;
            emit_heatmap_svg(&spec, Some(&records), &out.join("logistic_boundary.svg"))?;
            let path = write_model(&out, "logistic", &ModelDocument::Logistic(model.clone()))?;
            println!(
                "family=logistic degree={degree} percentile={percentile} training_accuracy={}",
                model.training_accuracy
            );
            println!("model: {}", path.display());
        }
        "surface" => {
            let seed = seed.ok_or_else(|| anyhow!("--seed is required for surface fits"))?;
            let target = match args.target.as_deref().unwrap_or("cost") {
                "cost" => SurfaceTarget::Cost,
                "accuracy" => SurfaceTarget::Accuracy,
                other => bail!("unknown target \"{other}\" (cost, accuracy)"),
            };
            let surrogate = fit_surface(&records, target, &surrogate_cfg(seed), norm)?;
            let space = SearchSpace::new(norm_bounds, (0.0, 1.0))?;
            let grid = predict_surface(&surrogate, &space, 64)?;
            let (title, file_name, values): (&str, &str, Vec<f64>) = match target {
                SurfaceTarget::Cost => ("predicted cost", "cost_heatmap.svg", grid.values.clone()),
                SurfaceTarget::Accuracy => (
                    "predicted accuracy (percent)",
                    "accuracy_heatmap.svg",
                    grid.values
                        .iter()
                        .map(|v| 100.0 * v.clamp(0.0, 1.0))
                        .collect(),
                ),
            };
            let spec = HeatmapSpec::new(space, 64, 64, values, title)?;
            emit_heatmap_svg(&spec, Some(&records), &out.join(file_name))?;
            let grid_name = match target {
                SurfaceTarget::Cost => "cost_grid.csv",
                SurfaceTarget::Accuracy => "accuracy_grid.csv",
            };
            emit_grid_csv(&grid, &out.join(grid_name))?;
            let path = write_model(&out, "surface", &ModelDocument::Surface(surrogate.clone()))?;
            println!(
                "family=surface target={:?} holdout_mae={}",
                target, surrogate.holdout_mae
            );
            println!("model: {}", path.display());
        }
        "inverse" => {
            let seed = seed.ok_or_else(|| anyhow!("--seed is required for inverse fits"))?;
            let model = fit_inverse(&records, &surrogate_cfg(seed), norm)?;
            // Query-time inputs per the method: the ledger's best cost and
            // best accuracy.
            let live: Vec<&TrialRecord> = records.iter().filter(|r| !r.is_skipped()).collect();
            let desired_cost = live.iter().map(|r| r.cost).fold(f64::INFINITY, f64::min);
            let desired_accuracy = live
                .iter()
                .map(|r| r.accuracy)
                .fold(f64::NEG_INFINITY, f64::max);
            let mut curve = String::from("units,predicted_dropout\n");
            let steps = 64;
            for i in 0..=steps {
                let l2 =
                    norm_bounds.0 + (norm_bounds.1 - norm_bounds.0) * (i as f64 / steps as f64);
                let units = (2.0_f64.powf(l2).floor() as u32).max(1);
                let d = predict_inverse(&model, units, desired_cost, desired_accuracy)?;
                curve.push_str(&format!("{units},{d}\n"));
            }
            let curve_path = out.join("inverse_curve.csv");
            std::fs::write(&curve_path, curve)
                .with_context(|| format!("writing {}", curve_path.display()))?;
            let path = write_model(&out, "inverse", &ModelDocument::Inverse(model.clone()))?;
            println!(
                "family=inverse holdout_mae={} desired_cost={desired_cost} desired_accuracy={desired_accuracy}",
                model.holdout_mae
            );
            println!("model: {}", path.display());
            println!(
                "note: dropout is not a function of (units, cost, accuracy) — \
                 distinct dropout rates can reach the same cost at the same width, \
                 so treat this curve as one candidate per width, not the optimum"
            );
        }
        other => bail!("unknown family \"{other}\" (linear, logistic, surface, inverse)"),
    }
    Ok(())
}

#[derive(Args, Debug)]
pub struct ZoomArgs {
    /// JSON config supplying defaults for any flag not given.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Master seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory (also holds per-round ledgers).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Trial budgets per round, e.g. 100,10,5.
    #[arg(long, value_delimiter = ',')]
    schedule: Option<Vec<u64>>,
    /// Cost quantile defining the zoom region.
    #[arg(long)]
    quantile: Option<f64>,
    /// Region margin per axis, as a fraction of the span.
    #[arg(long)]
    margin: Option<f64>,
    /// Surrogate grid resolution.
    #[arg(long)]
    grid_resolution: Option<usize>,
    /// Concurrent trial evaluations.
    #[arg(long)]
    workers: Option<usize>,
    /// Run at most this many rounds, then save state.
    #[arg(long)]
    rounds: Option<usize>,
    /// Continue from the zoom_report.json in the output directory.
    #[arg(long)]
    resume: bool,
    /// Override the next round's region: L2LO,L2HI,DLO,DHI (with --resume).
    #[arg(long, value_parser = parse_region)]
    region: Option<(f64, f64, f64, f64)>,
    #[command(flatten)]
    source: SourceArgs,
    #[command(flatten)]
    space: SpaceArgs,
}

pub fn zoom(args: ZoomArgs) -> Result<()> {
    let merged = merge(
        args.config.as_deref(),
        args.source,
        args.space,
        args.seed,
        args.out,
        args.workers,
    )?;
    ensure_dir(&merged.out)?;
    let source = resolve(&merged.spec, merged.seed)?;
    let report_path = merged.out.join("zoom_report.json");

    let mut run = if args.resume {
        let text = std::fs::read_to_string(&report_path).with_context(|| {
            format!(
                "reading {} (did the first run finish?)",
                report_path.display()
            )
        })?;
        let mut run = ZoomRun::from_report(ZoomReport::from_json(&text)?)?;
        if let Some(workers) = args.workers.or(merged.file.workers) {
            run.set_workers(workers);
        }
        run
    } else {
        let mut config = ZoomConfig::new(merged.seed);
        if let Some(schedule) = args.schedule.or_else(|| merged.file.schedule.clone()) {
            config.budget_schedule = schedule;
        }
        if let Some(q) = args.quantile.or(merged.file.quantile) {
            config.region_quantile = q;
        }
        if let Some(m) = args.margin.or(merged.file.margin) {
            config.region_margin = m;
        }
        if let Some(g) = args.grid_resolution.or(merged.file.grid_resolution) {
            config.grid_resolution = g;
        }
        config.workers = merged.workers;
        ZoomRun::new(merged.space, config)?
    };

    if let Some((l2_lo, l2_hi, d_lo, d_hi)) = args.region {
        if !args.resume {
            bail!("--region overrides the next round and needs --resume");
        }
        run.override_next_region(SearchSpace::new((l2_lo, l2_hi), (d_lo, d_hi))?)?;
    }

    let mut remaining = args.rounds.unwrap_or(usize::MAX);
    while !run.is_done() && remaining > 0 {
        let round = run.run_round(source.evaluator.as_ref(), &merged.out)?;
        println!(
            "round {}: {} trials in log2_units=({}, {}) dropout=({}, {}){}",
            round.round,
            round.records.len(),
            round.region.log2_units.0,
            round.region.log2_units.1,
            round.region.dropout.0,
            round.region.dropout.1,
            match round.surrogate_holdout_mae {
                Some(mae) => format!(", surrogate holdout MAE {mae}"),
                None => ", fallback region (too few records for a surrogate)".into(),
            }
        );
        remaining -= 1;
    }

    let report = run.report();
    std::fs::write(&report_path, report.to_json()?)
        .with_context(|| format!("writing {}", report_path.display()))?;

    if let Some(best) = &report.best_observed {
        println!(
            "best observed: units={} dropout={} cost={}",
            best.units, best.dropout, best.cost
        );
    }
    if let Some(predicted) = &report.best_predicted {
        println!(
            "best predicted: units={} dropout={}",
            predicted.hidden_units, predicted.dropout_rate
        );
    }
    if report.is_done() {
        println!("zoom complete after {} rounds", report.rounds.len());
    } else {
        println!(
            "zoom paused after {} of {} rounds; rerun with --resume to continue",
            report.rounds.len(),
            report.config.budget_schedule.len()
        );
    }
    println!("report: {}", report_path.display());
    Ok(())
}

#[derive(Args, Debug)]
pub struct ReportArgs {
    /// Ledger to render.
    #[arg(long)]
    ledger: PathBuf,
    /// Output directory.
    #[arg(long)]
    out: PathBuf,
    /// Heatmap cells per axis.
    #[arg(long, default_value_t = 16)]
    resolution: usize,
    #[command(flatten)]
    space: SpaceArgs,
}

pub fn report(args: ReportArgs) -> Result<()> {
    ensure_dir(&args.out)?;
    let ledger = load_ledger(&args.ledger)?;
    if let Some(tail) = &ledger.truncated_tail {
        eprintln!(
            "warning: dropped corrupt trailing line ({} bytes)",
            tail.len()
        );
    }
    let space = SearchSpace::new(
        args.space.log2_units.unwrap_or((3.0, 10.0)),
        args.space.dropout.unwrap_or((0.0, 1.0)),
    )?;
    emit_scatter_csv(&ledger.records, &args.out.join("scatter.csv"))?;
    emit_binned_heatmaps(&ledger.records, &space, &args.out, args.resolution)?;
    println!("scatter: {}", args.out.join("scatter.csv").display());
    println!("heatmaps: {}", args.out.display());
    Ok(())
}

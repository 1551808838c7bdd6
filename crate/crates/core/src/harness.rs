//! Trial execution against a pluggable evaluator, with an append-only
//! JSON-lines ledger.
//!
//! One ledger line per trial, fields exactly
//! `{"trial","units","dropout","cost","accuracy","epochs","seed","wall_seconds"}`
//! (skipped trials add `{"skipped": reason}`); the 64-bit seed is serialized
//! as a decimal string so it survives JSON readers that parse numbers as f64.
//!
//! Runs are resumable: if the ledger already holds k valid records, execution
//! continues at trial k and reproduces the identical point stream, because
//! every trial's sampling and evaluation seed derives from
//! (master_seed, trial index) alone. A corrupt trailing line left by an
//! interrupted append is truncated away before resuming.

use std::fs::OpenOptions;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::data::Dataset;
use crate::nn::{self, MlpConfig, TrainConfig};
use crate::rng::SplitMix64;
use crate::sampler::{derive_trial_seed, sample_point, HyperPoint, SearchSpace};
use crate::{Error, Result};

mod seed_string {
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &u64, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&value.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<u64, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(de::Error::custom)
    }
}

/// One completed (or skipped) trial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: u64,
    pub units: u32,
    pub dropout: f64,
    pub cost: f64,
    pub accuracy: f64,
    pub epochs: u32,
    #[serde(with = "seed_string")]
    pub seed: u64,
    pub wall_seconds: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
}

impl TrialRecord {
    pub fn point(&self) -> HyperPoint {
        HyperPoint {
            hidden_units: self.units,
            dropout_rate: self.dropout,
        }
    }

    pub fn log2_units(&self) -> f64 {
        (self.units as f64).log2()
    }

    pub fn is_skipped(&self) -> bool {
        self.skipped.is_some()
    }

    fn validate(&self) -> std::result::Result<(), String> {
        if self.units == 0 {
            return Err("units must be >= 1".into());
        }
        if !(0.0..1.0).contains(&self.dropout) {
            return Err(format!("dropout {} outside [0,1)", self.dropout));
        }
        if !(self.cost.is_finite() && self.cost >= 0.0) {
            return Err(format!("cost {} is not a non-negative real", self.cost));
        }
        if !(self.accuracy.is_finite() && (0.0..=100.0).contains(&self.accuracy)) {
            return Err(format!("accuracy {} outside [0,100]", self.accuracy));
        }
        if !self.wall_seconds.is_finite() || self.wall_seconds < 0.0 {
            return Err(format!("wall_seconds {} is invalid", self.wall_seconds));
        }
        Ok(())
    }
}

/// What an evaluator reports for one configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub cost: f64,
    pub accuracy: f64,
    pub epochs: u32,
    pub wall_seconds: f64,
}

/// Maps a hyperparameter configuration to (cost, accuracy).
///
/// `evaluate` must be deterministic in cost and accuracy given
/// `(point, seed)`; a `Diverged` error marks the trial as skipped while any
/// other error aborts the run.
pub trait Evaluator: Sync {
    fn evaluate(&self, point: HyperPoint, seed: u64) -> Result<Evaluation>;
}

/// Analytic quadratic-bowl evaluator used as a test oracle.
///
/// Cost is f(û, d) = (û - û*)² + (d - d*)² over the normalized coordinate
/// û = (log2(units) - 3) / 7, optionally plus seeded uniform noise on the
/// cost channel (clamped at zero); accuracy is 100·(1 - min(f, 1)) from the
/// noiseless surface. Evaluations take no time, so `wall_seconds` is 0 and
/// ledgers written against this evaluator are byte-deterministic.
#[derive(Debug, Clone, Copy)]
pub struct SimulatedEvaluator {
    center_units_norm: f64,
    center_dropout: f64,
    noise: f64,
}

impl SimulatedEvaluator {
    /// Bowl with its minimum at û = 0.5 (units = ⌊2^6.5⌋ = 90), d = 0.3.
    pub fn bowl() -> Self {
        Self {
            center_units_norm: 0.5,
            center_dropout: 0.3,
            noise: 0.0,
        }
    }

    /// Bowl centered at d = 0.5: the cost is symmetric in dropout about 0.5,
    /// so d and 1-d are indistinguishable from (units, cost, accuracy).
    pub fn symmetric_bowl() -> Self {
        Self {
            center_units_norm: 0.5,
            center_dropout: 0.5,
            noise: 0.0,
        }
    }

    /// Adds uniform noise U(-sigma, sigma) to the cost channel.
    pub fn with_noise(mut self, sigma: f64) -> Self {
        self.noise = sigma;
        self
    }

    /// û = (log2(units) - 3) / 7.
    pub fn normalized_units(units: u32) -> f64 {
        ((units as f64).log2() - 3.0) / 7.0
    }

    /// The noiseless surface value at a configuration.
    pub fn true_cost(&self, point: HyperPoint) -> f64 {
        let u = Self::normalized_units(point.hidden_units) - self.center_units_norm;
        let d = point.dropout_rate - self.center_dropout;
        u * u + d * d
    }

    /// Argmin of the noiseless surface as (log2 units, dropout).
    pub fn global_minimum(&self) -> (f64, f64) {
        (3.0 + 7.0 * self.center_units_norm, self.center_dropout)
    }
}

impl Evaluator for SimulatedEvaluator {
    fn evaluate(&self, point: HyperPoint, seed: u64) -> Result<Evaluation> {
        let f = self.true_cost(point);
        let cost = if self.noise > 0.0 {
            (f + SplitMix64::new(seed).uniform(-self.noise, self.noise)).max(0.0)
        } else {
            f
        };
        Ok(Evaluation {
            cost,
            accuracy: 100.0 * (1.0 - f.min(1.0)),
            epochs: 0,
            wall_seconds: 0.0,
        })
    }
}

/// Evaluator that trains a real network per configuration.
///
/// Each trial instantiates the architecture template with the point's width
/// and dropout rate, derives the init/shuffle/dropout seeds from the trial
/// seed, trains on the held training split, and reports eval-mode validation
/// metrics. Cost and accuracy are bit-deterministic given (point, seed);
/// `wall_seconds` is measured and therefore excluded from that guarantee.
pub struct TrainEvaluator {
    train_set: Dataset,
    val_set: Dataset,
    hidden_layers: usize,
    tcfg: TrainConfig,
}

/// Builds a [`TrainEvaluator`] from standardized splits and a training
/// template; the template's own seeds are ignored in favor of per-trial ones.
pub fn train_evaluator(
    train_set: Dataset,
    val_set: Dataset,
    hidden_layers: usize,
    tcfg: TrainConfig,
) -> Result<TrainEvaluator> {
    if hidden_layers == 0 {
        return Err(Error::InvalidConfig("hidden_layers must be >= 1".into()));
    }
    if train_set.feature_count() != val_set.feature_count() {
        return Err(Error::Shape(format!(
            "train split has {} features, validation split has {}",
            train_set.feature_count(),
            val_set.feature_count()
        )));
    }
    tcfg.validate()?;
    Ok(TrainEvaluator {
        train_set,
        val_set,
        hidden_layers,
        tcfg,
    })
}

impl Evaluator for TrainEvaluator {
    fn evaluate(&self, point: HyperPoint, seed: u64) -> Result<Evaluation> {
        let start = Instant::now();
        let mcfg = MlpConfig::new(
            self.train_set.feature_count(),
            self.hidden_layers,
            point.hidden_units as usize,
            point.dropout_rate,
            derive_trial_seed(seed, 0),
        )?;
        let mut tcfg = self.tcfg.clone();
        tcfg.shuffle_seed = derive_trial_seed(seed, 1);
        tcfg.dropout_seed = derive_trial_seed(seed, 2);
        let (_, metrics) = nn::train(&mcfg, &tcfg, &self.train_set, &self.val_set)?;
        Ok(Evaluation {
            cost: metrics.cost,
            accuracy: metrics.accuracy,
            epochs: tcfg.epochs,
            wall_seconds: start.elapsed().as_secs_f64(),
        })
    }
}

/// Execution options for [`run_trials`].
#[derive(Debug, Clone)]
pub struct RunOptions {
    /// Number of trials evaluated concurrently. Results are written in trial
    /// order regardless, so ledgers do not depend on the worker count.
    pub workers: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self { workers: 1 }
    }
}

fn make_record(
    trial: u64,
    point: HyperPoint,
    seed: u64,
    outcome: Result<Evaluation>,
) -> Result<TrialRecord> {
    match outcome {
        Ok(eval) => Ok(TrialRecord {
            trial,
            units: point.hidden_units,
            dropout: point.dropout_rate,
            cost: eval.cost,
            accuracy: eval.accuracy,
            epochs: eval.epochs,
            seed,
            wall_seconds: eval.wall_seconds,
            skipped: None,
        }),
        Err(Error::Diverged { epoch, message }) => Ok(TrialRecord {
            trial,
            units: point.hidden_units,
            dropout: point.dropout_rate,
            cost: 0.0,
            accuracy: 0.0,
            epochs: 0,
            seed,
            wall_seconds: 0.0,
            skipped: Some(format!("diverged at epoch {epoch}: {message}")),
        }),
        Err(other) => Err(other),
    }
}

/// The configuration sampled for trial `i` of a run. Depends only on
/// (master_seed, i), which is what makes runs resumable and parallelizable.
pub fn trial_point(space: &SearchSpace, master_seed: u64, trial: u64) -> (HyperPoint, u64) {
    let seed = derive_trial_seed(master_seed, trial);
    let point = sample_point(space, &mut SplitMix64::new(seed));
    (point, seed)
}

/// Runs trials `k..n` (where k is the number of valid records already in the
/// ledger), appending one JSON line per trial. Diverged evaluations are
/// recorded as skips; any other evaluator error aborts with the partial
/// ledger intact. Returns the full n-record ledger.
pub fn run_trials(
    space: &SearchSpace,
    n: u64,
    evaluator: &dyn Evaluator,
    master_seed: u64,
    ledger_path: &Path,
    options: &RunOptions,
) -> Result<Vec<TrialRecord>> {
    space.validate()?;
    if n == 0 {
        return Err(Error::InvalidConfig("trial count must be >= 1".into()));
    }
    let workers = options.workers.max(1);

    let mut records: Vec<TrialRecord> = Vec::new();
    let mut valid_bytes = 0u64;
    if ledger_path.exists() {
        let ledger = load_ledger(ledger_path)?;
        for (i, r) in ledger.records.iter().enumerate() {
            if r.trial != i as u64 {
                return Err(Error::LedgerIntegrity {
                    line: i + 1,
                    message: format!("expected contiguous trial {i}, found {}", r.trial),
                });
            }
        }
        if ledger.records.len() as u64 > n {
            return Err(Error::LedgerIntegrity {
                line: ledger.records.len(),
                message: format!(
                    "ledger already holds {} trials, more than the requested {n}",
                    ledger.records.len()
                ),
            });
        }
        records = ledger.records;
        valid_bytes = ledger.valid_bytes;
    }

    // Drop any corrupt tail left by an interrupted append before re-opening
    // for append.
    {
        let file = OpenOptions::new()
            .create(true)
            .write(true)
            .truncate(false)
            .open(ledger_path)
            .map_err(|e| Error::io(ledger_path, e))?;
        file.set_len(valid_bytes)
            .map_err(|e| Error::io(ledger_path, e))?;
    }
    let mut file = OpenOptions::new()
        .append(true)
        .open(ledger_path)
        .map_err(|e| Error::io(ledger_path, e))?;

    let mut next = records.len() as u64;
    while next < n {
        let chunk_end = (next + workers as u64).min(n);
        let trials: Vec<(u64, HyperPoint, u64)> = (next..chunk_end)
            .map(|i| {
                let (point, seed) = trial_point(space, master_seed, i);
                (i, point, seed)
            })
            .collect();

        let outcomes: Vec<(u64, HyperPoint, u64, Result<Evaluation>)> = if workers == 1 {
            trials
                .into_iter()
                .map(|(i, point, seed)| {
                    let outcome = evaluator.evaluate(point, seed);
                    (i, point, seed, outcome)
                })
                .collect()
        } else {
            std::thread::scope(|scope| {
                let handles: Vec<_> = trials
                    .iter()
                    .map(|&(i, point, seed)| {
                        scope.spawn(move || (i, point, seed, evaluator.evaluate(point, seed)))
                    })
                    .collect();
                handles
                    .into_iter()
                    .map(|h| h.join().expect("worker panicked"))
                    .collect()
            })
        };

        for (i, point, seed, outcome) in outcomes {
            let record = make_record(i, point, seed, outcome)?;
            let line = serde_json::to_string(&record)?;
            writeln!(file, "{line}").map_err(|e| Error::io(ledger_path, e))?;
            file.sync_data().map_err(|e| Error::io(ledger_path, e))?;
            records.push(record);
        }
        next = chunk_end;
    }
    Ok(records)
}

/// A parsed ledger: records sorted by trial index, plus what was found after
/// the last valid record (a crash-truncated line, if any).
#[derive(Debug)]
pub struct Ledger {
    pub records: Vec<TrialRecord>,
    /// Trailing unparseable text dropped during the load, if any.
    pub truncated_tail: Option<String>,
    /// Byte length of the valid prefix of the file.
    pub valid_bytes: u64,
}

/// Loads and validates a ledger file. A malformed final line is rejected with
/// a warning (recorded in `truncated_tail`); a malformed line anywhere else
/// is an integrity error, as is a duplicate trial index or an invariant
/// violation in any record.
pub fn load_ledger(path: &Path) -> Result<Ledger> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut records: Vec<TrialRecord> = Vec::new();
    let mut truncated_tail = None;
    let mut valid_bytes = 0u64;

    let segments: Vec<&str> = text.split_inclusive('\n').collect();
    for (idx, segment) in segments.iter().enumerate() {
        let line_no = idx + 1;
        let is_last = idx + 1 == segments.len();
        let line = segment.trim_end_matches(['\n', '\r']);
        let parsed: std::result::Result<TrialRecord, _> = serde_json::from_str(line);
        match parsed {
            Ok(record) => {
                if let Err(message) = record.validate() {
                    return Err(Error::LedgerIntegrity {
                        line: line_no,
                        message,
                    });
                }
                if records.iter().any(|r| r.trial == record.trial) {
                    return Err(Error::LedgerIntegrity {
                        line: line_no,
                        message: format!("duplicate trial index {}", record.trial),
                    });
                }
                records.push(record);
                valid_bytes += segment.len() as u64;
            }
            Err(e) => {
                if is_last {
                    truncated_tail = Some(line.to_string());
                } else {
                    return Err(Error::LedgerIntegrity {
                        line: line_no,
                        message: e.to_string(),
                    });
                }
            }
        }
    }
    records.sort_by_key(|r| r.trial);
    Ok(Ledger {
        records,
        truncated_tail,
        valid_bytes,
    })
}

/// Finds record pairs witnessing that the dropout rate is not a function of
/// (width, cost, accuracy): same ⌊log2 units⌋ bucket, nearly equal cost and
/// accuracy, yet clearly different dropout rates. Skipped records are
/// ignored; pairs are ordered by trial index.
pub fn find_nonidentifiable_pairs(
    records: &[TrialRecord],
    cost_tol: f64,
    acc_tol: f64,
    dropout_gap: f64,
) -> Vec<(TrialRecord, TrialRecord)> {
    let live: Vec<&TrialRecord> = records.iter().filter(|r| !r.is_skipped()).collect();
    let mut pairs = Vec::new();
    for (i, a) in live.iter().enumerate() {
        for b in &live[i + 1..] {
            if a.units.ilog2() == b.units.ilog2()
                && (a.cost - b.cost).abs() <= cost_tol
                && (a.accuracy - b.accuracy).abs() <= acc_tol
                && (a.dropout - b.dropout).abs() >= dropout_gap
            {
                pairs.push(((*a).clone(), (*b).clone()));
            }
        }
    }
    pairs
}

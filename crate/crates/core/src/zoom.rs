//! Iterative surrogate-guided search: sample a region, fit a cost surface,
//! shrink to its low-cost sublevel box, and repeat with a smaller budget.
//!
//! Each round runs its trial budget inside the current region, refits the
//! surface surrogate on every trial collected so far that lies in the region,
//! predicts over a grid, and zooms to the bounding box of the cells at or
//! below the configured cost quantile (expanded by a margin and clipped to
//! the region). When too few records exist to fit a surrogate, the round
//! falls back to a margin-sized box around the best observed point and says
//! so in the report.
//!
//! Rounds can be driven one at a time ([`ZoomRun`]) so a person can override
//! the next region between rounds; [`zoom_search`] runs the whole schedule.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::harness::{run_trials, Evaluator, RunOptions, TrialRecord};
use crate::nn::AdamParams;
use crate::sampler::{derive_trial_seed, HyperPoint, SearchSpace};
use crate::surrogates::{
    fit_surface, nearest_rank_percentile, predict_surface, InputNorm, PredictionGrid,
    SurfaceTarget, SurrogateTrainConfig,
};
use crate::{Error, Result};

/// Region the tuner shrinks round over round; the same rectangle shape the
/// sampler draws from.
pub type SearchRegion = SearchSpace;

/// Once the selected region is this small on both axes, further zooming
/// cannot move the optimum by a meaningful amount and the run stops early.
const MIN_LOG2_SPAN: f64 = 0.1;
const MIN_DROPOUT_SPAN: f64 = 0.02;

/// Seed-derivation domain offsets: round r's trials draw from
/// (master, r) and its surrogate fit from (master, SURROGATE_SEED_BASE + r).
const SURROGATE_SEED_BASE: u64 = 1 << 32;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ZoomConfig {
    /// Trials per round; positive and non-increasing.
    pub budget_schedule: Vec<u64>,
    /// Cost quantile defining the low-cost sublevel set, in (0, 1).
    pub region_quantile: f64,
    /// Bounding-box expansion per axis, as a fraction of the axis span.
    pub region_margin: f64,
    /// Surrogate prediction grid resolution per axis.
    pub grid_resolution: usize,
    pub master_seed: u64,
    /// Trials evaluated concurrently within a round.
    pub workers: usize,
    /// Surrogate training budget (per-round seeds are derived internally).
    pub surrogate_epochs: u32,
    pub surrogate_batch_size: usize,
    pub adam: AdamParams,
}

impl ZoomConfig {
    pub fn new(master_seed: u64) -> Self {
        Self {
            budget_schedule: vec![100, 10, 5],
            region_quantile: 0.1,
            region_margin: 0.1,
            grid_resolution: 64,
            master_seed,
            workers: 1,
            surrogate_epochs: 2000,
            surrogate_batch_size: 128,
            adam: AdamParams::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.budget_schedule.is_empty() {
            return Err(Error::InvalidConfig("budget schedule is empty".into()));
        }
        for window in self.budget_schedule.windows(2) {
            if window[1] > window[0] {
                return Err(Error::InvalidConfig(
                    "budget schedule must be non-increasing".into(),
                ));
            }
        }
        if self.budget_schedule.contains(&0) {
            return Err(Error::InvalidConfig("budgets must be positive".into()));
        }
        if !(self.region_quantile > 0.0 && self.region_quantile < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "region quantile must be in (0,1), got {}",
                self.region_quantile
            )));
        }
        if !(self.region_margin >= 0.0 && self.region_margin.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "region margin must be >= 0, got {}",
                self.region_margin
            )));
        }
        if self.grid_resolution < 2 {
            return Err(Error::InvalidConfig("grid resolution must be >= 2".into()));
        }
        self.adam.validate()
    }
}

/// One completed round.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RoundReport {
    pub round: usize,
    pub region: SearchRegion,
    pub budget: u64,
    /// This round's ledger slice.
    pub records: Vec<TrialRecord>,
    /// Held-out MAE of the round's surface surrogate, absent on fallback.
    pub surrogate_holdout_mae: Option<f64>,
    /// True when the round selected its region around the best observed point
    /// instead of a fitted surrogate's sublevel set.
    pub fallback: bool,
    pub selected_region: SearchRegion,
    /// Best observed cost over all rounds up to and including this one.
    pub best_cost_so_far: f64,
}

/// Full state of a zoom run; serializable so runs can be resumed round by
/// round.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ZoomReport {
    pub space: SearchRegion,
    pub config: ZoomConfig,
    pub rounds: Vec<RoundReport>,
    /// Region the next round would sample from.
    pub next_region: SearchRegion,
    /// Lowest-cost non-skipped trial, ties broken toward fewer hidden units
    /// then lower dropout.
    pub best_observed: Option<TrialRecord>,
    /// Argmin of the most recent surrogate grid (best observed point when no
    /// surrogate was ever fit).
    pub best_predicted: Option<HyperPoint>,
    /// True when the region shrank below the minimum spans before the
    /// schedule ran out.
    pub terminated_early: bool,
}

impl ZoomReport {
    pub fn is_done(&self) -> bool {
        self.terminated_early || self.rounds.len() >= self.config.budget_schedule.len()
    }

    pub fn total_trials(&self) -> u64 {
        self.rounds.iter().map(|r| r.records.len() as u64).sum()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// True if a trial belongs to a region: its dropout lies inside, and some
/// exponent c within the region's log2 interval could have produced its
/// width (the floor in units = ⌊2^c⌋ can push log2(units) slightly below the
/// interval's lower edge).
pub fn region_contains(region: &SearchRegion, record: &TrialRecord) -> bool {
    let units = record.units as f64;
    (units + 1.0).log2() > region.log2_units.0
        && units.log2() <= region.log2_units.1
        && record.dropout >= region.dropout.0
        && record.dropout <= region.dropout.1
}

fn better(a: &TrialRecord, b: &TrialRecord) -> bool {
    (a.cost, a.units, a.dropout) < (b.cost, b.units, b.dropout)
}

/// Bounding box of the grid cells predicted at or below the cost quantile,
/// expanded by `margin` of each axis span and clipped to the grid's region.
/// Each grid point owns a half-step cell on either side.
pub fn select_region(grid: &PredictionGrid, quantile: f64, margin: f64) -> Result<SearchRegion> {
    if grid.values.is_empty() {
        return Err(Error::Domain("empty prediction grid".into()));
    }
    if !(quantile > 0.0 && quantile < 1.0) {
        return Err(Error::InvalidConfig(format!(
            "quantile must be in (0,1), got {quantile}"
        )));
    }
    let threshold = nearest_rank_percentile(&grid.values, quantile * 100.0);

    let step_l2 = grid.log2_units_axis[1] - grid.log2_units_axis[0];
    let step_d = grid.dropout_axis[1] - grid.dropout_axis[0];
    let mut l2_lo = f64::INFINITY;
    let mut l2_hi = f64::NEG_INFINITY;
    let mut d_lo = f64::INFINITY;
    let mut d_hi = f64::NEG_INFINITY;
    for (di, &d) in grid.dropout_axis.iter().enumerate() {
        for (ui, &l2) in grid.log2_units_axis.iter().enumerate() {
            if grid.value(di, ui) <= threshold {
                l2_lo = l2_lo.min(l2 - step_l2 / 2.0);
                l2_hi = l2_hi.max(l2 + step_l2 / 2.0);
                d_lo = d_lo.min(d - step_d / 2.0);
                d_hi = d_hi.max(d + step_d / 2.0);
            }
        }
    }

    let region = &grid.region;
    let margin_l2 = margin * region.log2_units_span();
    let margin_d = margin * region.dropout_span();
    SearchSpace::new(
        (
            (l2_lo - margin_l2).max(region.log2_units.0),
            (l2_hi + margin_l2).min(region.log2_units.1),
        ),
        (
            (d_lo - margin_d).max(region.dropout.0),
            (d_hi + margin_d).min(region.dropout.1),
        ),
    )
}

/// Margin-sized box around one point, clipped to the region. Used when no
/// surrogate can be fit. The best observed point can come from an earlier,
/// wider round, so its coordinates are clamped into the region first.
fn region_around_point(
    point: &TrialRecord,
    region: &SearchRegion,
    margin: f64,
) -> Result<SearchRegion> {
    let half_l2 = (margin * region.log2_units_span()).max(1e-3);
    let half_d = (margin * region.dropout_span()).max(1e-3);
    let l2 = point
        .log2_units()
        .clamp(region.log2_units.0, region.log2_units.1);
    let d = point.dropout.clamp(region.dropout.0, region.dropout.1);
    SearchSpace::new(
        (
            (l2 - half_l2).max(region.log2_units.0),
            (l2 + half_l2).min(region.log2_units.1),
        ),
        (
            (d - half_d).max(region.dropout.0),
            (d + half_d).min(region.dropout.1),
        ),
    )
}

/// A zoom run in progress.
pub struct ZoomRun {
    report: ZoomReport,
}

impl ZoomRun {
    pub fn new(space: SearchRegion, config: ZoomConfig) -> Result<Self> {
        space.validate()?;
        config.validate()?;
        Ok(Self {
            report: ZoomReport {
                space,
                next_region: space,
                config,
                rounds: Vec::new(),
                best_observed: None,
                best_predicted: None,
                terminated_early: false,
            },
        })
    }

    /// Resumes from a serialized report.
    pub fn from_report(report: ZoomReport) -> Result<Self> {
        report.space.validate()?;
        report.config.validate()?;
        report.next_region.validate()?;
        Ok(Self { report })
    }

    pub fn report(&self) -> &ZoomReport {
        &self.report
    }

    pub fn into_report(self) -> ZoomReport {
        self.report
    }

    pub fn is_done(&self) -> bool {
        self.report.is_done()
    }

    /// Changes the worker count for subsequent rounds. Safe at any time:
    /// results never depend on it.
    pub fn set_workers(&mut self, workers: usize) {
        self.report.config.workers = workers.max(1);
    }

    /// Imposes the next round's region by hand. It must stay inside the last
    /// completed round's region (nesting is an invariant of the report).
    pub fn override_next_region(&mut self, region: SearchRegion) -> Result<()> {
        region.validate()?;
        let parent = self
            .report
            .rounds
            .last()
            .map(|r| r.region)
            .unwrap_or(self.report.space);
        if !region.is_within(&parent) {
            return Err(Error::InvalidConfig(format!(
                "override region {region:?} is not contained in the current region {parent:?}"
            )));
        }
        self.report.next_region = region;
        Ok(())
    }

    /// Runs one round: sample the region, refit the surrogate on every
    /// in-region trial so far, and shrink. The round's ledger is written to
    /// `out_dir/round_<r>.jsonl`.
    pub fn run_round(&mut self, evaluator: &dyn Evaluator, out_dir: &Path) -> Result<&RoundReport> {
        if self.is_done() {
            return Err(Error::InvalidConfig("zoom run is already complete".into()));
        }
        let round = self.report.rounds.len();
        let budget = self.report.config.budget_schedule[round];
        let region = self.report.next_region;
        let ledger_path = out_dir.join(format!("round_{round}.jsonl"));

        let records = run_trials(
            &region,
            budget,
            evaluator,
            derive_trial_seed(self.report.config.master_seed, round as u64),
            &ledger_path,
            &RunOptions {
                workers: self.report.config.workers,
            },
        )?;

        // Track the best observation (skips excluded).
        for r in records.iter().filter(|r| !r.is_skipped()) {
            if self
                .report
                .best_observed
                .as_ref()
                .is_none_or(|b| better(r, b))
            {
                self.report.best_observed = Some(r.clone());
            }
        }
        let best = self.report.best_observed.clone().ok_or_else(|| {
            Error::DegenerateData(format!("every trial through round {round} was skipped"))
        })?;

        // Cumulative refit: all in-region trials from every round so far.
        let mut cumulative: Vec<TrialRecord> = Vec::new();
        for past in &self.report.rounds {
            cumulative.extend(
                past.records
                    .iter()
                    .filter(|r| region_contains(&region, r))
                    .cloned(),
            );
        }
        cumulative.extend(
            records
                .iter()
                .filter(|r| region_contains(&region, r))
                .cloned(),
        );

        let surrogate_cfg = SurrogateTrainConfig {
            epochs: self.report.config.surrogate_epochs,
            batch_size: self.report.config.surrogate_batch_size,
            adam: self.report.config.adam.clone(),
            seed: derive_trial_seed(
                self.report.config.master_seed,
                SURROGATE_SEED_BASE + round as u64,
            ),
        };
        let (selected_region, surrogate_holdout_mae, fallback) = match fit_surface(
            &cumulative,
            SurfaceTarget::Cost,
            &surrogate_cfg,
            InputNorm::default(),
        ) {
            Ok(surrogate) => {
                let grid =
                    predict_surface(&surrogate, &region, self.report.config.grid_resolution)?;
                let (l2, d) = grid.argmin();
                self.report.best_predicted = Some(HyperPoint {
                    hidden_units: (2.0_f64.powf(l2).floor() as u32).max(1),
                    dropout_rate: d,
                });
                let selected = select_region(
                    &grid,
                    self.report.config.region_quantile,
                    self.report.config.region_margin,
                )?;
                (selected, Some(surrogate.holdout_mae), false)
            }
            Err(Error::Fit(_)) => {
                let selected =
                    region_around_point(&best, &region, self.report.config.region_margin)?;
                if self.report.best_predicted.is_none() {
                    self.report.best_predicted = Some(best.point());
                }
                (selected, None, true)
            }
            Err(other) => return Err(other),
        };

        self.report.rounds.push(RoundReport {
            round,
            region,
            budget,
            records,
            surrogate_holdout_mae,
            fallback,
            selected_region,
            best_cost_so_far: best.cost,
        });
        self.report.next_region = selected_region;
        if selected_region.log2_units_span() < MIN_LOG2_SPAN
            && selected_region.dropout_span() < MIN_DROPOUT_SPAN
        {
            self.report.terminated_early = true;
        }
        Ok(self.report.rounds.last().expect("round just pushed"))
    }
}

/// Runs the whole schedule and returns the final report. Per-round ledgers
/// land in `out_dir/round_<r>.jsonl`.
pub fn zoom_search(
    space: SearchRegion,
    config: ZoomConfig,
    evaluator: &dyn Evaluator,
    out_dir: &Path,
) -> Result<ZoomReport> {
    let mut run = ZoomRun::new(space, config)?;
    while !run.is_done() {
        run.run_round(evaluator, out_dir)?;
    }
    Ok(run.into_report())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{Evaluation, SimulatedEvaluator};
    use std::sync::atomic::{AtomicU64, Ordering};

    fn grid_from_values(
        region: SearchRegion,
        resolution: usize,
        values: Vec<f64>,
    ) -> PredictionGrid {
        let axis = |lo: f64, hi: f64| -> Vec<f64> {
            (0..resolution)
                .map(|i| lo + (hi - lo) * (i as f64 / (resolution - 1) as f64))
                .collect()
        };
        PredictionGrid {
            region,
            log2_units_axis: axis(region.log2_units.0, region.log2_units.1),
            dropout_axis: axis(region.dropout.0, region.dropout.1),
            values,
        }
    }

    #[test]
    fn singleton_minimum_selects_that_cell() {
        let region = SearchSpace::default();
        let mut values = vec![1.0; 4];
        values[3] = 0.0; // dropout index 1, units index 1
        let grid = grid_from_values(region, 2, values);
        let selected = select_region(&grid, 0.1, 0.0).unwrap();
        // The minimum sits at the region corner (10, 1); its half-step cell
        // (3.5 in log2 units, 0.5 in dropout) is clipped to the region.
        assert!((selected.log2_units.0 - 6.5).abs() < 1e-12);
        assert!((selected.log2_units.1 - 10.0).abs() < 1e-12);
        assert!((selected.dropout.0 - 0.5).abs() < 1e-12);
        assert!((selected.dropout.1 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn constant_grid_selects_the_full_region() {
        let region = SearchSpace::new((4.0, 8.0), (0.2, 0.8)).unwrap();
        let grid = grid_from_values(region, 5, vec![0.7; 25]);
        let selected = select_region(&grid, 0.1, 0.0).unwrap();
        assert_eq!(selected, region);
    }

    #[test]
    fn bowl_sublevel_box_contains_the_minimum() {
        let region = SearchSpace::default();
        let resolution = 33;
        let mut values = Vec::new();
        for di in 0..resolution {
            for ui in 0..resolution {
                let u_hat = ui as f64 / (resolution - 1) as f64;
                let d = di as f64 / (resolution - 1) as f64;
                values.push((u_hat - 0.5).powi(2) + (d - 0.3).powi(2));
            }
        }
        let grid = grid_from_values(region, resolution, values);
        let selected = select_region(&grid, 0.1, 0.1).unwrap();
        // The analytic argmin is at log2 units 6.5, dropout 0.3.
        assert!(selected.log2_units.0 <= 6.5 && 6.5 <= selected.log2_units.1);
        assert!(selected.dropout.0 <= 0.3 && 0.3 <= selected.dropout.1);
        // And it is a strict shrink.
        assert!(selected.log2_units_span() < region.log2_units_span());
        assert!(selected.dropout_span() < region.dropout_span());
    }

    struct CountingEvaluator {
        inner: SimulatedEvaluator,
        calls: AtomicU64,
    }

    impl Evaluator for CountingEvaluator {
        fn evaluate(&self, point: HyperPoint, seed: u64) -> crate::Result<Evaluation> {
            self.calls.fetch_add(1, Ordering::SeqCst);
            self.inner.evaluate(point, seed)
        }
    }

    #[test]
    fn noiseless_bowl_converges_and_spends_exactly_the_budget() {
        let dir = tempfile::tempdir().unwrap();
        let evaluator = CountingEvaluator {
            inner: SimulatedEvaluator::bowl(),
            calls: AtomicU64::new(0),
        };
        let mut config = ZoomConfig::new(3);
        config.budget_schedule = vec![60, 10, 5];
        let report = zoom_search(SearchSpace::default(), config, &evaluator, dir.path()).unwrap();

        assert_eq!(evaluator.calls.load(Ordering::SeqCst), 75);
        assert_eq!(report.total_trials(), 75);

        let best = report.best_observed.as_ref().unwrap();
        assert!(
            (best.dropout - 0.3).abs() <= 0.05,
            "best dropout {}",
            best.dropout
        );
        assert!(
            (best.log2_units() - 6.5).abs() <= 0.5,
            "best log2 units {}",
            best.log2_units()
        );

        // Regions nest and the best cost never rises.
        for pair in report.rounds.windows(2) {
            assert!(pair[1].region.is_within(&pair[0].region));
            assert!(pair[1].best_cost_so_far <= pair[0].best_cost_so_far);
        }
        for round in &report.rounds {
            assert!(round.selected_region.is_within(&round.region));
        }
    }

    #[test]
    fn single_trial_schedule_degenerates_to_one_round() {
        let dir = tempfile::tempdir().unwrap();
        let evaluator = SimulatedEvaluator::bowl();
        let mut config = ZoomConfig::new(9);
        config.budget_schedule = vec![1];
        let report = zoom_search(SearchSpace::default(), config, &evaluator, dir.path()).unwrap();
        assert_eq!(report.rounds.len(), 1);
        assert!(report.rounds[0].fallback);
        assert!(report.rounds[0].surrogate_holdout_mae.is_none());
        assert!(report.best_observed.is_some());
        assert_eq!(
            report.best_predicted.unwrap().hidden_units,
            report.best_observed.as_ref().unwrap().units
        );
    }

    #[test]
    fn zoom_is_deterministic() {
        let evaluator = SimulatedEvaluator::bowl().with_noise(0.02);
        let mut reports = Vec::new();
        for _ in 0..2 {
            let dir = tempfile::tempdir().unwrap();
            let mut config = ZoomConfig::new(17);
            config.budget_schedule = vec![30, 10];
            let report =
                zoom_search(SearchSpace::default(), config, &evaluator, dir.path()).unwrap();
            reports.push(report.to_json().unwrap());
        }
        assert_eq!(reports[0], reports[1]);
    }

    #[test]
    fn worker_count_does_not_change_the_report() {
        let evaluator = SimulatedEvaluator::bowl().with_noise(0.01);
        let mut reports = Vec::new();
        for workers in [1usize, 3] {
            let dir = tempfile::tempdir().unwrap();
            let mut config = ZoomConfig::new(53);
            config.budget_schedule = vec![25, 8];
            config.workers = workers;
            let report =
                zoom_search(SearchSpace::default(), config, &evaluator, dir.path()).unwrap();
            let mut json: serde_json::Value =
                serde_json::from_str(&report.to_json().unwrap()).unwrap();
            // The worker count is configuration, not result; mask it out.
            json["config"]["workers"] = serde_json::json!(0);
            reports.push(json);
        }
        assert_eq!(reports[0], reports[1]);
    }

    #[test]
    fn tiny_selected_region_terminates_early() {
        // A one-cell quantile on a fine grid with no margin selects a box
        // smaller than the minimum spans, so the remaining budgets are never
        // spent.
        let dir = tempfile::tempdir().unwrap();
        let mut config = ZoomConfig::new(41);
        config.budget_schedule = vec![30, 10, 5];
        config.region_quantile = 0.00005;
        config.region_margin = 0.0;
        config.grid_resolution = 128;
        let report = zoom_search(
            SearchSpace::default(),
            config,
            &SimulatedEvaluator::bowl(),
            dir.path(),
        )
        .unwrap();
        assert!(report.terminated_early);
        assert_eq!(report.rounds.len(), 1);
        assert_eq!(report.total_trials(), 30);
        let selected = report.rounds[0].selected_region;
        assert!(selected.log2_units_span() < 0.1);
        assert!(selected.dropout_span() < 0.02);
    }

    #[test]
    fn resume_round_by_round_matches_single_shot() {
        let evaluator = SimulatedEvaluator::bowl();
        let mut config = ZoomConfig::new(29);
        config.budget_schedule = vec![25, 8];

        let dir_a = tempfile::tempdir().unwrap();
        let single = zoom_search(
            SearchSpace::default(),
            config.clone(),
            &evaluator,
            dir_a.path(),
        )
        .unwrap();

        // Same run, but serialized to JSON and reloaded between rounds.
        let dir_b = tempfile::tempdir().unwrap();
        let mut run = ZoomRun::new(SearchSpace::default(), config).unwrap();
        run.run_round(&evaluator, dir_b.path()).unwrap();
        let json = run.report().to_json().unwrap();
        let mut resumed = ZoomRun::from_report(ZoomReport::from_json(&json).unwrap()).unwrap();
        resumed.run_round(&evaluator, dir_b.path()).unwrap();
        assert!(resumed.is_done());

        assert_eq!(
            single.to_json().unwrap(),
            resumed.report().to_json().unwrap()
        );
    }

    #[test]
    fn manual_region_override_is_honored_and_validated() {
        let evaluator = SimulatedEvaluator::bowl();
        let dir = tempfile::tempdir().unwrap();
        let mut config = ZoomConfig::new(31);
        config.budget_schedule = vec![25, 8];
        let mut run = ZoomRun::new(SearchSpace::default(), config).unwrap();
        run.run_round(&evaluator, dir.path()).unwrap();
        let round0 = run.report().rounds[0].region;

        // A region not contained in round 0's region is rejected.
        let outside = SearchSpace::new(
            (round0.log2_units.0, round0.log2_units.1 + 1.0),
            round0.dropout,
        );
        if let Ok(outside) = outside {
            assert!(run.override_next_region(outside).is_err());
        }

        // A region inside it is accepted and used by the next round.
        let inner = SearchSpace::new(
            (
                round0.log2_units.0 + 0.25 * round0.log2_units_span(),
                round0.log2_units.0 + 0.75 * round0.log2_units_span(),
            ),
            (
                round0.dropout.0 + 0.25 * round0.dropout_span(),
                round0.dropout.0 + 0.75 * round0.dropout_span(),
            ),
        )
        .unwrap();
        run.override_next_region(inner).unwrap();
        run.run_round(&evaluator, dir.path()).unwrap();
        assert_eq!(run.report().rounds[1].region, inner);
    }

    #[test]
    fn config_validation_rejects_bad_schedules() {
        let mut config = ZoomConfig::new(1);
        config.budget_schedule = vec![];
        assert!(config.validate().is_err());
        config.budget_schedule = vec![10, 20];
        assert!(config.validate().is_err());
        config.budget_schedule = vec![10, 0];
        assert!(config.validate().is_err());
        config.budget_schedule = vec![10, 10, 5];
        assert!(config.validate().is_ok());
    }
}

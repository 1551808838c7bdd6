//! Hyperparameter sampling and per-trial seed derivation.
//!
//! Hidden-layer width is sampled on a logarithmic scale: units = ⌊2^c⌋ with
//! c uniform over the log2 interval, so each octave of widths receives equal
//! probability mass. The dropout rate is uniform on its interval.

use serde::{Deserialize, Serialize};

use crate::rng::{mix64, SplitMix64, GOLDEN_GAMMA};
use crate::{Error, Result};

/// One (hidden units, dropout rate) configuration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HyperPoint {
    pub hidden_units: u32,
    pub dropout_rate: f64,
}

impl HyperPoint {
    pub fn new(hidden_units: u32, dropout_rate: f64) -> Result<Self> {
        if hidden_units == 0 {
            return Err(Error::InvalidConfig("hidden_units must be >= 1".into()));
        }
        if !(0.0..1.0).contains(&dropout_rate) {
            return Err(Error::InvalidConfig(format!(
                "dropout_rate must be in [0,1), got {dropout_rate}"
            )));
        }
        Ok(Self {
            hidden_units,
            dropout_rate,
        })
    }

    pub fn log2_units(&self) -> f64 {
        (self.hidden_units as f64).log2()
    }
}

/// Axis-aligned sampling rectangle over (log2 units, dropout rate).
///
/// The default space is log2 units in (3, 10) — widths 8 through 1024 — and
/// dropout in (0, 1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchSpace {
    pub log2_units: (f64, f64),
    pub dropout: (f64, f64),
}

impl Default for SearchSpace {
    fn default() -> Self {
        Self {
            log2_units: (3.0, 10.0),
            dropout: (0.0, 1.0),
        }
    }
}

impl SearchSpace {
    pub fn new(log2_units: (f64, f64), dropout: (f64, f64)) -> Result<Self> {
        let space = Self {
            log2_units,
            dropout,
        };
        space.validate()?;
        Ok(space)
    }

    pub fn validate(&self) -> Result<()> {
        let (ulo, uhi) = self.log2_units;
        let (dlo, dhi) = self.dropout;
        if !(ulo.is_finite() && uhi.is_finite() && ulo < uhi) {
            return Err(Error::InvalidConfig(format!(
                "log2 units interval ({ulo}, {uhi}) is empty or non-finite"
            )));
        }
        if ulo < 0.0 {
            return Err(Error::InvalidConfig(format!(
                "log2 units lower bound must be >= 0, got {ulo}"
            )));
        }
        if !(dlo.is_finite() && dhi.is_finite() && dlo < dhi) {
            return Err(Error::InvalidConfig(format!(
                "dropout interval ({dlo}, {dhi}) is empty or non-finite"
            )));
        }
        if dlo < 0.0 || dhi > 1.0 {
            return Err(Error::InvalidConfig(format!(
                "dropout interval ({dlo}, {dhi}) must lie within [0, 1]"
            )));
        }
        Ok(())
    }

    pub fn log2_units_span(&self) -> f64 {
        self.log2_units.1 - self.log2_units.0
    }

    pub fn dropout_span(&self) -> f64 {
        self.dropout.1 - self.dropout.0
    }

    /// True if `self` lies entirely within `outer`, with a little slack for
    /// round-off at shared edges.
    pub fn is_within(&self, outer: &SearchSpace) -> bool {
        const EPS: f64 = 1e-9;
        self.log2_units.0 >= outer.log2_units.0 - EPS
            && self.log2_units.1 <= outer.log2_units.1 + EPS
            && self.dropout.0 >= outer.dropout.0 - EPS
            && self.dropout.1 <= outer.dropout.1 + EPS
    }
}

/// Draws one configuration: c ~ U(log2 interval), units = ⌊2^c⌋, and
/// dropout ~ U(dropout interval).
pub fn sample_point(space: &SearchSpace, rng: &mut SplitMix64) -> HyperPoint {
    let c = rng.uniform(space.log2_units.0, space.log2_units.1);
    let hidden_units = (2.0_f64.powf(c).floor() as u32).max(1);
    let dropout_rate = rng.uniform(space.dropout.0, space.dropout.1);
    HyperPoint {
        hidden_units,
        dropout_rate,
    }
}

/// Stable per-trial seed: the splitmix64 finalizer applied to the master seed
/// advanced by (trial_index + 1) golden-ratio increments. Pure integer
/// arithmetic, identical on every platform.
pub fn derive_trial_seed(master_seed: u64, trial_index: u64) -> u64 {
    mix64(master_seed.wrapping_add(GOLDEN_GAMMA.wrapping_mul(trial_index.wrapping_add(1))))
}

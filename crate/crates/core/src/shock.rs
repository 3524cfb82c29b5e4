//! Shock arrivals with degradation- and count-dependent intensity, and the
//! two-threshold classification of shock magnitudes.

use rand::Rng;
use rand_distr::Distribution;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::NormalLaw;

/// Largest admissible expected number of arrivals per step.
pub const MAX_RATE_DT: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShockParams {
    /// Baseline intensity λ₀.
    pub lambda0: f64,
    /// Degradation-to-intensity dependence γ.
    pub gamma_dep: f64,
    /// Facilitation factor η.
    pub eta: f64,
    pub magnitude_law: NormalLaw,
    /// D₀: magnitudes above it switch the degradation rate.
    pub damage_threshold: f64,
    /// D₁: magnitudes above it cause hard failure.
    pub hard_threshold: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShockKind {
    Benign,
    Damaging,
    Fatal,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShockEvent {
    pub time: f64,
    pub magnitude: f64,
    pub kind: ShockKind,
}

impl ShockParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.lambda0.is_finite() && self.lambda0 >= 0.0) {
            return Err(Error::invalid(
                "lambda0",
                format!("must be >= 0, got {}", self.lambda0),
            ));
        }
        if !(self.gamma_dep.is_finite() && self.gamma_dep >= 0.0) {
            return Err(Error::invalid(
                "gamma",
                format!("must be >= 0, got {}", self.gamma_dep),
            ));
        }
        if !(self.eta.is_finite() && self.eta > 0.0) {
            return Err(Error::invalid(
                "eta",
                format!("must be > 0, got {}", self.eta),
            ));
        }
        if self.damage_threshold.is_nan() || self.hard_threshold.is_nan() {
            return Err(Error::invalid("D0", "thresholds must not be NaN"));
        }
        if self.damage_threshold > self.hard_threshold {
            return Err(Error::invalid(
                "D0",
                format!(
                    "damage threshold D0 = {} must not exceed hard threshold D1 = {}",
                    self.damage_threshold, self.hard_threshold
                ),
            ));
        }
        Ok(())
    }

    /// Hard failure dominates when a magnitude is above both thresholds.
    pub fn classify(&self, magnitude: f64) -> ShockKind {
        if magnitude > self.hard_threshold {
            ShockKind::Fatal
        } else if magnitude > self.damage_threshold {
            ShockKind::Damaging
        } else {
            ShockKind::Benign
        }
    }
}

/// `(1 + η·n)(λ₀ + γ·x)`.
pub fn intensity(n_shocks: u64, x_total: f64, params: &ShockParams) -> f64 {
    (1.0 + params.eta * n_shocks as f64) * (params.lambda0 + params.gamma_dep * x_total)
}

/// Poisson count with mean `rate·dt`, intensity frozen over the step.
///
/// Inverts the Poisson CDF with exactly one uniform, so the draw is
/// nondecreasing in the mean for a fixed stream position.
pub fn arrivals_in_step<R: Rng + ?Sized>(rate: f64, dt: f64, rng: &mut R) -> Result<u64> {
    let mean = rate * dt;
    if mean.is_nan() || mean > MAX_RATE_DT {
        return Err(Error::StepTooLarge {
            rate,
            dt,
            limit: MAX_RATE_DT,
        });
    }
    let u: f64 = rng.random();
    // e^{-mean} >= 1 - mean, so this skips the exponential on most steps
    // without changing the result.
    if u < 1.0 - mean {
        return Ok(0);
    }
    let mut k = 0u64;
    let mut p = (-mean).exp();
    let mut cdf = p;
    while u >= cdf && p > 0.0 {
        k += 1;
        p *= mean / k as f64;
        cdf += p;
    }
    Ok(k)
}

pub fn draw_shock<R: Rng + ?Sized>(t: f64, params: &ShockParams, rng: &mut R) -> ShockEvent {
    let magnitude = params.magnitude_law.sampler().sample(rng);
    ShockEvent {
        time: t,
        magnitude,
        kind: params.classify(magnitude),
    }
}

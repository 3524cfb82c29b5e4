//! Total degradation: a gamma-process wear path whose shape rate switches
//! from `alpha1` to `alpha2` at the first damaging shock, plus the
//! accumulated shock-induced jumps.

use rand::Rng;
use rand_distr::Distribution;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{GammaLaw, GammaSampler, NormalLaw};

/// Per-replication random effect multiplying the shape rate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ThetaLaw {
    /// Point mass; `Fixed(1.0)` is the deterministic-parameter model.
    Fixed { value: f64 },
    /// Gamma-distributed effect (shape/rate form).
    Gamma { shape: f64, rate: f64 },
}

impl Default for ThetaLaw {
    fn default() -> Self {
        ThetaLaw::Fixed { value: 1.0 }
    }
}

impl ThetaLaw {
    pub fn validate(&self) -> Result<()> {
        match *self {
            ThetaLaw::Fixed { value } if value.is_finite() && value > 0.0 => Ok(()),
            ThetaLaw::Fixed { value } => Err(Error::invalid(
                "theta.value",
                format!("must be positive, got {value}"),
            )),
            ThetaLaw::Gamma { shape, rate } => GammaLaw::new(shape, rate)
                .map(|_| ())
                .map_err(|e| Error::invalid("theta", e.to_string())),
        }
    }

    pub fn is_degenerate(&self) -> bool {
        matches!(self, ThetaLaw::Fixed { .. })
    }

    /// Draws θ. A point mass consumes no randomness.
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match *self {
            ThetaLaw::Fixed { value } => value,
            ThetaLaw::Gamma { shape, rate } => GammaLaw::new(shape, rate)
                .expect("validated theta law")
                .sampler()
                .sample(rng)
                // A zero draw would freeze the path and make the shape invalid.
                .max(f64::MIN_POSITIVE),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DegradationParams {
    /// Shape rate per unit time before the first damaging shock.
    pub alpha1: f64,
    /// Shape rate per unit time after it.
    pub alpha2: f64,
    /// Gamma rate (inverse scale) of the wear increments.
    pub beta: f64,
    pub jump_law: NormalLaw,
    /// Soft-failure threshold H.
    pub soft_threshold: f64,
    pub theta: ThetaLaw,
}

impl DegradationParams {
    pub fn validate(&self) -> Result<()> {
        for (field, v) in [
            ("alpha1", self.alpha1),
            ("alpha2", self.alpha2),
            ("beta", self.beta),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::invalid(field, format!("must be positive, got {v}")));
            }
        }
        if self.soft_threshold.is_nan() || self.soft_threshold <= 0.0 {
            return Err(Error::invalid(
                "H",
                format!("must be positive, got {}", self.soft_threshold),
            ));
        }
        self.theta.validate()
    }

    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.alpha2 < self.alpha1 {
            out.push(format!(
                "alpha2 ({}) < alpha1 ({}): damaging shocks slow the degradation down",
                self.alpha2, self.alpha1
            ));
        }
        out
    }

    fn shape_rate(&self, rate_changed: bool) -> f64 {
        if rate_changed {
            self.alpha2
        } else {
            self.alpha1
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DegradationState {
    pub clock: f64,
    /// Pure gamma wear X(t, θ).
    pub pure_path: f64,
    /// Sum of (clamped) shock jumps.
    pub jump_sum: f64,
    pub rate_changed: bool,
    pub rate_change_time: Option<f64>,
}

impl DegradationState {
    pub fn new() -> Self {
        Self::default()
    }

    /// Advances the clock by `dt` and adds one gamma increment with shape
    /// `theta · alpha_phase · dt`.
    #[must_use]
    pub fn advance<R: Rng + ?Sized>(
        self,
        dt: f64,
        params: &DegradationParams,
        theta: f64,
        rng: &mut R,
    ) -> Self {
        let shape = theta * params.shape_rate(self.rate_changed) * dt;
        let increment = GammaLaw::new(shape, params.beta)
            .expect("positive shape and rate")
            .sampler()
            .sample(rng);
        Self {
            clock: self.clock + dt,
            pure_path: self.pure_path + increment,
            ..self
        }
    }

    /// Negative jumps are clamped to zero so the path stays monotone.
    #[must_use]
    pub fn apply_jump(self, y: f64) -> Self {
        Self {
            jump_sum: self.jump_sum + y.max(0.0),
            ..self
        }
    }

    /// First call wins; later calls are no-ops.
    #[must_use]
    pub fn trigger_rate_change(self, at: f64) -> Self {
        if self.rate_changed {
            return self;
        }
        Self {
            rate_changed: true,
            rate_change_time: Some(at),
            ..self
        }
    }

    pub fn total(&self) -> f64 {
        self.pure_path + self.jump_sum
    }

    #[must_use]
    pub(crate) fn with_increment(self, clock: f64, increment: f64) -> Self {
        Self {
            clock,
            pure_path: self.pure_path + increment,
            ..self
        }
    }
}

/// Per-step increment sampler used by the replication loop.
///
/// The pre-change increment is always drawn from the replication's base
/// stream, so the base stream is consumed identically whether or not the
/// rate ever changes. After a change the increment is adjusted with a
/// draw from a per-step sub-stream:
///
/// * `alpha2 > alpha1`: add an independent `Gamma(θ(alpha2 − alpha1)dt, β)`.
/// * `alpha2 < alpha1`: multiply by `Beta(θ·alpha2·dt, θ(alpha1 − alpha2)dt)`.
///
/// Both give an exact `Gamma(θ·alpha2·dt, β)` increment, and both keep the
/// changed path pathwise above (resp. below) the unchanged one.
#[derive(Debug, Clone, Copy)]
pub struct StepIncrements {
    base: GammaSampler,
    after_change: AfterChange,
}

#[derive(Debug, Clone, Copy)]
enum AfterChange {
    Same,
    Add(GammaSampler),
    Thin(rand_distr::Beta<f64>),
}

impl StepIncrements {
    pub fn new(params: &DegradationParams, theta: f64, dt: f64) -> Result<Self> {
        let base = GammaLaw::new(theta * params.alpha1 * dt, params.beta)?.sampler();
        let after_change = if params.alpha2 > params.alpha1 {
            let extra = theta * (params.alpha2 - params.alpha1) * dt;
            AfterChange::Add(GammaLaw::new(extra, params.beta)?.sampler())
        } else if params.alpha2 < params.alpha1 {
            let keep = theta * params.alpha2 * dt;
            let drop = theta * (params.alpha1 - params.alpha2) * dt;
            AfterChange::Thin(
                rand_distr::Beta::new(keep, drop)
                    .map_err(|e| Error::Domain(format!("beta thinning law: {e}")))?,
            )
        } else {
            AfterChange::Same
        };
        Ok(Self { base, after_change })
    }

    /// `step_rng` is only invoked after a rate change.
    pub fn draw<R, S, F>(&self, rate_changed: bool, base_rng: &mut R, step_rng: F) -> f64
    where
        R: Rng + ?Sized,
        S: Rng,
        F: FnOnce() -> S,
    {
        let base = self.base.sample(base_rng);
        if !rate_changed {
            return base;
        }
        match self.after_change {
            AfterChange::Same => base,
            AfterChange::Add(extra) => base + extra.sample(&mut step_rng()),
            AfterChange::Thin(beta) => base * beta.sample(&mut step_rng()),
        }
    }
}

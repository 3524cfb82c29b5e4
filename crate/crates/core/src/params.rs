//! Full model parameterization and its JSON document form.

use serde::{Deserialize, Serialize};

use crate::degradation::{DegradationParams, ThetaLaw};
use crate::error::{Error, Result};
use crate::kernel::{NormalLaw, DEFAULT_TOL};
use crate::shock::ShockParams;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Numerics {
    /// Simulation time step.
    pub dt: f64,
    pub horizon: f64,
    /// Probability mass allowed outside a truncated count series.
    #[serde(default = "default_sum_tail")]
    pub sum_tail: f64,
    /// Absolute tolerance of the damage-convolution quadrature.
    #[serde(default = "default_quad_tol")]
    pub quad_tol: f64,
}

fn default_sum_tail() -> f64 {
    1e-10
}

fn default_quad_tol() -> f64 {
    DEFAULT_TOL
}

impl Default for Numerics {
    fn default() -> Self {
        Self {
            dt: 0.01,
            horizon: 20.0,
            sum_tail: default_sum_tail(),
            quad_tol: default_quad_tol(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub degradation: DegradationParams,
    pub shock: ShockParams,
    pub numerics: Numerics,
    /// When false, damaging shocks never switch the degradation rate.
    pub rate_change: bool,
}

impl ModelParams {
    /// Jet-pipe servo valve parameter set.
    pub fn valve() -> Self {
        Self {
            degradation: DegradationParams {
                alpha1: 0.5,
                alpha2: 0.9,
                beta: 1.2,
                jump_law: NormalLaw::new(0.5, 0.1).expect("valid"),
                soft_threshold: 5.0,
                theta: ThetaLaw::default(),
            },
            shock: ShockParams {
                lambda0: 2.5e-5,
                gamma_dep: 0.001,
                eta: 0.2,
                magnitude_law: NormalLaw::new(10.0, 5.0).expect("valid"),
                damage_threshold: 30.0,
                hard_threshold: 40.0,
            },
            numerics: Numerics::default(),
            rate_change: true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.degradation.validate()?;
        self.shock.validate()?;
        let n = &self.numerics;
        if !(n.dt.is_finite() && n.dt > 0.0) {
            return Err(Error::invalid(
                "dt",
                format!("must be positive, got {}", n.dt),
            ));
        }
        if !(n.horizon.is_finite() && n.horizon > 0.0) {
            return Err(Error::invalid(
                "horizon",
                format!("must be positive, got {}", n.horizon),
            ));
        }
        if !(n.sum_tail > 0.0 && n.sum_tail < 1.0) {
            return Err(Error::invalid(
                "sum_tail",
                format!("must lie in (0, 1), got {}", n.sum_tail),
            ));
        }
        if n.quad_tol.is_nan() || n.quad_tol <= 0.0 {
            return Err(Error::invalid(
                "quad_tol",
                format!("must be positive, got {}", n.quad_tol),
            ));
        }
        Ok(())
    }

    pub fn warnings(&self) -> Vec<String> {
        self.degradation.warnings()
    }

    /// True when no shock can ever switch the degradation rate, or switching
    /// it changes nothing.
    pub fn rate_change_inert(&self) -> bool {
        !self.rate_change
            || self.shock.damage_threshold >= self.shock.hard_threshold
            || self.degradation.alpha2 == self.degradation.alpha1
    }

    /// The same model with rate change switched off.
    pub fn fixed_rate(&self) -> Self {
        Self {
            rate_change: false,
            ..*self
        }
    }

    pub fn to_spec(&self) -> ModelSpec {
        let d = &self.degradation;
        let s = &self.shock;
        ModelSpec {
            soft_threshold: d.soft_threshold,
            hard_threshold: s.hard_threshold,
            damage_threshold: s.damage_threshold,
            alpha1: d.alpha1,
            alpha2: d.alpha2,
            beta: d.beta,
            lambda0: s.lambda0,
            eta: s.eta,
            gamma: s.gamma_dep,
            magnitude: s.magnitude_law,
            jump: d.jump_law,
            theta: d.theta,
            rate_change: self.rate_change,
        }
    }

    pub fn from_spec(spec: &ModelSpec, numerics: Numerics) -> Result<Self> {
        let params = Self {
            degradation: DegradationParams {
                alpha1: spec.alpha1,
                alpha2: spec.alpha2,
                beta: spec.beta,
                jump_law: spec.jump,
                soft_threshold: spec.soft_threshold,
                theta: spec.theta,
            },
            shock: ShockParams {
                lambda0: spec.lambda0,
                gamma_dep: spec.gamma,
                eta: spec.eta,
                magnitude_law: spec.magnitude,
                damage_threshold: spec.damage_threshold,
                hard_threshold: spec.hard_threshold,
            },
            numerics,
            rate_change: spec.rate_change,
        };
        params.validate()?;
        Ok(params)
    }
}

/// One key per physical model parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSpec {
    #[serde(rename = "H")]
    pub soft_threshold: f64,
    #[serde(rename = "D1")]
    pub hard_threshold: f64,
    #[serde(rename = "D0")]
    pub damage_threshold: f64,
    pub alpha1: f64,
    pub alpha2: f64,
    pub beta: f64,
    pub lambda0: f64,
    pub eta: f64,
    pub gamma: f64,
    #[serde(rename = "W")]
    pub magnitude: NormalLaw,
    #[serde(rename = "Y")]
    pub jump: NormalLaw,
    #[serde(default)]
    pub theta: ThetaLaw,
    #[serde(default = "enabled")]
    pub rate_change: bool,
}

fn enabled() -> bool {
    true
}

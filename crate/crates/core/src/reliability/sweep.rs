use std::fmt;
use std::str::FromStr;

use super::curve::ReliabilityCurve;
use super::estimate::estimate_reliability;
use crate::error::{Error, Result};
use crate::params::ModelParams;

/// Model parameters that can be swept.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweepParameter {
    DamageThreshold,
    HardThreshold,
    SoftThreshold,
    Gamma,
    Eta,
    Lambda0,
    Alpha2,
}

impl SweepParameter {
    pub const ALL: [SweepParameter; 7] = [
        SweepParameter::DamageThreshold,
        SweepParameter::Gamma,
        SweepParameter::Eta,
        SweepParameter::Lambda0,
        SweepParameter::Alpha2,
        SweepParameter::SoftThreshold,
        SweepParameter::HardThreshold,
    ];

    pub const NAMES: [&'static str; 7] = ["D0", "gamma", "eta", "lambda0", "alpha2", "H", "D1"];

    pub fn name(self) -> &'static str {
        let i = Self::ALL.iter().position(|p| *p == self).unwrap();
        Self::NAMES[i]
    }

    /// Copy of `base` with this parameter set to `value`, revalidated.
    pub fn apply(self, base: &ModelParams, value: f64) -> Result<ModelParams> {
        let mut p = *base;
        match self {
            SweepParameter::DamageThreshold => p.shock.damage_threshold = value,
            SweepParameter::HardThreshold => p.shock.hard_threshold = value,
            SweepParameter::SoftThreshold => p.degradation.soft_threshold = value,
            SweepParameter::Gamma => p.shock.gamma_dep = value,
            SweepParameter::Eta => p.shock.eta = value,
            SweepParameter::Lambda0 => p.shock.lambda0 = value,
            SweepParameter::Alpha2 => p.degradation.alpha2 = value,
        }
        p.validate()?;
        Ok(p)
    }
}

impl fmt::Display for SweepParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepParameter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::NAMES
            .iter()
            .position(|n| *n == s)
            .map(|i| Self::ALL[i])
            .ok_or_else(|| Error::UnknownParameter(s.to_string()))
    }
}

/// One curve per value, all driven by the same master seed so that
/// replication `i` sees the same random streams under every value.
pub fn sweep(
    base: &ModelParams,
    parameter: SweepParameter,
    values: &[f64],
    grid: &[f64],
    n_reps: u64,
    master_seed: u64,
) -> Result<Vec<(f64, ReliabilityCurve)>> {
    // Validate every value before spending time on simulation.
    let models = values
        .iter()
        .map(|&v| parameter.apply(base, v).map(|p| (v, p)))
        .collect::<Result<Vec<_>>>()?;
    models
        .into_iter()
        .map(|(v, p)| Ok((v, estimate_reliability(&p, grid, n_reps, master_seed)?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for p in SweepParameter::ALL {
            assert_eq!(p.name().parse::<SweepParameter>().unwrap(), p);
        }
        let err = "beta".parse::<SweepParameter>().unwrap_err().to_string();
        assert!(err.contains("D0") && err.contains("lambda0"), "{err}");
    }

    #[test]
    fn apply_validates() {
        let base = ModelParams::valve();
        assert!(SweepParameter::DamageThreshold.apply(&base, 45.0).is_err());
        assert!(SweepParameter::Eta.apply(&base, 0.0).is_err());
        let p = SweepParameter::Gamma.apply(&base, 0.01).unwrap();
        assert_eq!(p.shock.gamma_dep, 0.01);
    }

    #[test]
    fn single_value_matches_direct_estimate() {
        let base = ModelParams::valve();
        let grid = [0.0, 5.0, 10.0];
        let swept = sweep(&base, SweepParameter::Gamma, &[0.001], &grid, 500, 3).unwrap();
        let direct = estimate_reliability(&base, &grid, 500, 3).unwrap();
        assert_eq!(swept.len(), 1);
        assert_eq!(swept[0].1, direct);
    }
}

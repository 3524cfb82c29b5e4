//! Run configuration document.

use std::path::{Path, PathBuf};

use dcfp_core::{ModelParams, ModelSpec, Numerics};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub model: ModelSpec,
    pub numerics: Numerics,
    pub run: RunSpec,
    #[serde(default)]
    pub output: OutputSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSpec {
    pub n_reps: u64,
    pub master_seed: u64,
    pub grid: GridSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GridSpec {
    /// `points` evenly spaced times from `start` to `stop` inclusive.
    Range {
        start: f64,
        stop: f64,
        points: usize,
    },
    Times(Vec<f64>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default)]
    pub path: Option<PathBuf>,
    #[serde(default)]
    pub format: OutputFormat,
}

impl GridSpec {
    pub fn times(&self) -> Result<Vec<f64>, CliError> {
        match *self {
            GridSpec::Range {
                start,
                stop,
                points,
            } => {
                if points == 0 {
                    return Err(CliError::Config(
                        "run.grid.points: must be at least 1".into(),
                    ));
                }
                if !(start.is_finite() && stop.is_finite()) || stop < start {
                    return Err(CliError::Config(format!(
                        "run.grid: need finite start <= stop, got start = {start}, stop = {stop}"
                    )));
                }
                if points == 1 {
                    return Ok(vec![start]);
                }
                let step = (stop - start) / (points - 1) as f64;
                Ok((0..points)
                    .map(|i| {
                        if i + 1 == points {
                            stop
                        } else {
                            start + i as f64 * step
                        }
                    })
                    .collect())
            }
            GridSpec::Times(ref t) => Ok(t.clone()),
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
        let config: RunConfig = serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        self.params()?;
        if self.run.n_reps == 0 {
            return Err(CliError::Config("run.n_reps: must be at least 1".into()));
        }
        let horizon = self.numerics.horizon;
        let grid = self.run.grid.times()?;
        if grid.is_empty() {
            return Err(CliError::Config(
                "run.grid: must contain at least one time".into(),
            ));
        }
        if let Some(t) = grid
            .iter()
            .find(|t| !(**t >= 0.0 && **t <= horizon * (1.0 + 1e-12)))
        {
            return Err(CliError::Config(format!(
                "run.grid: time {t} lies outside [0, horizon = {horizon}]"
            )));
        }
        if grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(CliError::Config(
                "run.grid: times must be strictly ascending".into(),
            ));
        }
        Ok(())
    }

    pub fn params(&self) -> Result<ModelParams, CliError> {
        ModelParams::from_spec(&self.model, self.numerics)
            .map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes") + "\n"
    }

    /// Jet-pipe servo valve parameters on a 41-point grid over [0, 20].
    pub fn valve() -> Self {
        let params = ModelParams::valve();
        RunConfig {
            model: params.to_spec(),
            numerics: params.numerics,
            run: RunSpec {
                n_reps: 100_000,
                master_seed: 20_190_101,
                grid: GridSpec::Range {
                    start: 0.0,
                    stop: 20.0,
                    points: 41,
                },
            },
            output: OutputSpec::default(),
        }
    }

    /// Decoupled configuration used by `validate` when no config is given.
    pub fn validation_default() -> Self {
        let mut config = Self::valve();
        config.model.gamma = 0.0;
        config.model.lambda0 = 0.5;
        config.model.eta = 0.2;
        config.model.rate_change = false;
        // At λ₀ = 1, η = 1 (the --suite corner) up to ~10 shocks can
        // accumulate before soft failure; dt = 0.005 keeps rate·dt <= 0.1.
        config.numerics.dt = 0.005;
        config.numerics.horizon = 8.0;
        config.run.grid = GridSpec::Times(vec![1.0, 2.0, 4.0, 8.0]);
        config
    }
}

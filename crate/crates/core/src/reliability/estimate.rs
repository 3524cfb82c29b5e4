use rayon::prelude::*;

use super::curve::ReliabilityCurve;
use crate::error::{Error, Result};
use crate::params::ModelParams;
use crate::rng::ReplicationSeed;
use crate::simulator::{simulate_replication, steps_within, Status};

pub(crate) fn validate_grid(grid: &[f64], horizon: f64) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::invalid("grid", "must contain at least one time"));
    }
    if grid.iter().any(|t| !t.is_finite() || *t < 0.0) {
        return Err(Error::invalid(
            "grid",
            "times must be finite and nonnegative",
        ));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::invalid("grid", "times must be strictly ascending"));
    }
    let last = *grid.last().unwrap();
    if last > horizon * (1.0 + 1e-12) {
        return Err(Error::invalid(
            "grid",
            format!("last grid time {last} exceeds horizon {horizon}"),
        ));
    }
    Ok(())
}

/// Per-grid-interval failure tallies; merging is plain addition.
#[derive(Debug, Clone)]
struct Tally {
    soft: Vec<u64>,
    hard: Vec<u64>,
}

impl Tally {
    fn new(n: usize) -> Self {
        Self {
            soft: vec![0; n],
            hard: vec![0; n],
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        for (a, b) in self.soft.iter_mut().zip(other.soft) {
            *a += b;
        }
        for (a, b) in self.hard.iter_mut().zip(other.hard) {
            *a += b;
        }
        self
    }
}

/// Monte Carlo survival curve from a single replication set evaluated at
/// every grid time. Replication `i` always uses stream `(master_seed, i)`,
/// so the result does not depend on the thread count.
pub fn estimate_reliability(
    params: &ModelParams,
    grid: &[f64],
    n_reps: u64,
    master_seed: u64,
) -> Result<ReliabilityCurve> {
    params.validate()?;
    validate_grid(grid, params.numerics.horizon)?;
    if n_reps == 0 {
        return Err(Error::invalid(
            "n_reps",
            "at least one replication is required",
        ));
    }
    let dt = params.numerics.dt;
    let grid_steps: Vec<u64> = grid.iter().map(|&t| steps_within(t, dt)).collect();
    let horizon = *grid.last().unwrap();
    let n = grid.len();

    let tally = (0..n_reps)
        .into_par_iter()
        .map(|i| {
            simulate_replication(params, horizon, dt, ReplicationSeed::new(master_seed, i))
                .map_err(|e| (i, e))
        })
        .try_fold(
            || Tally::new(n),
            |mut tally, outcome| {
                let out = outcome?;
                if let Some(step) = out.failure_step {
                    // First grid time at or after the failure.
                    let j = grid_steps.partition_point(|&g| g < step);
                    if j < n {
                        match out.status {
                            Status::SoftFailed => tally.soft[j] += 1,
                            Status::HardFailed => tally.hard[j] += 1,
                            Status::Survived => {}
                        }
                    }
                }
                Ok(tally)
            },
        )
        .try_reduce(|| Tally::new(n), |a, b| Ok(a.merge(b)))
        .map_err(|(_, e): (u64, Error)| e);
    let tally = match tally {
        Ok(t) => t,
        Err(_) => return Err(first_error(params, horizon, dt, master_seed, n_reps)),
    };

    let cumulative = |v: Vec<u64>| {
        v.into_iter()
            .scan(0u64, |acc, x| {
                *acc += x;
                Some(*acc)
            })
            .collect::<Vec<_>>()
    };
    Ok(ReliabilityCurve::from_counts(
        grid.to_vec(),
        n_reps,
        cumulative(tally.soft),
        cumulative(tally.hard),
    ))
}

/// Re-runs sequentially to report the error of the lowest failing index,
/// independent of which worker hit an error first.
fn first_error(
    params: &ModelParams,
    horizon: f64,
    dt: f64,
    master_seed: u64,
    n_reps: u64,
) -> Error {
    (0..n_reps)
        .find_map(|i| {
            simulate_replication(params, horizon, dt, ReplicationSeed::new(master_seed, i)).err()
        })
        .expect("a replication failed during the parallel pass")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn time_zero_is_certain() {
        let c = estimate_reliability(&ModelParams::valve(), &[0.0], 200, 1).unwrap();
        assert_eq!(c.estimate, vec![1.0]);
        assert_eq!(c.survived_count(0), 200);
    }

    #[test]
    fn grid_validation() {
        let p = ModelParams::valve();
        assert!(estimate_reliability(&p, &[], 10, 1).is_err());
        assert!(estimate_reliability(&p, &[1.0, 0.5], 10, 1).is_err());
        assert!(estimate_reliability(&p, &[-1.0], 10, 1).is_err());
        assert!(estimate_reliability(&p, &[25.0], 10, 1).is_err());
        assert!(estimate_reliability(&p, &[1.0], 0, 1).is_err());
    }

    #[test]
    fn curve_invariants() {
        let grid: Vec<f64> = (0..=20).map(f64::from).collect();
        let c = estimate_reliability(&ModelParams::valve(), &grid, 2000, 7).unwrap();
        assert_eq!(c.estimate[0], 1.0);
        for i in 0..c.len() {
            assert!(c.ci_low[i] <= c.estimate[i] && c.estimate[i] <= c.ci_high[i]);
            assert!(c.ci_low[i] >= 0.0 && c.ci_high[i] <= 1.0);
            assert_eq!(
                c.survived_count(i) + c.soft_count[i] + c.hard_count[i],
                c.n_reps
            );
        }
        assert!(c.estimate.windows(2).all(|w| w[1] <= w[0]));
        assert!(*c.estimate.last().unwrap() < 0.5);
    }

    #[test]
    fn errors_are_reported() {
        let mut p = ModelParams::valve();
        p.shock.lambda0 = 100.0;
        let err = estimate_reliability(&p, &[1.0], 50, 1).unwrap_err();
        assert!(matches!(err, Error::StepTooLarge { .. }));
    }
}

//! One replication of the coupled degradation/shock system.

use rand_distr::Distribution;
use serde::Serialize;

use crate::degradation::{DegradationState, StepIncrements};
use crate::error::{Error, Result};
use crate::params::ModelParams;
use crate::rng::{Purpose, ReplicationSeed};
use crate::shock::{arrivals_in_step, draw_shock, intensity, ShockKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    SoftFailed,
    HardFailed,
    Survived,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TracePoint {
    pub time: f64,
    pub pure: f64,
    pub jumps: f64,
    pub n_shocks: u64,
    pub rate_changed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReplicationOutcome {
    pub status: Status,
    /// End-of-step clock of the failing step.
    pub failure_time: Option<f64>,
    /// Index (1-based) of the failing step.
    pub failure_step: Option<u64>,
    pub rate_change_time: Option<f64>,
    pub n_shocks: u64,
    pub final_total_degradation: f64,
    pub final_pure_degradation: f64,
    pub trace: Option<Vec<TracePoint>>,
}

/// Number of whole steps of size `dt` that fit in `horizon`.
pub fn steps_within(horizon: f64, dt: f64) -> u64 {
    if horizon <= 0.0 {
        return 0;
    }
    // Absorb representation error, e.g. 4.0 / 0.01 = 399.99999999999994.
    (horizon / dt * (1.0 + 1e-12)).floor() as u64
}

pub fn simulate_replication(
    params: &ModelParams,
    horizon: f64,
    dt: f64,
    seed: ReplicationSeed,
) -> Result<ReplicationOutcome> {
    run(params, horizon, dt, seed, false)
}

/// `k` replications (indices `0..k`) with full traces on the step grid.
pub fn simulate_paths(
    params: &ModelParams,
    horizon: f64,
    dt: f64,
    master_seed: u64,
    k: usize,
) -> Result<Vec<ReplicationOutcome>> {
    if k == 0 {
        return Err(Error::invalid("k", "at least one path is required"));
    }
    (0..k as u64)
        .map(|i| {
            run(
                params,
                horizon,
                dt,
                ReplicationSeed::new(master_seed, i),
                true,
            )
        })
        .collect()
}

fn run(
    params: &ModelParams,
    horizon: f64,
    dt: f64,
    seed: ReplicationSeed,
    record: bool,
) -> Result<ReplicationOutcome> {
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::invalid("dt", format!("must be positive, got {dt}")));
    }
    let dp = &params.degradation;
    let sp = &params.shock;

    let theta = dp.theta.draw(&mut seed.stream(Purpose::Theta));
    let increments = StepIncrements::new(dp, theta, dt)?;
    let jump_sampler = dp.jump_law.sampler();
    let mut wear_rng = seed.stream(Purpose::Degradation);
    let mut arrival_rng = seed.stream(Purpose::Arrivals);
    let mut magnitude_rng = seed.stream(Purpose::Magnitudes);
    let mut jump_rng = seed.stream(Purpose::Jumps);

    let mut state = DegradationState::new();
    let mut n_shocks = 0u64;
    let mut trace = record.then(|| vec![trace_point(&state, n_shocks)]);

    let finish =
        |status, step: Option<u64>, state: &DegradationState, n_shocks, trace| ReplicationOutcome {
            status,
            failure_time: step.map(|k| k as f64 * dt),
            failure_step: step,
            rate_change_time: state.rate_change_time,
            n_shocks,
            final_total_degradation: state.total(),
            final_pure_degradation: state.pure_path,
            trace,
        };

    for step in 1..=steps_within(horizon, dt) {
        let clock = step as f64 * dt;
        let increment = increments.draw(state.rate_changed, &mut wear_rng, || {
            seed.step_stream(Purpose::Acceleration, step)
        });
        state = state.with_increment(clock, increment);

        if state.total() >= dp.soft_threshold {
            push(&mut trace, &state, n_shocks);
            return Ok(finish(
                Status::SoftFailed,
                Some(step),
                &state,
                n_shocks,
                trace,
            ));
        }

        let rate = intensity(n_shocks, state.total(), sp);
        let arrivals = arrivals_in_step(rate, dt, &mut arrival_rng)?;
        for _ in 0..arrivals {
            n_shocks += 1;
            let shock = draw_shock(clock, sp, &mut magnitude_rng);
            match shock.kind {
                ShockKind::Fatal => {
                    push(&mut trace, &state, n_shocks);
                    return Ok(finish(
                        Status::HardFailed,
                        Some(step),
                        &state,
                        n_shocks,
                        trace,
                    ));
                }
                ShockKind::Damaging if params.rate_change => {
                    state = state.trigger_rate_change(clock);
                }
                _ => {}
            }
            state = state.apply_jump(jump_sampler.sample(&mut jump_rng));
        }

        push(&mut trace, &state, n_shocks);
        if state.total() >= dp.soft_threshold {
            return Ok(finish(
                Status::SoftFailed,
                Some(step),
                &state,
                n_shocks,
                trace,
            ));
        }
    }
    Ok(finish(Status::Survived, None, &state, n_shocks, trace))
}

fn trace_point(state: &DegradationState, n_shocks: u64) -> TracePoint {
    TracePoint {
        time: state.clock,
        pure: state.pure_path,
        jumps: state.jump_sum,
        n_shocks,
        rate_changed: state.rate_changed,
    }
}

fn push(trace: &mut Option<Vec<TracePoint>>, state: &DegradationState, n_shocks: u64) {
    if let Some(t) = trace {
        t.push(trace_point(state, n_shocks));
    }
}

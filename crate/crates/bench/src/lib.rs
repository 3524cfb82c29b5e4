//! Fixtures shared by the benchmarks.

use dcfp_core::{simulate_replication, ModelParams, ReplicationSeed};

/// Table-style valve parameters with a shorter horizon.
pub fn valve(horizon: f64) -> ModelParams {
    let mut p = ModelParams::valve();
    p.numerics.horizon = horizon;
    p
}

/// Runs `n` replications sequentially and returns how many survived.
pub fn survivors(params: &ModelParams, n: u64, seed: u64) -> u64 {
    (0..n)
        .filter(|&i| {
            let o = simulate_replication(
                params,
                params.numerics.horizon,
                params.numerics.dt,
                ReplicationSeed::new(seed, i),
            )
            .expect("valid parameters");
            o.failure_time.is_none()
        })
        .count() as u64
}

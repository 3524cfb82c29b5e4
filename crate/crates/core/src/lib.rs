//! Reliability of a single-component system exposed to two mutually
//! dependent failure processes:
//!
//! * gamma-process wear plus shock-induced jumps (soft failure when the
//!   total reaches `H`), with the wear shape rate switching from `alpha1`
//!   to `alpha2` at the first shock whose magnitude exceeds `D0`;
//! * a self-exciting shock process with intensity
//!   `(1 + η·n)(λ₀ + γ·X_s(t))` (hard failure when a magnitude exceeds `D1`).
//!
//! Survival curves are estimated by Monte Carlo on a fixed time step; the
//! decoupled case (`γ = 0`, no rate change) also has a semi-analytic
//! evaluator used as an oracle.

pub mod degradation;
pub mod error;
pub mod kernel;
pub mod params;
pub mod reliability;
pub mod rng;
pub mod shock;
pub mod simulator;

pub use degradation::{DegradationParams, DegradationState, ThetaLaw};
pub use error::{Error, Result};
pub use kernel::{GammaLaw, NormalLaw};
pub use params::{ModelParams, ModelSpec, Numerics};
pub use reliability::{
    analytic_no_shock_term, analytic_reliability, estimate_reliability, sweep, ReliabilityCurve,
    SweepParameter,
};
pub use rng::ReplicationSeed;
pub use shock::{ShockEvent, ShockKind, ShockParams};
pub use simulator::{simulate_paths, simulate_replication, ReplicationOutcome, Status, TracePoint};

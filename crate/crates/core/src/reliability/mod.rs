//! Reliability estimation: Monte Carlo survival curves, the decoupled-case
//! semi-analytic oracle, and parameter sweeps.

mod analytic;
mod curve;
mod estimate;
mod sweep;

pub use analytic::{
    analytic_breakdown, analytic_no_shock_term, analytic_reliability, AnalyticBreakdown,
};
pub use curve::{wilson_interval, ReliabilityCurve, Z_95};
pub use estimate::estimate_reliability;
pub use sweep::{sweep, SweepParameter};

//! Numerical kernel: special functions, laws, samplers, quadrature.

mod facilitation;
mod law;
mod quadrature;
pub mod special;

pub use facilitation::{facilitation_pmf, FacilitationLaw, Truncated, DEFAULT_TAIL, TERM_FLOOR};
pub use law::{
    gamma_cdf, iid_sum_normal, normal_cdf, sample_gamma_increment, DamageSum, GammaLaw,
    GammaSampler, NormalLaw,
};
pub use quadrature::{integrate, DEFAULT_TOL};

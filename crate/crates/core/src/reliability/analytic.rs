//! Semi-analytic reliability for the decoupled configuration: no
//! degradation feedback on the shock intensity, fixed degradation rate,
//! and a deterministic θ. In that case the shock count, the wear path and
//! the jump sizes are mutually independent and
//!
//! `R(t) = Σ_m F_W(D₁)^m · P(N(t) = m) · P(X(t) + Y₁ + … + Y_m < H)`
//!
//! with `P(N(t) = m)` the facilitation count law at `Λ = λ₀·t`.

use crate::degradation::ThetaLaw;
use crate::error::{Error, Result};
use crate::kernel::{iid_sum_normal, integrate, DamageSum, FacilitationLaw, GammaLaw};
use crate::params::ModelParams;

/// Jump-sum densities are integrated over `mean ± CLIP_SIGMAS · stdev`.
const CLIP_SIGMAS: f64 = 10.0;

fn check_decoupled(params: &ModelParams) -> Result<f64> {
    params.validate()?;
    let gamma = params.shock.gamma_dep;
    if gamma != 0.0 {
        return Err(Error::Unsupported(format!(
            "requires gamma = 0 (degradation-independent shock intensity), got gamma = {gamma}"
        )));
    }
    if !params.rate_change_inert() {
        return Err(Error::Unsupported(format!(
            "requires the degradation rate change to be disabled \
             (rate_change = false, D0 >= D1, or alpha2 = alpha1); got D0 = {}, D1 = {}, alpha1 = {}, alpha2 = {}",
            params.shock.damage_threshold,
            params.shock.hard_threshold,
            params.degradation.alpha1,
            params.degradation.alpha2
        )));
    }
    match params.degradation.theta {
        ThetaLaw::Fixed { value } => Ok(value),
        ThetaLaw::Gamma { .. } => Err(Error::Unsupported(
            "requires a degenerate (fixed) theta".into(),
        )),
    }
}

/// P(X(t) < x) for the pure wear, with the point mass at zero when t = 0.
fn wear_cdf(x: f64, shape: f64, rate: f64) -> Result<f64> {
    if x <= 0.0 {
        return Ok(0.0);
    }
    if shape == 0.0 {
        return Ok(1.0);
    }
    GammaLaw::new(shape, rate)?.cdf(x)
}

struct Decoupled {
    threshold: f64,
    shape: f64,
    rate: f64,
    survive_shock: f64,
    counts: FacilitationLaw,
}

impl Decoupled {
    fn new(params: &ModelParams, t: f64) -> Result<Self> {
        let theta = check_decoupled(params)?;
        if !(t.is_finite() && t >= 0.0) {
            return Err(Error::Domain(format!(
                "time must be finite and >= 0, got {t}"
            )));
        }
        let d = &params.degradation;
        let s = &params.shock;
        Ok(Self {
            threshold: d.soft_threshold,
            shape: theta * d.alpha1 * t,
            rate: d.beta,
            survive_shock: s.magnitude_law.cdf(s.hard_threshold)?,
            counts: FacilitationLaw::new(s.eta, s.lambda0 * t)?,
        })
    }

    /// P(X(t) + Y₁ + … + Y_m < H).
    fn soft_survival(&self, params: &ModelParams, m: u64) -> Result<f64> {
        match iid_sum_normal(m, &params.degradation.jump_law) {
            DamageSum::PointMassAtZero => wear_cdf(self.threshold, self.shape, self.rate),
            DamageSum::Normal(sum) => {
                let lo = (sum.mean() - CLIP_SIGMAS * sum.stdev()).max(0.0);
                let hi = (sum.mean() + CLIP_SIGMAS * sum.stdev()).min(self.threshold);
                if lo >= hi {
                    return Ok(0.0);
                }
                let mut failure = None;
                let value = integrate(
                    |y| match wear_cdf(self.threshold - y, self.shape, self.rate) {
                        Ok(g) => g * sum.density(y),
                        Err(e) => {
                            failure.get_or_insert(e);
                            0.0
                        }
                    },
                    lo,
                    hi,
                    params.numerics.quad_tol,
                )?;
                match failure {
                    Some(e) => Err(e),
                    None => Ok(value),
                }
            }
        }
    }

    fn term(&self, params: &ModelParams, m: u64, pmf: f64) -> Result<f64> {
        if pmf == 0.0 {
            return Ok(0.0);
        }
        Ok(self.survive_shock.powi(m as i32) * pmf * self.soft_survival(params, m)?)
    }

    /// Jump sums for `m` and beyond are entirely above H.
    fn jumps_exhaust_threshold(&self, params: &ModelParams, m: u64) -> bool {
        match iid_sum_normal(m, &params.degradation.jump_law) {
            DamageSum::PointMassAtZero => false,
            DamageSum::Normal(sum) => {
                params.degradation.jump_law.mean() > 0.0
                    && sum.mean() - CLIP_SIGMAS * sum.stdev() >= self.threshold
            }
        }
    }
}

/// Reliability at time `t` in the decoupled configuration.
///
/// `m_max = None` truncates the count series once the remaining count mass
/// is below `numerics.sum_tail` (and the current term below 1e-14), or once
/// the jump sum alone must exceed H.
pub fn analytic_reliability(params: &ModelParams, t: f64, m_max: Option<u64>) -> Result<f64> {
    Ok(analytic_breakdown(params, t, m_max)?.total())
}

/// Scenario split of [`analytic_reliability`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyticBreakdown {
    /// No shock by `t`.
    pub no_shock: f64,
    /// At least one shock, none fatal, total degradation below H.
    pub shocked: f64,
    /// Number of count terms summed (including m = 0).
    pub terms: u64,
}

impl AnalyticBreakdown {
    pub fn total(&self) -> f64 {
        self.no_shock + self.shocked
    }
}

pub fn analytic_breakdown(
    params: &ModelParams,
    t: f64,
    m_max: Option<u64>,
) -> Result<AnalyticBreakdown> {
    let model = Decoupled::new(params, t)?;
    let mut no_shock = 0.0;
    let mut shocked = 0.0;
    let mut terms = 0;
    let mut add = |m: u64, pmf: f64| -> Result<()> {
        terms += 1;
        let term = model.term(params, m, pmf)?;
        if m == 0 {
            no_shock = term;
        } else {
            shocked += term;
        }
        Ok(())
    };
    match m_max {
        Some(cap) => {
            for m in 0..=cap {
                add(m, model.counts.pmf(m))?;
            }
        }
        None => {
            for (m, pmf) in model.counts.truncated_terms(params.numerics.sum_tail) {
                add(m, pmf)?;
                if model.jumps_exhaust_threshold(params, m) {
                    break;
                }
            }
        }
    }
    Ok(AnalyticBreakdown {
        no_shock,
        shocked,
        terms,
    })
}

/// Reliability restricted to the no-shock scenario: `G(H; α₁t, β)·P(N(t) = 0)`.
pub fn analytic_no_shock_term(params: &ModelParams, t: f64) -> Result<f64> {
    let model = Decoupled::new(params, t)?;
    model.term(params, 0, model.counts.pmf(0))
}

//! Count law of the facilitation (self-exciting) shock process.
//!
//! With intensity `(1 + η·i)·λ₀` after `i` shocks and cumulative baseline
//! intensity `Λ = λ₀·t`, the number of shocks by `t` is negative binomial:
//!
//! `P(N = i) = C(1/η + i − 1, i) · (1 − e^{−ηΛ})^i · (e^{−ηΛ})^{1/η}`.

use super::special::ln_rising_binomial;
use crate::error::{Error, Result};

/// Stop criterion floor for the current term of a truncated series.
pub const TERM_FLOOR: f64 = 1e-14;

/// Default tail mass left over by a truncated pmf series.
pub const DEFAULT_TAIL: f64 = 1e-12;

/// Hard cap on the number of terms in a truncated series.
const MAX_TERMS: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FacilitationLaw {
    eta: f64,
    big_lambda: f64,
    ln_success: f64,
}

impl FacilitationLaw {
    pub fn new(eta: f64, big_lambda: f64) -> Result<Self> {
        if !(eta.is_finite() && eta > 0.0) {
            return Err(Error::Domain(format!(
                "facilitation factor must be positive, got {eta}"
            )));
        }
        if !(big_lambda.is_finite() && big_lambda >= 0.0) {
            return Err(Error::Domain(format!(
                "cumulative intensity must be finite and nonnegative, got {big_lambda}"
            )));
        }
        // ln(1 − e^{−ηΛ}) without cancellation for tiny ηΛ
        let ln_success = (-(-eta * big_lambda).exp_m1()).ln();
        Ok(Self {
            eta,
            big_lambda,
            ln_success,
        })
    }

    pub fn ln_pmf(&self, i: u64) -> f64 {
        if self.big_lambda == 0.0 {
            return if i == 0 { 0.0 } else { f64::NEG_INFINITY };
        }
        // (e^{−ηΛ})^{1/η} = e^{−Λ} exactly in log space
        ln_rising_binomial(1.0 / self.eta, i) + i as f64 * self.ln_success - self.big_lambda
    }

    pub fn pmf(&self, i: u64) -> f64 {
        self.ln_pmf(i).exp()
    }

    /// Terms `P(N = 0), P(N = 1), …` until the cumulative mass reaches
    /// `1 − tail` and the current term is below [`TERM_FLOOR`].
    pub fn truncated_terms(&self, tail: f64) -> Truncated {
        Truncated {
            law: *self,
            next: 0,
            cumulative: 0.0,
            tail,
            done: false,
        }
    }

    pub fn mean(&self) -> f64 {
        (self.eta * self.big_lambda).exp_m1() / self.eta
    }
}

/// Iterator over `(i, pmf(i))` with the adaptive stop rule.
#[derive(Debug, Clone)]
pub struct Truncated {
    law: FacilitationLaw,
    next: u64,
    cumulative: f64,
    tail: f64,
    done: bool,
}

impl Truncated {
    pub fn cumulative(&self) -> f64 {
        self.cumulative
    }
}

impl Iterator for Truncated {
    type Item = (u64, f64);

    fn next(&mut self) -> Option<Self::Item> {
        if self.done || self.next >= MAX_TERMS {
            return None;
        }
        let i = self.next;
        let p = self.law.pmf(i);
        self.cumulative += p;
        self.next += 1;
        if self.cumulative >= 1.0 - self.tail && p < TERM_FLOOR {
            self.done = true;
        }
        Some((i, p))
    }
}

/// Probability of exactly `i` shocks under the facilitation model.
pub fn facilitation_pmf(i: u64, eta: f64, big_lambda: f64) -> Result<f64> {
    Ok(FacilitationLaw::new(eta, big_lambda)?.pmf(i))
}

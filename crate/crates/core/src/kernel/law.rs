//! Gamma and normal laws used for degradation increments, shock magnitudes
//! and shock-induced jumps.

use rand::Rng;
use rand_distr::Distribution;
use serde::{Deserialize, Serialize};

use super::special::{gamma_pq, std_normal_cdf, std_normal_pdf};
use crate::error::{Error, Result};

/// Gamma law in shape/rate form: density `rate^shape x^(shape-1) e^(-rate x) / Γ(shape)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaLaw {
    shape: f64,
    rate: f64,
}

impl GammaLaw {
    pub fn new(shape: f64, rate: f64) -> Result<Self> {
        if !(shape.is_finite() && shape > 0.0) {
            return Err(Error::Domain(format!(
                "gamma shape must be positive, got {shape}"
            )));
        }
        if !(rate.is_finite() && rate > 0.0) {
            return Err(Error::Domain(format!(
                "gamma rate must be positive, got {rate}"
            )));
        }
        Ok(Self { shape, rate })
    }

    pub fn shape(&self) -> f64 {
        self.shape
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }

    pub fn mean(&self) -> f64 {
        self.shape / self.rate
    }

    pub fn variance(&self) -> f64 {
        self.shape / (self.rate * self.rate)
    }

    pub fn cdf(&self, x: f64) -> Result<f64> {
        if !x.is_finite() && x != f64::INFINITY {
            return Err(Error::Domain(format!(
                "gamma_cdf argument must be finite, got {x}"
            )));
        }
        if x <= 0.0 {
            return Ok(0.0);
        }
        Ok(gamma_pq(self.shape, self.rate * x).0)
    }

    pub fn density(&self, x: f64) -> f64 {
        if x < 0.0 {
            return 0.0;
        }
        if x == 0.0 {
            return match self.shape {
                s if s < 1.0 => f64::INFINITY,
                1.0 => self.rate,
                _ => 0.0,
            };
        }
        let ln = self.shape * self.rate.ln() + (self.shape - 1.0) * x.ln()
            - self.rate * x
            - super::special::ln_gamma(self.shape);
        ln.exp()
    }

    /// A reusable sampler for this law.
    pub fn sampler(&self) -> GammaSampler {
        let kind = if self.shape < 1.0 {
            SamplerKind::SmallShape {
                inv_shape: 1.0 / self.shape,
                bound: 1.0 + self.shape / std::f64::consts::E,
            }
        } else {
            SamplerKind::Large(
                rand_distr::Gamma::new(self.shape, 1.0).expect("validated gamma parameters"),
            )
        };
        GammaSampler {
            shape: self.shape,
            scale: 1.0 / self.rate,
            kind,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct GammaSampler {
    shape: f64,
    scale: f64,
    kind: SamplerKind,
}

#[derive(Debug, Clone, Copy)]
enum SamplerKind {
    /// Ahrens–Dieter rejection for shape < 1; two uniforms per attempt and
    /// acceptance close to 1 for the tiny shapes of short time steps.
    SmallShape {
        inv_shape: f64,
        bound: f64,
    },
    Large(rand_distr::Gamma<f64>),
}

impl Distribution<f64> for GammaSampler {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let unit = match self.kind {
            SamplerKind::Large(g) => g.sample(rng),
            SamplerKind::SmallShape { inv_shape, bound } => loop {
                let p = bound * rng.random::<f64>();
                let u: f64 = rng.random();
                if p <= 1.0 {
                    let x = p.powf(inv_shape);
                    // 1 − x ≤ e^{−x} settles almost every draw without exp.
                    if u <= 1.0 - x || u <= (-x).exp() {
                        break x;
                    }
                } else {
                    let x = -((bound - p) * inv_shape).ln();
                    if u <= x.powf(self.shape - 1.0) {
                        break x;
                    }
                }
            },
        };
        unit * self.scale
    }
}

/// Normal law `N(mean, stdev²)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawNormal", into = "RawNormal")]
pub struct NormalLaw {
    mean: f64,
    stdev: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawNormal {
    mean: f64,
    stdev: f64,
}

impl TryFrom<RawNormal> for NormalLaw {
    type Error = Error;
    fn try_from(raw: RawNormal) -> Result<Self> {
        NormalLaw::new(raw.mean, raw.stdev)
    }
}

impl From<NormalLaw> for RawNormal {
    fn from(law: NormalLaw) -> Self {
        RawNormal {
            mean: law.mean,
            stdev: law.stdev,
        }
    }
}

impl NormalLaw {
    pub fn new(mean: f64, stdev: f64) -> Result<Self> {
        if !mean.is_finite() {
            return Err(Error::Domain(format!(
                "normal mean must be finite, got {mean}"
            )));
        }
        if !(stdev.is_finite() && stdev > 0.0) {
            return Err(Error::Domain(format!(
                "normal stdev must be positive, got {stdev}"
            )));
        }
        Ok(Self { mean, stdev })
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn stdev(&self) -> f64 {
        self.stdev
    }

    pub fn cdf(&self, x: f64) -> Result<f64> {
        if x.is_nan() {
            return Err(Error::Domain("normal_cdf argument is NaN".into()));
        }
        Ok(std_normal_cdf((x - self.mean) / self.stdev))
    }

    pub fn density(&self, x: f64) -> f64 {
        std_normal_pdf((x - self.mean) / self.stdev) / self.stdev
    }

    pub fn sampler(&self) -> rand_distr::Normal<f64> {
        rand_distr::Normal::new(self.mean, self.stdev).expect("validated normal parameters")
    }
}

/// Law of the sum of `m` i.i.d. damage jumps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DamageSum {
    /// No jumps: the sum is identically zero.
    PointMassAtZero,
    Normal(NormalLaw),
}

/// P(Z ≤ x) for `Z ~ law`.
pub fn gamma_cdf(x: f64, law: &GammaLaw) -> Result<f64> {
    law.cdf(x)
}

/// Φ((x − mean) / stdev).
pub fn normal_cdf(x: f64, law: &NormalLaw) -> Result<f64> {
    law.cdf(x)
}

/// One gamma increment. Valid for arbitrarily small shapes.
pub fn sample_gamma_increment<R: Rng + ?Sized>(law: &GammaLaw, rng: &mut R) -> f64 {
    law.sampler().sample(rng)
}

/// m-fold convolution of a normal law: `N(m·mean, m·stdev²)`.
pub fn iid_sum_normal(m: u64, law: &NormalLaw) -> DamageSum {
    if m == 0 {
        return DamageSum::PointMassAtZero;
    }
    let m = m as f64;
    DamageSum::Normal(NormalLaw {
        mean: m * law.mean,
        stdev: m.sqrt() * law.stdev,
    })
}

//! Special functions: log-gamma, regularized incomplete gamma, normal CDF.

use std::f64::consts::{LN_2, PI};

const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

const MAX_ITER: usize = 100_000;

/// Natural log of |Γ(x)| (Lanczos, g = 7).
pub fn ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        // Γ(x)Γ(1−x) = π / sin(πx)
        return (PI / (PI * x).sin()).abs().ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut acc = LANCZOS_COEF[0];
    for (i, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}

/// Regularized incomplete gamma pair `(P(a, x), Q(a, x))`.
///
/// Series for `x < a + 1`, Lentz continued fraction otherwise; the other
/// member of the pair is formed by complement so that `P + Q == 1`.
/// Callers must pass `a > 0` and `x >= 0`.
pub(crate) fn gamma_pq(a: f64, x: f64) -> (f64, f64) {
    debug_assert!(a > 0.0 && x >= 0.0);
    if x == 0.0 {
        return (0.0, 1.0);
    }
    if x.is_infinite() {
        return (1.0, 0.0);
    }
    let log_prefactor = -x + a * x.ln() - ln_gamma(a);
    if x < a + 1.0 {
        let p = series_p(a, x, log_prefactor).min(1.0);
        (p, 1.0 - p)
    } else {
        let q = continued_fraction_q(a, x, log_prefactor).min(1.0);
        (1.0 - q, q)
    }
}

fn series_p(a: f64, x: f64, log_prefactor: f64) -> f64 {
    let mut ap = a;
    let mut term = 1.0 / a;
    let mut sum = term;
    for _ in 0..MAX_ITER {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if term.abs() < sum.abs() * f64::EPSILON {
            break;
        }
    }
    (log_prefactor + sum.ln()).exp()
}

fn continued_fraction_q(a: f64, x: f64, log_prefactor: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut b = x + 1.0 - a;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..MAX_ITER {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.abs() < TINY {
            d = TINY;
        }
        c = b + an / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() < f64::EPSILON {
            break;
        }
    }
    (log_prefactor + h.ln()).exp()
}

/// Standard normal CDF Φ(z), via `erfc(u) = Q(1/2, u²)`.
pub fn std_normal_cdf(z: f64) -> f64 {
    if z.is_nan() {
        return f64::NAN;
    }
    let half_sq = 0.5 * z * z;
    let (p, q) = gamma_pq(0.5, half_sq);
    if z < 0.0 {
        0.5 * q
    } else {
        0.5 + 0.5 * p
    }
}

/// Standard normal density.
pub fn std_normal_pdf(z: f64) -> f64 {
    // 1/sqrt(2π) = exp(-ln(2π)/2)
    (-0.5 * z * z - 0.5 * (LN_2 + PI.ln())).exp()
}

/// ln of the generalized binomial coefficient C(r + i − 1, i) for real r > 0.
pub(crate) fn ln_rising_binomial(r: f64, i: u64) -> f64 {
    if i <= 1024 {
        // Direct product keeps full precision when r is huge (η → 0).
        (0..i)
            .map(|k| ((r + k as f64) / (k as f64 + 1.0)).ln())
            .sum()
    } else {
        ln_gamma(r + i as f64) - ln_gamma(r) - ln_gamma(i as f64 + 1.0)
    }
}

//! Globally adaptive Gauss–Kronrod (7/15) quadrature.

use crate::error::{Error, Result};

pub const DEFAULT_TOL: f64 = 1e-9;
const MAX_SUBDIVISIONS: usize = 4000;

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
// Gauss weights for nodes XGK[1], XGK[3], XGK[5], XGK[7].
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

fn gauss_kronrod<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for (j, (&x, &w)) in XGK.iter().zip(WGK.iter()).take(7).enumerate() {
        let dx = half * x;
        let pair = f(center - dx) + f(center + dx);
        kronrod += w * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    Segment {
        a,
        b,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
    }
}

/// ∫ₐᵇ f(x) dx to absolute tolerance `tol`.
///
/// Bisects the segment with the largest error estimate until the summed
/// estimate is within `tol`. Fails with [`Error::Quadrature`] carrying the
/// best estimate when the subdivision budget runs out.
pub fn integrate<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    if !(a.is_finite() && b.is_finite()) || a > b {
        return Err(Error::Domain(format!(
            "integration bounds must satisfy a <= b, got [{a}, {b}]"
        )));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Domain(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    if a == b {
        return Ok(0.0);
    }
    let mut segments = vec![gauss_kronrod(&mut f, a, b)];
    loop {
        let (value, error) = segments
            .iter()
            .fold((0.0, 0.0), |(v, e), s| (v + s.value, e + s.error));
        if !value.is_finite() {
            return Err(Error::Domain(
                "integrand is not finite on the interval".into(),
            ));
        }
        if error <= tol {
            return Ok(value);
        }
        if segments.len() >= MAX_SUBDIVISIONS {
            return Err(Error::Quadrature {
                estimate: value,
                error_estimate: error,
            });
        }
        let worst = segments
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .map(|(i, _)| i)
            .unwrap();
        let seg = segments.swap_remove(worst);
        let mid = 0.5 * (seg.a + seg.b);
        if mid <= seg.a || mid >= seg.b {
            // Interval cannot be split further in floating point.
            return Err(Error::Quadrature {
                estimate: value,
                error_estimate: error,
            });
        }
        segments.push(gauss_kronrod(&mut f, seg.a, mid));
        segments.push(gauss_kronrod(&mut f, mid, seg.b));
    }
}

//! Globally adaptive Gauss–Kronrod (7/15) integration.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

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

// Gauss weights at XGK[1], XGK[3], XGK[5], XGK[7].
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

pub const DEFAULT_MAX_INTERVALS: usize = 2000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub intervals: usize,
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gauss_kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut abs_sum = fc.abs() * WGK[7];
    let mut samples = [(0.0, 0.0); 7];
    for (j, (&x, &w)) in XGK[..7].iter().zip(&WGK[..7]).enumerate() {
        let dx = half * x;
        let (lo, hi) = (f(center - dx), f(center + dx));
        samples[j] = (lo, hi);
        kronrod += w * (lo + hi);
        abs_sum += w * (lo.abs() + hi.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (lo + hi);
        }
    }
    let mean = 0.5 * kronrod;
    let mut spread = WGK[7] * (fc - mean).abs();
    for (&(lo, hi), &w) in samples.iter().zip(&WGK[..7]) {
        spread += w * ((lo - mean).abs() + (hi - mean).abs());
    }
    let width = half.abs();
    Segment {
        a,
        b,
        value: kronrod * half,
        error: scaled_error((kronrod - gauss) * half, abs_sum * width, spread * width),
    }
}

/// QUADPACK error heuristic: the raw |K − G| difference is inflated by
/// `(200 |K − G| / spread)^1.5`, capped by the spread, and floored at the
/// roundoff level of the interval.
fn scaled_error(raw: f64, abs_integral: f64, spread: f64) -> f64 {
    let mut err = raw.abs();
    if spread != 0.0 && err != 0.0 {
        let scale = (200.0 * err / spread).powf(1.5);
        err = if scale < 1.0 { spread * scale } else { spread };
    }
    if abs_integral > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * abs_integral);
    }
    err
}

/// Integrates `f` over `[a, b]` until the summed error estimate is at most
/// `abs_tol`, bisecting the worst interval each step.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    max_intervals: usize,
) -> Result<QuadratureResult> {
    integrate_with_breakpoints(f, a, b, &[], abs_tol, max_intervals)
}

/// Like [`integrate`], but starts from the partition given by `breakpoints`.
/// Points where `f` is not smooth should be listed here; the local error
/// estimate cannot see a kink that falls between the outermost node and the
/// end of an interval.
pub fn integrate_with_breakpoints<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    abs_tol: f64,
    max_intervals: usize,
) -> Result<QuadratureResult> {
    let mut edges = vec![a];
    let mut inner: Vec<f64> = breakpoints
        .iter()
        .copied()
        .filter(|&x| x > a && x < b)
        .collect();
    inner.sort_by(f64::total_cmp);
    inner.dedup();
    edges.extend(inner);
    edges.push(b);

    let mut heap: BinaryHeap<Segment> = edges
        .windows(2)
        .map(|w| gauss_kronrod(&f, w[0], w[1]))
        .collect();
    let mut total_error: f64 = heap.iter().map(|s| s.error).sum();

    while total_error > abs_tol {
        if heap.len() >= max_intervals {
            return Err(Error::QuadratureNotConverged {
                tolerance: abs_tol,
                estimate: total_error,
                intervals: heap.len(),
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Interval no longer divisible in floating point.
            return Err(Error::QuadratureNotConverged {
                tolerance: abs_tol,
                estimate: total_error,
                intervals: heap.len() + 1,
            });
        }
        let left = gauss_kronrod(&f, worst.a, mid);
        let right = gauss_kronrod(&f, mid, worst.b);
        total_error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }

    // Re-sum; the running error total drifts.
    let value = heap.iter().map(|s| s.value).sum();
    let error_estimate = heap.iter().map(|s| s.error).sum();
    Ok(QuadratureResult {
        value,
        error_estimate,
        intervals: heap.len(),
    })
}

/// Zeros of `g` on `[a, b]`, found as sign changes on a `scan`-point grid and
/// refined by bisection to floating-point resolution.
pub fn sign_changes<G: Fn(f64) -> f64>(g: G, a: f64, b: f64, scan: usize) -> Vec<f64> {
    let scan = scan.max(2);
    let grid: Vec<f64> = (0..scan)
        .map(|k| a + (b - a) * k as f64 / (scan - 1) as f64)
        .collect();
    let mut roots = Vec::new();
    for w in grid.windows(2) {
        let (mut lo, mut hi) = (w[0], w[1]);
        let (g_lo, g_hi) = (g(lo), g(hi));
        if g_lo == 0.0 {
            roots.push(lo);
            continue;
        }
        if g_lo.signum() == g_hi.signum() || g_hi == 0.0 {
            continue;
        }
        loop {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let g_mid = g(mid);
            if g_mid == 0.0 {
                lo = mid;
                hi = mid;
                break;
            }
            if g_mid.signum() == g_lo.signum() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        roots.push(0.5 * (lo + hi));
    }
    roots
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn polynomial_exact() {
        let r = integrate(|x| x.powi(5) - 3.0 * x * x, 0.0, 2.0, 1e-13, 10).unwrap();
        assert!((r.value - (64.0 / 6.0 - 8.0)).abs() < 1e-13);
        assert_eq!(r.intervals, 1);
    }

    #[test]
    fn smooth_oscillatory() {
        let r = integrate(|x| x.sin(), 0.0, PI, 1e-12, 100).unwrap();
        assert!((r.value - 2.0).abs() < 1e-12);
    }

    #[test]
    fn kinked_integrand() {
        // ∫₀^π |cos x| dx = 2, kink at π/2.
        let r = integrate(|x| x.cos().abs(), 0.0, PI, 1e-10, DEFAULT_MAX_INTERVALS).unwrap();
        assert!((r.value - 2.0).abs() < 1e-10, "{r:?}");
        // ∫₀^1 |x − 1/3| dx = 5/18
        let r = integrate(|x| (x - 1.0 / 3.0).abs(), 0.0, 1.0, 1e-10, 500).unwrap();
        assert!((r.value - 5.0 / 18.0).abs() < 1e-10);
    }

    #[test]
    fn kink_near_interval_end_needs_breakpoint() {
        let c0 = -0.003885858611130222;
        let c1 = -0.7099480003507233;
        let f = |d: f64| (c0 + c1 * d.cos()).abs();
        let kink = (-c0 / c1).acos();
        let head = c0 * kink + c1 * kink.sin();
        let exact = head.abs() + (c0 * PI - head).abs();
        let found = sign_changes(|d| c0 + c1 * d.cos(), 0.0, PI, 64);
        assert_eq!(found.len(), 1);
        assert!((found[0] - kink).abs() < 1e-14);
        let r = integrate_with_breakpoints(f, 0.0, PI, &found, 1e-10, DEFAULT_MAX_INTERVALS)
            .unwrap();
        assert!((r.value - exact).abs() < 1e-10, "{r:?}");
    }

    #[test]
    fn sign_changes_of_sine() {
        let r = sign_changes(f64::sin, 0.5, 10.0, 50);
        assert_eq!(r.len(), 3);
        for (k, x) in r.iter().enumerate() {
            assert!((x - PI * (k + 1) as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn reports_non_convergence() {
        let r = integrate(|x| (x - 1.0 / 3.0).abs(), 0.0, 1.0, 1e-14, 3);
        assert!(matches!(r, Err(Error::QuadratureNotConverged { .. })));
    }
}

//! Globally adaptive bisection on top of the 15-point Kronrod rule with its
//! embedded 7-point Gauss rule.

use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::Float;

use crate::{Error, Result};

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
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

pub(crate) const EVALS_PER_PANEL: usize = 15;

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
    // error is at the rounding floor or the panel cannot be split further
    settled: bool,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    // largest error first; ties resolved by position so the order is total
    fn cmp(&self, other: &Self) -> Ordering {
        self.err
            .total_cmp(&other.err)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Estimate {
    pub value: f64,
    pub err: f64,
    pub evals: usize,
}

fn gauss_kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut abs_sum = kronrod.abs();
    let mut f1 = [0.0; 7];
    let mut f2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let lo = f(center - dx);
        let hi = f(center + dx);
        f1[j] = lo;
        f2[j] = hi;
        kronrod += WGK[j] * (lo + hi);
        abs_sum += WGK[j] * (lo.abs() + hi.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (lo + hi);
        }
    }
    let mean = 0.5 * kronrod;
    let mut asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        asc += WGK[j] * ((f1[j] - mean).abs() + (f2[j] - mean).abs());
    }
    let value = kronrod * half;
    let res_abs = abs_sum * half.abs();
    let res_asc = asc * half.abs();
    let mut err = ((kronrod - gauss) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    let floor = 50.0 * f64::EPSILON * res_abs;
    let mut settled = false;
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) && err <= floor {
        err = floor;
        settled = true;
    }
    if err == 0.0 || (b - a).abs() <= 8.0 * f64::EPSILON * a.abs().max(b.abs()) {
        settled = true;
    }
    Panel {
        a,
        b,
        value,
        err,
        settled,
    }
}

/// Integrates `f` over `[breaks[0], breaks[last]]` starting from the given
/// partition, bisecting the panel with the largest error until the summed
/// error drops below `tol`.
///
/// Fails with the partial result if `max_evals` runs out, or as soon as the
/// panels already at their rounding floor account for more than `tol`.
pub(crate) fn adaptive<F: Fn(f64) -> f64>(
    f: &F,
    breaks: &[f64],
    tol: f64,
    max_evals: usize,
) -> Result<Estimate> {
    let mut heap = BinaryHeap::new();
    let mut settled = Vec::new();
    let mut evals = 0;
    let mut total_err = 0.0;
    let mut settled_err = 0.0;
    for w in breaks.windows(2) {
        let p = gauss_kronrod(f, w[0], w[1]);
        evals += EVALS_PER_PANEL;
        total_err += p.err;
        file(p, &mut heap, &mut settled, &mut settled_err);
    }

    while total_err > tol {
        if settled_err > tol {
            let (value, err_est) = sum_panels(heap.into_vec(), settled);
            return Err(Error::BelowRoundingFloor {
                value,
                err_est,
                tol,
                evals,
            });
        }
        let Some(worst) = heap.pop() else { break };
        if evals + 2 * EVALS_PER_PANEL > max_evals {
            heap.push(worst);
            let (value, err_est) = sum_panels(heap.into_vec(), settled);
            return Err(Error::NonConvergence {
                value,
                err_est,
                evals,
            });
        }
        let mid = 0.5 * (worst.a + worst.b);
        let left = gauss_kronrod(f, worst.a, mid);
        let right = gauss_kronrod(f, mid, worst.b);
        evals += 2 * EVALS_PER_PANEL;
        total_err += left.err + right.err - worst.err;
        file(left, &mut heap, &mut settled, &mut settled_err);
        file(right, &mut heap, &mut settled, &mut settled_err);
    }

    let (value, err) = sum_panels(heap.into_vec(), settled);
    Ok(Estimate { value, err, evals })
}

fn file(p: Panel, heap: &mut BinaryHeap<Panel>, settled: &mut Vec<Panel>, settled_err: &mut f64) {
    if p.settled {
        *settled_err += p.err;
        settled.push(p);
    } else {
        heap.push(p);
    }
}

fn sum_panels(mut panels: Vec<Panel>, settled: Vec<Panel>) -> (f64, f64) {
    panels.extend(settled);
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    panels
        .iter()
        .fold((0.0, 0.0), |(v, e), p| (v + p.value, e + p.err))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_exact_on_one_panel() {
        // Kronrod-15 integrates degree ≤ 22 exactly
        let est = adaptive(&|x: f64| x.powi(10) - 3.0 * x * x, &[0.0, 2.0], 1e-11, 1000).unwrap();
        let exact = 2f64.powi(11) / 11.0 - 8.0;
        assert!((est.value - exact).abs() < 1e-12);
        assert_eq!(est.evals, 15);
    }

    #[test]
    fn error_estimate_bounds_true_error() {
        let f = |x: f64| 1.0 / (1.0 + 25.0 * x * x);
        let est = adaptive(&f, &[-1.0, 1.0], 1e-12, 100_000).unwrap();
        let exact = 2.0 * 5f64.atan() / 5.0;
        assert!((est.value - exact).abs() <= est.err);
        assert!(est.err <= 1e-12);
    }

    #[test]
    fn budget_exhaustion_reports_partial_result() {
        let f = |x: f64| (1.0 / x).sin();
        match adaptive(&f, &[1e-9, 1.0], 1e-15, 300) {
            Err(Error::NonConvergence { evals, .. }) => assert!(evals <= 300),
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }

    #[test]
    fn unreachable_tolerance_stops_early() {
        // a value near 1e12 cannot be resolved to an absolute 1e-6
        let f = |x: f64| 1e12 * (-x).exp();
        match adaptive(&f, &[0.0, 1.0, 2.0, 4.0], 1e-6, 100_000) {
            Err(Error::BelowRoundingFloor { evals, err_est, .. }) => {
                assert!(evals < 1000);
                assert!(err_est > 1e-6);
            }
            other => panic!("expected a rounding-floor stop, got {other:?}"),
        }
    }

    #[test]
    fn deterministic() {
        let f = |x: f64| (20.0 * x).cos() * (-x).exp();
        let a = adaptive(&f, &[0.0, 10.0], 1e-13, 100_000).unwrap();
        let b = adaptive(&f, &[0.0, 10.0], 1e-13, 100_000).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_eq!(a.err.to_bits(), b.err.to_bits());
    }
}

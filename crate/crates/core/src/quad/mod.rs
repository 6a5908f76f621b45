//! Integration over `[0, ∞)` of `f(x)·ηⁿ(ix)` and of a few related
//! integrands with no eta factor.
//!
//! The range is truncated at a cutoff `X` chosen from an explicit majorant
//! of the integrand, the discarded head `[0, x0]` is bounded analytically,
//! and `[x0, X]` goes to the adaptive 15/7-point rule. The reported
//! `err_est` is the sum of all three contributions.

mod kernel;
mod rule;

use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use num_traits::Float;

use kernel::Majorant;
pub use kernel::{EtaFactor, KernelSpec, Weight, MAX_FREQUENCY};

use crate::specfun::{finite, non_negative, positive, sinh_minus_sin_ratio};
use crate::{Error, Result};

/// Evaluation budget per integral.
pub const MAX_EVALS: usize = 100_000;

/// Smallest accepted tolerance for [`integrate`].
pub const MIN_TOL: f64 = 1e-13;

/// Smallest accepted tolerance for [`integrate_glaisher`].
pub const MIN_TOL_GLAISHER: f64 = 1e-12;

/// Lower integration limit; `[0, HEAD]` is covered by an analytic bound.
pub const HEAD: f64 = 1e-12;

// share of the tolerance given to the truncated tail
const TAIL_SHARE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TailMethod {
    /// Tail dropped, bounded by an exponential majorant.
    ExpBound,
    /// Tail added in closed form, remainder bounded.
    AlgebraicCorrection,
    /// Majorant underflows at the cutoff: the tail is exactly negligible.
    None,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub err_est: f64,
    pub evals: usize,
    pub cutoff: f64,
    pub tail_method: TailMethod,
}

/// The integrals with no eta factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Glaisher {
    /// `∫ (sinh x − sin x) / (x²(cosh x + cos x)) dx = π/4`
    Eq11,
    /// `∫ sinh(x/2) sin(x/2) / (x(cosh x + cos x)) dx = π/8`
    Eq17,
}

/// Right-hand sides that are themselves integrals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AuxIntegral {
    /// `(2/π) ∫₀^∞ x e^{−ax²/π} sech x dx`
    A2Rhs,
    /// `(2/π) ∫₀^∞ e^{−ax²/π} sech x dx`
    A4Rhs,
    /// `(2/π) ∫_{√(πy)}^∞ x sech x dx`
    A6Rhs,
}

/// `∫₀^∞ kernel(x) dx` to absolute accuracy `tol`.
pub fn integrate(kernel: &KernelSpec, tol: f64) -> Result<QuadResult> {
    integrate_impl(kernel, tol, None)
}

/// As [`integrate`] but with a caller-chosen cutoff `X ≥ 1`.
pub fn integrate_with_cutoff(kernel: &KernelSpec, tol: f64, cutoff: f64) -> Result<QuadResult> {
    let cutoff = positive("cutoff", cutoff)?;
    if cutoff < 1.0 {
        return Err(Error::domain("cutoff", cutoff, "[1, ∞)"));
    }
    integrate_impl(kernel, tol, Some(cutoff))
}

fn integrate_impl(kernel: &KernelSpec, tol: f64, cutoff: Option<f64>) -> Result<QuadResult> {
    check_tol(tol, MIN_TOL)?;
    kernel.validate()?;
    let majorant = kernel.tail_majorant();
    let cutoff = match cutoff {
        Some(x) => x,
        None => choose_cutoff(&majorant, tol * TAIL_SHARE, 1.0)?,
    };
    let tail = majorant.tail(cutoff);
    let head = kernel.head_bound(HEAD);
    let breaks = breakpoints(HEAD, cutoff, kernel.max_frequency());
    let budget = tol - tail - head;
    let est = run(&|x| kernel.eval(x), &breaks, budget)?;
    Ok(QuadResult {
        value: est.value,
        err_est: est.err + tail + head,
        evals: est.evals,
        cutoff,
        tail_method: if tail == 0.0 {
            TailMethod::None
        } else {
            TailMethod::ExpBound
        },
    })
}

/// One of the two eta-free integrals, with its automatically chosen cutoff.
pub fn integrate_glaisher(which: Glaisher, tol: f64) -> Result<QuadResult> {
    check_tol(tol, MIN_TOL_GLAISHER)?;
    let cutoff = match which {
        Glaisher::Eq11 => glaisher_cutoff(tol, |x| eq11_tail(x).1)?,
        Glaisher::Eq17 => glaisher_cutoff(tol, eq17_tail_bound)?,
    };
    integrate_glaisher_with_cutoff(which, tol, cutoff)
}

/// As [`integrate_glaisher`] with a caller-chosen cutoff `X ≥ 8`.
pub fn integrate_glaisher_with_cutoff(
    which: Glaisher,
    tol: f64,
    cutoff: f64,
) -> Result<QuadResult> {
    check_tol(tol, MIN_TOL_GLAISHER)?;
    let cutoff = positive("cutoff", cutoff)?;
    if cutoff < 8.0 {
        return Err(Error::domain("cutoff", cutoff, "[8, ∞)"));
    }
    let breaks = breakpoints(0.0, cutoff, 0.0);
    match which {
        Glaisher::Eq11 => {
            let (tail, bound) = eq11_tail(cutoff);
            let est = run(&eq11_integrand, &breaks, tol - bound)?;
            Ok(QuadResult {
                value: est.value + tail,
                err_est: est.err + bound,
                evals: est.evals,
                cutoff,
                tail_method: TailMethod::AlgebraicCorrection,
            })
        }
        Glaisher::Eq17 => {
            let bound = eq17_tail_bound(cutoff);
            let est = run(&eq17_integrand, &breaks, tol - bound)?;
            Ok(QuadResult {
                value: est.value,
                err_est: est.err + bound,
                evals: est.evals,
                cutoff,
                tail_method: TailMethod::ExpBound,
            })
        }
    }
}

/// `(sinh x − sin x) / (x²(cosh x + cos x))`, extended by 0 at `x = 0`.
pub fn eq11_integrand(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        sinh_minus_sin_ratio(x) / (x * x)
    }
}

/// `sinh(x/2) sin(x/2) / (x(cosh x + cos x))`, extended by 0 at `x = 0`
/// (it behaves like `x/8`).
pub fn eq17_integrand(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let x = x.abs();
    let e1 = (-x).exp();
    // numerator and denominator both scaled by 2e^{−x}
    let num = (-0.5 * x).exp() * -(-x).exp_m1() * (0.5 * x).sin();
    let den = x * (1.0 + 2.0 * e1 * x.cos() + e1 * e1);
    num / den
}

/// The closed-form tail `∫_X^∞ eq11 ≈ 1/X` and a bound on what it misses.
///
/// For `x ≥ 8`, `|ratio − 1| ≤ (e^{−x} + √2)/(cosh x − 1) ≤ 3e^{−x}`, so the
/// remainder is at most `3e^{−X}/X²`.
pub fn eq11_tail(cutoff: f64) -> (f64, f64) {
    (1.0 / cutoff, 3.0 * (-cutoff).exp() / (cutoff * cutoff))
}

// |g| ≤ e^{−x/2} / (x(1 − e^{−x})) since the scaled denominator is ≥ (1 − e^{−x})²
fn eq17_tail_bound(cutoff: f64) -> f64 {
    2.0 * (-0.5 * cutoff).exp() / (cutoff * -(-cutoff).exp_m1())
}

/// Evaluates one of the auxiliary right-hand-side integrals.
pub fn integrate_rhs_aux(which: AuxIntegral, param: f64, tol: f64) -> Result<QuadResult> {
    check_tol(tol, MIN_TOL)?;
    let param = non_negative(
        match which {
            AuxIntegral::A6Rhs => "y",
            _ => "a",
        },
        param,
    )?;
    // sech x ≤ 2e^{−x}
    let (lower, p, f): (f64, f64, &dyn Fn(f64) -> f64) = match which {
        AuxIntegral::A2Rhs => (0.0, 1.0, &|x: f64| {
            x * (-param * x * x / PI).exp() * sech(x)
        }),
        AuxIntegral::A4Rhs => (0.0, 0.0, &|x: f64| (-param * x * x / PI).exp() * sech(x)),
        AuxIntegral::A6Rhs => ((PI * param).sqrt(), 1.0, &|x: f64| x * sech(x)),
    };
    let majorant = Majorant { c: 2.0, p, mu: 1.0 };
    let cutoff = choose_cutoff(&majorant, tol * TAIL_SHARE / (2.0 / PI), lower.max(1.0))?;
    let tail = majorant.tail(cutoff);
    let mut breaks = Vec::new();
    if lower < cutoff {
        breaks = breakpoints(lower, cutoff, 0.0);
    }
    let scale = 2.0 / PI;
    let est = if breaks.len() < 2 {
        Estimate {
            value: 0.0,
            err: 0.0,
            evals: 0,
        }
    } else {
        run(&|x| scale * f(x), &breaks, tol - scale * tail)?
    };
    Ok(QuadResult {
        value: est.value,
        err_est: est.err + scale * tail,
        evals: est.evals.max(1),
        cutoff,
        tail_method: if tail == 0.0 {
            TailMethod::None
        } else {
            TailMethod::ExpBound
        },
    })
}

fn sech(x: f64) -> f64 {
    let e = (-x.abs()).exp();
    2.0 * e / (1.0 + e * e)
}

fn check_tol(tol: f64, min: f64) -> Result<()> {
    let tol = finite("tol", tol)?;
    if tol < min {
        return Err(Error::domain("tol", tol, "too small for double precision"));
    }
    Ok(())
}

pub(crate) use rule::{adaptive as adaptive_sum, Estimate};

fn run<F: Fn(f64) -> f64>(f: &F, breaks: &[f64], budget: f64) -> Result<rule::Estimate> {
    rule::adaptive(f, breaks, budget.max(0.0), MAX_EVALS)
}

/// Smallest `X ≥ start` (to within 0.1%) with `majorant.tail(X) ≤ target`.
fn choose_cutoff(majorant: &Majorant, target: f64, start: f64) -> Result<f64> {
    let mut hi = start;
    let mut lo = start;
    while majorant.tail(hi) > target {
        lo = hi;
        hi *= 1.5;
        if hi > 1e6 {
            return Err(Error::domain(
                "decay rate",
                majorant.mu,
                "too slow for the cutoff search",
            ));
        }
    }
    if hi == start {
        return Ok(hi);
    }
    while hi - lo > 1e-3 * hi {
        let mid = 0.5 * (lo + hi);
        if majorant.tail(mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(hi)
}

fn glaisher_cutoff(tol: f64, bound: impl Fn(f64) -> f64) -> Result<f64> {
    let mut x = 8.0;
    while bound(x) > tol * TAIL_SHARE {
        x += 1.0;
    }
    Ok(x)
}

/// Initial partition of `[a, b]`: powers of two (so that the tiny-`x`
/// region is resolved geometrically) plus, for oscillatory weights, points
/// no further apart than one period.
pub(crate) fn breakpoints(a: f64, b: f64, omega: f64) -> Vec<f64> {
    let mut pts = Vec::new();
    pts.push(a);
    let mut p = 2f64.powi(-40);
    while p < b {
        if p > a {
            pts.push(p);
        }
        p *= 2.0;
    }
    pts.push(b);
    if omega > 0.0 {
        let width = TAU / omega;
        let mut refined = Vec::with_capacity(pts.len());
        for w in pts.windows(2) {
            let pieces = ((w[1] - w[0]) / width).ceil().max(1.0) as usize;
            let h = (w[1] - w[0]) / pieces as f64;
            for k in 0..pieces {
                refined.push(w[0] + h * k as f64);
            }
        }
        refined.push(b);
        pts = refined;
    }
    pts
}

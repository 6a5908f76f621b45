//! `η(ix)` and `η³(ix)` for real `x > 0`.
//!
//! With nome `q = e^{−2πx}`:
//!
//! ```text
//! η(ix)  = q^{1/24} ∏_{n≥1} (1 − qⁿ)
//!        = Σ_{n≥0} χ(2n+1) q^{(2n+1)²/24}          χ = +1, 0, −1, −1, 0, +1 on 1, 3, 5, 7, 9, 11 (mod 12)
//! η³(ix) = Σ_{n≥0} (−1)ⁿ (2n+1) q^{(2n+1)²/8}
//! ```
//!
//! For `x < 1` the series are evaluated at `1/x` and mapped back with
//! `η(ix) = x^{−1/2} η(i/x)`, so the working nome never exceeds `e^{−2π}`.
//! The scale factor is folded into the exponent of every term, which keeps
//! tiny `x` from overflowing `x^{−3/2}`.

use core::f64::consts::PI;

use num_traits::Float;

use crate::specfun::positive;
use crate::{Error, Result};

/// Maximum number of series terms before giving up on a tolerance.
pub const TERM_BUDGET: usize = 10_000;

/// Below this the modular transformation is applied.
pub const MODULAR_SWITCH: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EtaPower {
    One,
    Three,
}

impl EtaPower {
    pub fn exponent(self) -> u32 {
        match self {
            EtaPower::One => 1,
            EtaPower::Three => 3,
        }
    }

    // weight of the modular transformation: η^n(ix) = x^{−n/2} η^n(i/x)
    fn weight(self) -> f64 {
        f64::from(self.exponent()) / 2.0
    }

    // q^{m²/c} = exp(−π x m² · 2/c)
    fn rate(self) -> f64 {
        match self {
            EtaPower::One => PI / 12.0,
            EtaPower::Three => PI / 4.0,
        }
    }

    fn coefficient(self, n: usize) -> f64 {
        match self {
            EtaPower::One => match (2 * n + 1) % 12 {
                1 | 11 => 1.0,
                5 | 7 => -1.0,
                _ => 0.0,
            },
            EtaPower::Three => {
                let m = (2 * n + 1) as f64;
                if n.is_multiple_of(2) {
                    m
                } else {
                    -m
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EtaPath {
    Series,
    Product,
    ModularAccelerated,
}

/// `ηⁿ(ix)` with an absolute bound on the discarded terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EtaValue {
    pub value: f64,
    pub trunc_bound: f64,
    pub terms_used: usize,
    pub path: EtaPath,
}

/// `η(ix)` to absolute accuracy `tol`.
pub fn eta(x: f64, tol: f64) -> Result<EtaValue> {
    eta_power(x, EtaPower::One, tol)
}

/// `η³(ix)` to absolute accuracy `tol`, from the cubic series directly.
pub fn eta_cubed(x: f64, tol: f64) -> Result<EtaValue> {
    eta_power(x, EtaPower::Three, tol)
}

/// `ηⁿ(ix)` using the modular transformation whenever `x < 1`.
pub fn eta_power(x: f64, power: EtaPower, tol: f64) -> Result<EtaValue> {
    let x = positive("x", x)?;
    let tol = positive("tol", tol)?;
    if x >= MODULAR_SWITCH {
        series(x, power, tol, 0.0, EtaPath::Series)
    } else {
        let ln_scale = -power.weight() * x.ln();
        series(1.0 / x, power, tol, ln_scale, EtaPath::ModularAccelerated)
    }
}

/// The q-series at `x` with no modular transformation, for any `x > 0`.
/// Slow for small `x`; kept as an independent path for tests.
pub fn eta_series_direct(x: f64, power: EtaPower, tol: f64) -> Result<EtaValue> {
    let x = positive("x", x)?;
    let tol = positive("tol", tol)?;
    series(x, power, tol, 0.0, EtaPath::Series)
}

/// Smallest term count `N ≥ 1` whose truncation bound is below `tol` at
/// working argument `x_eff` (normally `≥ 1`, after acceleration).
///
/// For `η` the tail is majorised by a geometric series with ratio
/// `q^{(N+1)/3}`; for `η³` the series alternates with decreasing terms once
/// `(2N+3)/(2N+1)·q^{N+1} < 1`, and the first omitted term is the bound.
pub fn trunc_terms_needed(x_eff: f64, power: EtaPower, tol: f64) -> usize {
    terms_needed(x_eff, power, tol, 0.0).unwrap_or(TERM_BUDGET + 1)
}

/// Partial product `q^{1/24} ∏_{n=1}^{factors} (1 − qⁿ)`, the oracle path.
pub fn eta_product(x: f64, factors: usize) -> Result<f64> {
    let x = positive("x", x)?;
    if factors == 0 {
        return Err(Error::domain("factors", 0.0, "[1, ∞)"));
    }
    let mut prod = 1.0;
    for n in 1..=factors {
        prod *= -(-2.0 * PI * x * n as f64).exp_m1();
    }
    Ok((-PI * x / 12.0).exp() * prod)
}

/// [`eta_product`] packaged with the bound `1 − ∏_{n>N}(1 − qⁿ) ≤ q^{N+1}/(1 − q)`.
pub fn eta_product_value(x: f64, factors: usize) -> Result<EtaValue> {
    let value = eta_product(x, factors)?;
    let q = (-2.0 * PI * x).exp();
    let tail = (-2.0 * PI * x * (factors as f64 + 1.0)).exp() / (1.0 - q);
    Ok(EtaValue {
        value,
        trunc_bound: value * tail,
        terms_used: factors,
        path: EtaPath::Product,
    })
}

fn series(x: f64, power: EtaPower, tol: f64, ln_scale: f64, path: EtaPath) -> Result<EtaValue> {
    let n = terms_needed(x, power, tol, ln_scale).ok_or(Error::ToleranceUnreachable {
        tol,
        budget: TERM_BUDGET,
    })?;
    let rate = power.rate();
    let mut value = 0.0;
    for k in (0..n).rev() {
        let c = power.coefficient(k);
        if c != 0.0 {
            let m = (2 * k + 1) as f64;
            value += c * (ln_scale - rate * x * m * m).exp();
        }
    }
    Ok(EtaValue {
        value,
        trunc_bound: tail_bound(x, power, n, ln_scale),
        terms_used: n,
        path,
    })
}

fn terms_needed(x: f64, power: EtaPower, tol: f64, ln_scale: f64) -> Option<usize> {
    (1..=TERM_BUDGET).find(|&n| tail_bound(x, power, n, ln_scale) < tol)
}

// Bound on |Σ_{k≥n} term_k|, including the modular scale factor.
fn tail_bound(x: f64, power: EtaPower, n: usize, ln_scale: f64) -> f64 {
    let m = (2 * n + 1) as f64;
    let lead = ln_scale - power.rate() * x * m * m;
    match power {
        EtaPower::One => {
            let ratio = (-2.0 * PI * x * (n as f64 + 1.0) / 3.0).exp();
            lead.exp() / (1.0 - ratio)
        }
        EtaPower::Three => {
            let ratio = (m + 2.0) / m * (-2.0 * PI * x * (n as f64 + 1.0)).exp();
            if ratio < 1.0 {
                (lead + m.ln()).exp()
            } else {
                f64::INFINITY
            }
        }
    }
}

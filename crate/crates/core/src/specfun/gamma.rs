use num_traits::Float;

use super::{hurwitz_zeta, positive, EULER_GAMMA};
use crate::Result;

const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_8;

/// B_{2k} / (2k (2k − 1)) for k = 1..8, the Stirling series coefficients.
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

/// B_{2k} / (2k) for k = 1..10, the digamma asymptotic coefficients.
const DIGAMMA_ASYMPTOTIC: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32_760.0,
    1.0 / 12.0,
    -3617.0 / 8160.0,
    43_867.0 / 14_364.0,
    -174_611.0 / 6600.0,
];

const STIRLING_MIN: f64 = 10.0;
const DIGAMMA_MIN: f64 = 8.0;

/// `ln Γ(x)` for `x > 0`.
///
/// Near the zeros at 1 and 2 the Taylor series of `ln Γ(1 + ε)` in ζ(k)
/// is used so the relative accuracy holds there too. Elsewhere the argument
/// is shifted up to 10 and the Stirling series is applied.
pub fn log_gamma(x: f64) -> Result<f64> {
    let x = positive("x", x)?;
    if x == 1.0 || x == 2.0 {
        return Ok(0.0);
    }
    if (x - 1.0).abs() < 0.25 {
        return Ok(log_gamma_one_plus(x - 1.0));
    }
    if (x - 2.0).abs() < 0.25 {
        let eps = x - 2.0;
        return Ok(eps.ln_1p() + log_gamma_one_plus(eps));
    }

    let mut z = x;
    let mut shift = 1.0;
    while z < STIRLING_MIN {
        shift *= z;
        z += 1.0;
    }
    Ok(stirling(z) - shift.ln())
}

/// `Γ(x) = exp(ln Γ(x))` for `x > 0`.
pub fn gamma(x: f64) -> Result<f64> {
    log_gamma(x).map(Float::exp)
}

fn stirling(z: f64) -> f64 {
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    let mut corr = 0.0;
    let mut p = inv;
    for c in STIRLING {
        corr += c * p;
        p *= inv2;
    }
    (z - 0.5) * z.ln() - z + HALF_LN_TWO_PI + corr
}

// ln Γ(1 + ε) = −γε + Σ_{k≥2} (−1)^k ζ(k) ε^k / k, |ε| < 1/4
fn log_gamma_one_plus(eps: f64) -> f64 {
    let mut sum = 0.0;
    let mut p = -eps;
    for k in 2..=32 {
        p *= -eps;
        let zeta_k = hurwitz_zeta(k as f64, 1.0).expect("k ≥ 2 is off the pole");
        let term = zeta_k * p / k as f64;
        sum += term;
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    -EULER_GAMMA * eps + sum
}

/// Digamma `ψ(x)` for `x > 0`: upward recurrence to `x ≥ 8`, then the
/// asymptotic series through B₂₀.
pub fn digamma(x: f64) -> Result<f64> {
    let x = positive("x", x)?;
    let mut acc = 0.0;
    let mut z = x;
    while z < DIGAMMA_MIN {
        acc -= 1.0 / z;
        z += 1.0;
    }
    let inv2 = 1.0 / (z * z);
    let mut p = inv2;
    let mut series = 0.0;
    for c in DIGAMMA_ASYMPTOTIC {
        series += c * p;
        p *= inv2;
    }
    Ok(acc + z.ln() - 0.5 / z - series)
}

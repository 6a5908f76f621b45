use num_traits::Float;

use super::{digamma, finite, log_gamma};
use crate::{Error, Result};

/// Number of explicitly summed terms before the Euler–Maclaurin tail.
const EM_TERMS: usize = 25;
/// For `s < 1` the summed terms grow like `N^{1−s}` and cancel against the
/// pole term, so fewer are taken; the B₁₈ remainder is still below 1e-18.
const EM_TERMS_SMALL_S: usize = 10;

/// B_{2j} / (2j)! for j = 1..8.
const EM_BERNOULLI: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30_240.0,
    -1.0 / 1_209_600.0,
    1.0 / 47_900_160.0,
    -691.0 / 1_307_674_368_000.0,
    1.0 / 74_724_249_600.0,
    -3617.0 / 10_670_622_842_880_000.0,
];

/// Shifts whose signed sum is `Z(w)`.
const COMBO_SHIFTS: [(f64, f64); 4] = [
    (1.0 / 12.0, 1.0),
    (11.0 / 12.0, 1.0),
    (5.0 / 12.0, -1.0),
    (7.0 / 12.0, -1.0),
];

const BETA_SHIFTS: [(f64, f64); 2] = [(0.25, 1.0), (0.75, -1.0)];

/// Above this order β(s) is summed directly; 4^s would overflow the
/// Hurwitz route long before the series becomes slow.
const BETA_DIRECT_MIN: f64 = 40.0;

/// Hurwitz zeta `ζ(s, a) = Σ_{k≥0} (k + a)^{−s}` for `a ∈ (0, 1]`, continued
/// analytically to every real `s ≠ 1`.
///
/// Euler–Maclaurin with 25 summed terms (10 for `s ≤ 0`) and corrections
/// through B₁₆:
///
/// ```text
/// ζ(s,a) ≈ Σ_{k<N} (k+a)^{−s} + (N+a)^{1−s}/(s−1) + ½(N+a)^{−s}
///          + Σ_j B_{2j}/(2j)! · s(s+1)…(s+2j−2) · (N+a)^{−s−2j+1}
/// ```
pub fn hurwitz_zeta(s: f64, a: f64) -> Result<f64> {
    let s = finite("s", s)?;
    let a = finite("a", a)?;
    if !(a > 0.0 && a <= 1.0) {
        return Err(Error::domain("a", a, "(0, 1]"));
    }
    if s == 1.0 {
        return Err(Error::Pole);
    }
    let m = em_terms(s) as f64 + a;
    Ok(head_sum(s, a) + m.powf(1.0 - s) / (s - 1.0) + 0.5 * m.powf(-s) + em_corrections(s, m))
}

/// `Z(w) = ζ(w,1/12) + ζ(w,11/12) − ζ(w,5/12) − ζ(w,7/12)`.
///
/// The four poles cancel, so `Z` is entire. At `w = 1` the value is the
/// exact limit `−[ψ(1/12) + ψ(11/12) − ψ(5/12) − ψ(7/12)]`. Elsewhere the
/// cancelled pole term is evaluated through `expm1` so `Z` stays smooth
/// across `w = 1`.
pub fn hurwitz_zeta_combo(w: f64) -> Result<f64> {
    let w = finite("w", w)?;
    if w == 1.0 {
        let mut acc = 0.0;
        for (a, sign) in COMBO_SHIFTS {
            acc -= sign * digamma(a)?;
        }
        return Ok(acc);
    }
    Ok(signed_hurwitz(w, &COMBO_SHIFTS))
}

/// `Z'(0)` from `∂ζ(s,a)/∂s |_{s=0} = ln Γ(a) − ½ ln 2π`; the `ln 2π`
/// parts cancel in the signed sum.
pub fn hurwitz_zeta_combo_derivative_at_zero() -> f64 {
    COMBO_SHIFTS
        .iter()
        .map(|&(a, sign)| sign * log_gamma(a).expect("shifts are positive"))
        .sum()
}

/// Dirichlet beta `β(s) = Σ (−1)^n (2n+1)^{−s} = 4^{−s}[ζ(s,1/4) − ζ(s,3/4)]`.
pub fn dirichlet_beta(s: f64) -> Result<f64> {
    let s = finite("s", s)?;
    if s == 1.0 {
        return Ok(0.25 * (digamma(0.75)? - digamma(0.25)?));
    }
    if s >= BETA_DIRECT_MIN {
        let mut sum = 0.0;
        for n in (0..8).rev() {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            sum += sign * (2.0 * n as f64 + 1.0).powf(-s);
        }
        return Ok(sum);
    }
    Ok(4.0.powf(-s) * signed_hurwitz(s, &BETA_SHIFTS))
}

fn em_terms(s: f64) -> usize {
    if s >= 1.0 {
        EM_TERMS
    } else {
        EM_TERMS_SMALL_S
    }
}

fn head_sum(s: f64, a: f64) -> f64 {
    (0..em_terms(s))
        .rev()
        .map(|k| (k as f64 + a).powf(-s))
        .sum()
}

fn em_corrections(s: f64, m: f64) -> f64 {
    let inv_m2 = 1.0 / (m * m);
    let mut rising = s;
    let mut power = m.powf(-s) / m;
    let mut sum = 0.0;
    for (j, c) in EM_BERNOULLI.iter().enumerate() {
        sum += c * rising * power;
        let k = 2.0 * j as f64;
        rising *= (s + k + 1.0) * (s + k + 2.0);
        power *= inv_m2;
    }
    sum
}

// Signed sum of Hurwitz zetas whose signs add to zero. Near s = 1 the pole
// terms Σ ± (N+a)^{1−s}/(s−1) are rewritten as −Σ ± L·expm1((1−s)L)/((1−s)L)
// with L = ln(N+a), which is regular at s = 1.
fn signed_hurwitz(s: f64, shifts: &[(f64, f64)]) -> f64 {
    const NEAR_POLE: f64 = 0.1;
    let mut total = 0.0;
    for &(a, sign) in shifts {
        let m = em_terms(s) as f64 + a;
        let pole = if (s - 1.0).abs() < NEAR_POLE {
            let l = m.ln();
            -l * exprel((1.0 - s) * l)
        } else {
            m.powf(1.0 - s) / (s - 1.0)
        };
        total += sign * (head_sum(s, a) + pole + 0.5 * m.powf(-s) + em_corrections(s, m));
    }
    total
}

fn exprel(z: f64) -> f64 {
    if z == 0.0 {
        1.0
    } else {
        z.exp_m1() / z
    }
}

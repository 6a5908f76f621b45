//! Right-hand sides of every identity, built from [`crate::specfun`] only.
//!
//! The exceptions are the three right-hand sides that are themselves
//! integrals; those go through [`crate::quad::integrate_rhs_aux`] and are
//! marked [`RhsMethod::Quadrature`].

use core::f64::consts::{FRAC_PI_4, FRAC_PI_8, PI, SQRT_2};

use num_traits::Float;

use crate::quad::{integrate_rhs_aux, AuxIntegral};
use crate::specfun::{
    digamma, dirichlet_beta, finite, gamma, hurwitz_zeta_combo,
    hurwitz_zeta_combo_derivative_at_zero, log_gamma, non_negative, positive, sinh_minus_sin_ratio,
    sinh_over_cosh, sinh_plus_sin_ratio,
};
use crate::{Error, Result};

/// `2π/√3`, the integral of `η(ix)`.
pub const INTEGRAL_OF_ETA: f64 = 3.627_598_728_468_435_7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClosedFormId {
    Eq5,
    Eq7,
    Eq8,
    Eq9,
    Eq10,
    Eq11,
    Eq13,
    Eq14,
    Eq16,
    Eq17,
    A1,
    A2,
    A3,
    A4,
    A5,
    A6,
    A7,
    A8,
    A9,
    A10,
    A11,
    A12,
    A13,
    A14,
    A15,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParamDomain {
    Positive,
    NonNegative,
    NonNegativeInteger,
}

impl ParamDomain {
    pub fn contains(self, v: f64) -> bool {
        v.is_finite()
            && match self {
                ParamDomain::Positive => v > 0.0,
                ParamDomain::NonNegative => v >= 0.0,
                ParamDomain::NonNegativeInteger => v >= 0.0 && v.fract() == 0.0,
            }
    }

    pub fn describe(self) -> &'static str {
        match self {
            ParamDomain::Positive => "(0, ∞)",
            ParamDomain::NonNegative => "[0, ∞)",
            ParamDomain::NonNegativeInteger => "{0, 1, 2, …}",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ParamSpec {
    pub name: &'static str,
    pub domain: ParamDomain,
}

const fn p(name: &'static str, domain: ParamDomain) -> ParamSpec {
    ParamSpec { name, domain }
}

const T: &[ParamSpec] = &[p("t", ParamDomain::NonNegative)];
const S: &[ParamSpec] = &[p("s", ParamDomain::Positive)];
const Y: &[ParamSpec] = &[p("y", ParamDomain::NonNegative)];
const Z: &[ParamSpec] = &[p("z", ParamDomain::NonNegative)];
const A0: &[ParamSpec] = &[p("a", ParamDomain::NonNegative)];
const A: &[ParamSpec] = &[p("a", ParamDomain::Positive)];
const B: &[ParamSpec] = &[p("b", ParamDomain::Positive)];
const NU: &[ParamSpec] = &[p("nu", ParamDomain::Positive)];
const N: &[ParamSpec] = &[p("n", ParamDomain::NonNegativeInteger)];

impl ClosedFormId {
    pub const ALL: [ClosedFormId; 25] = [
        ClosedFormId::Eq5,
        ClosedFormId::Eq7,
        ClosedFormId::Eq8,
        ClosedFormId::Eq9,
        ClosedFormId::Eq10,
        ClosedFormId::Eq11,
        ClosedFormId::Eq13,
        ClosedFormId::Eq14,
        ClosedFormId::Eq16,
        ClosedFormId::Eq17,
        ClosedFormId::A1,
        ClosedFormId::A2,
        ClosedFormId::A3,
        ClosedFormId::A4,
        ClosedFormId::A5,
        ClosedFormId::A6,
        ClosedFormId::A7,
        ClosedFormId::A8,
        ClosedFormId::A9,
        ClosedFormId::A10,
        ClosedFormId::A11,
        ClosedFormId::A12,
        ClosedFormId::A13,
        ClosedFormId::A14,
        ClosedFormId::A15,
    ];

    pub fn label(self) -> &'static str {
        use ClosedFormId::*;
        match self {
            Eq5 => "EQ5",
            Eq7 => "EQ7",
            Eq8 => "EQ8",
            Eq9 => "EQ9",
            Eq10 => "EQ10",
            Eq11 => "EQ11",
            Eq13 => "EQ13",
            Eq14 => "EQ14",
            Eq16 => "EQ16",
            Eq17 => "EQ17",
            A1 => "A1",
            A2 => "A2",
            A3 => "A3",
            A4 => "A4",
            A5 => "A5",
            A6 => "A6",
            A7 => "A7",
            A8 => "A8",
            A9 => "A9",
            A10 => "A10",
            A11 => "A11",
            A12 => "A12",
            A13 => "A13",
            A14 => "A14",
            A15 => "A15",
        }
    }

    /// Case-insensitive inverse of [`label`](Self::label).
    pub fn from_label(s: &str) -> Option<Self> {
        Self::ALL
            .into_iter()
            .find(|id| id.label().eq_ignore_ascii_case(s.trim()))
    }

    pub fn params(self) -> &'static [ParamSpec] {
        use ClosedFormId::*;
        match self {
            Eq5 => T,
            Eq7 => S,
            Eq8 | Eq10 | Eq14 | A1 | A6 | A11 | A12 => Y,
            Eq13 => Z,
            A2 | A4 | A5 => A0,
            A8 | A10 => A,
            A9 => B,
            A3 => NU,
            A15 => N,
            Eq9 | Eq11 | Eq16 | Eq17 | A7 | A13 | A14 => &[],
        }
    }
}

impl core::fmt::Display for ClosedFormId {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RhsMethod {
    ClosedForm,
    /// The right-hand side is itself an integral (weaker evidence).
    Quadrature,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RhsValue {
    pub value: f64,
    pub method: RhsMethod,
    pub err_est: f64,
    pub evals: usize,
}

impl RhsValue {
    fn exact(value: f64) -> Self {
        RhsValue {
            value,
            method: RhsMethod::ClosedForm,
            err_est: 0.0,
            evals: 0,
        }
    }
}

/// Evaluates the right-hand side of `id` at `params` (in the order of
/// [`ClosedFormId::params`]). `tol` only matters for quadrature-backed ids.
pub fn closed_form(id: ClosedFormId, params: &[f64], tol: f64) -> Result<RhsValue> {
    use ClosedFormId::*;
    let spec = id.params();
    if params.len() != spec.len() {
        return Err(Error::domain(
            "parameter count",
            params.len() as f64,
            "one per declared parameter",
        ));
    }
    for (ps, &v) in spec.iter().zip(params) {
        if !ps.domain.contains(v) {
            return Err(Error::domain(ps.name, v, ps.domain.describe()));
        }
    }
    let x = params.first().copied().unwrap_or(0.0);
    let value = match id {
        Eq5 => laplace_eta(x)?,
        Eq7 => mellin_eta(x)?,
        Eq8 => fourier_cos_eta(x)?,
        Eq10 => fourier_sin_eta(x)?,
        Eq9 | A13 => INTEGRAL_OF_ETA,
        Eq11 => FRAC_PI_4,
        Eq17 => FRAC_PI_8,
        Eq16 | A7 => SQRT_2 - 1.0,
        A14 => 1.0,
        Eq13 => 2.0 * PI * sech(PI * (2.0 * x).sqrt()),
        Eq14 | A1 => laplace_eta3(x)?,
        A3 => a3(x)?,
        A5 => sech((PI * x).sqrt()),
        A8 => cos_cosh_ratio((PI * x / 2.0).sqrt()),
        A9 => 4.0 / PI * (0.5 * (PI * x).sqrt()).tanh().atan(),
        A10 => a10(x)?,
        A11 => cos_cosh_ratio((PI * x / 2.0).sqrt()),
        A12 => sin_sinh_ratio((PI * x / 2.0).sqrt()),
        A15 => a15(x)?,
        A2 | A4 | A6 => {
            let which = match id {
                A2 => AuxIntegral::A2Rhs,
                A4 => AuxIntegral::A4Rhs,
                _ => AuxIntegral::A6Rhs,
            };
            let r = integrate_rhs_aux(which, x, tol)?;
            return Ok(RhsValue {
                value: r.value,
                method: RhsMethod::Quadrature,
                err_est: r.err_est,
                evals: r.evals,
            });
        }
    };
    Ok(RhsValue::exact(value))
}

/// `√(π/t) · sinh(2√(πt/3)) / cosh(√(3πt))`, extended by `2π/√3` at `t = 0`.
pub fn laplace_eta(t: f64) -> Result<f64> {
    let t = non_negative("t", t)?;
    if t == 0.0 {
        return Ok(INTEGRAL_OF_ETA);
    }
    let r = sinh_over_cosh(2.0 * (PI * t / 3.0).sqrt(), (3.0 * PI * t).sqrt());
    Ok((PI / t).sqrt() * r)
}

/// `8√3π / (16^s (3π)^s) · Γ(2s−1)/Γ(s) · Z(2s−1)` where `Z` is the signed
/// combination of Hurwitz zeta values at `1/12, 11/12, 5/12, 7/12`.
///
/// At `s = 1/2` the pole of `Γ(2s−1)` meets the zero of `Z`, and the product
/// is replaced by its limit `Z′(0)`.
pub fn mellin_eta(s: f64) -> Result<f64> {
    let s = positive("s", s)?;
    let prefactor = 8.0 * 3f64.sqrt() * PI / (16f64.powf(s) * (3.0 * PI).powf(s)) / gamma(s)?;
    let w = 2.0 * s - 1.0;
    let gamma_z = if w == 0.0 {
        hurwitz_zeta_combo_derivative_at_zero()
    } else if w.abs() < POLE_WINDOW {
        gamma(1.0 + w)? * z_over_w_near_zero(w)?
    } else if w.abs() < 1.0 {
        // Γ(w) = Γ(1+w)/w keeps the pole explicit
        gamma(1.0 + w)? * hurwitz_zeta_combo(w)? / w
    } else {
        gamma(w)? * hurwitz_zeta_combo(w)?
    };
    Ok(prefactor * gamma_z)
}

// Inside this window Z(w)/w is interpolated instead of divided out.
const POLE_WINDOW: f64 = 0.25;
const POLE_NODES: usize = 11;

/// `Z(w)/w` for `|w| < POLE_WINDOW`.
///
/// The quotient is entire, so barycentric interpolation on Chebyshev nodes
/// is accurate to rounding; the middle node is `w = 0`, where the exact
/// value `Z′(0)` is used, and the nearest other node sits at `|w| ≈ 0.07`,
/// so no sample divides by a tiny `w`.
fn z_over_w_near_zero(w: f64) -> Result<f64> {
    let n = POLE_NODES;
    let mut num = 0.0;
    let mut den = 0.0;
    for j in 0..n {
        let theta = (2 * j + 1) as f64 * PI / (2 * n) as f64;
        let node = if 2 * j + 1 == n {
            0.0
        } else {
            POLE_WINDOW * theta.cos()
        };
        let value = if node == 0.0 {
            hurwitz_zeta_combo_derivative_at_zero()
        } else {
            hurwitz_zeta_combo(node)? / node
        };
        let weight = if j % 2 == 0 { 1.0 } else { -1.0 } * theta.sin();
        let c = weight / (w - node);
        num += c * value;
        den += c;
    }
    Ok(num / den)
}

/// `√(π/(2y)) · (sinh u + sin u)/(cosh u + cos u)` with `u = √(8πy/3)`;
/// `2π/√3` at `y = 0`.
pub fn fourier_cos_eta(y: f64) -> Result<f64> {
    let y = non_negative("y", y)?;
    if y == 0.0 {
        return Ok(INTEGRAL_OF_ETA);
    }
    let u = (8.0 * PI * y / 3.0).sqrt();
    Ok((PI / (2.0 * y)).sqrt() * sinh_plus_sin_ratio(u))
}

/// As [`fourier_cos_eta`] with `sinh u − sin u`; 0 at `y = 0`.
pub fn fourier_sin_eta(y: f64) -> Result<f64> {
    let y = non_negative("y", y)?;
    if y == 0.0 {
        return Ok(0.0);
    }
    let u = (8.0 * PI * y / 3.0).sqrt();
    Ok((PI / (2.0 * y)).sqrt() * sinh_minus_sin_ratio(u))
}

/// `sech √(πy)`.
pub fn laplace_eta3(y: f64) -> Result<f64> {
    let y = non_negative("y", y)?;
    Ok(sech((PI * y).sqrt()))
}

fn sech(x: f64) -> f64 {
    let e = (-x.abs()).exp();
    2.0 * e / (1.0 + e * e)
}

// 4/π^ν · Γ(2ν)/Γ(ν) · β(2ν)
fn a3(nu: f64) -> Result<f64> {
    let ratio = (log_gamma(2.0 * nu)? - log_gamma(nu)?).exp();
    Ok(4.0 * PI.powf(-nu) * ratio * dirichlet_beta(2.0 * nu)?)
}

// (1/(π√a)) [ψ(½√(a/π) + ¾) − ψ(½√(a/π) + ¼)]
fn a10(a: f64) -> Result<f64> {
    let c = 0.5 * (a / PI).sqrt();
    Ok((digamma(c + 0.75)? - digamma(c + 0.25)?) / (PI * a.sqrt()))
}

// 4 n!/π^{n+1} · β(2n+1)
fn a15(n: f64) -> Result<f64> {
    let n = finite("n", n)?;
    let log_fact = log_gamma(n + 1.0)?;
    Ok(4.0 * (log_fact - (n + 1.0) * PI.ln()).exp() * dirichlet_beta(2.0 * n + 1.0)?)
}

/// `cosh v cos v / (sinh² v + cos² v) = 2 cos v cosh v / (cosh 2v + cos 2v)`,
/// scaled by `e^{−2v}` so it stays finite for large `v`.
fn cos_cosh_ratio(v: f64) -> f64 {
    let e = (-v).exp();
    let e2 = e * e;
    2.0 * v.cos() * e * (1.0 + e2) / (1.0 + e2 * e2 + 2.0 * e2 * (2.0 * v).cos())
}

/// `sinh v sin v / (sinh² v + cos² v)`.
fn sin_sinh_ratio(v: f64) -> f64 {
    let e = (-v).exp();
    let e2 = e * e;
    2.0 * v.sin() * e * (1.0 - e2) / (1.0 + e2 * e2 + 2.0 * e2 * (2.0 * v).cos())
}

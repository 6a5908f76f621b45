//! The pairing `∫ f(x) ηⁿ(ix) dx = ∫ F(t) K_n(t) dt`, where `F` is the
//! inverse Laplace transform of `f` and `K_n` is the Laplace transform of
//! `ηⁿ`:
//!
//! - `K_1(t) = √(π/t) · sinh(2√(πt/3)) / cosh(√(3πt))`
//! - `K_3(t) = sech √(πt)`
//!
//! Both sides are computed by quadrature so they can be compared.

use core::f64::consts::PI;

use num_traits::Float;

use crate::eta::EtaPower;
use crate::quad::{
    integrate, EtaFactor, KernelSpec, QuadResult, TailMethod, Weight, MAX_EVALS, MIN_TOL,
};
use crate::specfun::{positive, sinh_over_cosh};
use crate::{Error, Result};

/// Built-in `f ↔ F` pairs with a closed-form inverse Laplace transform.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InversePair {
    /// `f = 1/(x+a)`, `F = e^{−at}`
    Exp { a: f64 },
    /// `f = (x+a)^{−1/2}`, `F = e^{−at}/√(πt)`
    ExpOverSqrt { a: f64 },
    /// `f = Im (x − ia)^{−1/2}`, `F = sin(at)/√(πt)`
    SinOverSqrt { a: f64 },
}

impl InversePair {
    pub fn name(&self) -> &'static str {
        match self {
            InversePair::Exp { .. } => "exp",
            InversePair::ExpOverSqrt { .. } => "exp-over-sqrt",
            InversePair::SinOverSqrt { .. } => "sin-over-sqrt",
        }
    }

    pub fn param(&self) -> f64 {
        match *self {
            InversePair::Exp { a }
            | InversePair::ExpOverSqrt { a }
            | InversePair::SinOverSqrt { a } => a,
        }
    }

    /// `F(t)` for `t > 0`.
    pub fn inverse(&self, t: f64) -> f64 {
        match *self {
            InversePair::Exp { a } => (-a * t).exp(),
            InversePair::ExpOverSqrt { a } => (-a * t).exp() / (PI * t).sqrt(),
            InversePair::SinOverSqrt { a } => (a * t).sin() / (PI * t).sqrt(),
        }
    }

    /// `f` as a quadrature weight.
    pub fn image_weight(&self) -> Weight {
        match *self {
            InversePair::Exp { a } => Weight::ShiftedRecip {
                shift: a,
                power: 1.0,
            },
            InversePair::ExpOverSqrt { a } => Weight::ShiftedRecip {
                shift: a,
                power: 0.5,
            },
            InversePair::SinOverSqrt { a } => Weight::LaplaceSinSqrt(a),
        }
    }

    fn validate(&self) -> Result<()> {
        let a = self.param();
        match self {
            InversePair::SinOverSqrt { .. } => {
                positive("a", a)?;
            }
            _ => {
                if !(a >= 0.0 && a.is_finite()) {
                    return Err(Error::domain("a", a, "[0, ∞)"));
                }
            }
        }
        Ok(())
    }

    // √π · u · F(u²), with its bound c·u^p
    fn scaled_inverse(&self, u: f64) -> f64 {
        match *self {
            InversePair::Exp { a } => PI.sqrt() * u * (-a * u * u).exp(),
            InversePair::ExpOverSqrt { a } => (-a * u * u).exp(),
            InversePair::SinOverSqrt { a } => (a * u * u).sin(),
        }
    }

    fn scaled_inverse_bound(&self) -> (f64, f64) {
        match self {
            InversePair::Exp { .. } => (PI.sqrt(), 1.0),
            _ => (1.0, 0.0),
        }
    }
}

/// `∫₀^∞ f(x) ηⁿ(ix) dx`.
pub fn integrate_image(pair: InversePair, power: EtaPower, tol: f64) -> Result<QuadResult> {
    pair.validate()?;
    let kernel = KernelSpec::new(EtaFactor::from(power)).with(pair.image_weight());
    integrate(&kernel, tol)
}

/// `∫₀^∞ F(t) K_n(t) dt`, integrated in `u = √t`.
pub fn integrate_inverse(pair: InversePair, power: EtaPower, tol: f64) -> Result<QuadResult> {
    pair.validate()?;
    if tol.is_nan() || tol < MIN_TOL {
        return Err(Error::domain("tol", tol, "too small for double precision"));
    }
    // 2u F(u²) K(u²) = [√π u F(u²)] · [(2/√π) K(u²)]
    let kernel_part = |u: f64| -> f64 {
        match power {
            EtaPower::Three => {
                let e = (-PI.sqrt() * u).exp();
                (2.0 / PI.sqrt()) * 2.0 * e / (1.0 + e * e)
            }
            EtaPower::One => {
                if u == 0.0 {
                    4.0 * (PI / 3.0).sqrt()
                } else {
                    2.0 * sinh_over_cosh(2.0 * u * (PI / 3.0).sqrt(), u * (3.0 * PI).sqrt()) / u
                }
            }
        }
    };
    let f = |u: f64| pair.scaled_inverse(u) * kernel_part(u);

    // (2/√π)K ≤ (4/√π) e^{−√π u}  or  (2/u) e^{−√(π/3) u}
    let (ca, pa) = pair.scaled_inverse_bound();
    let (c, p, mu) = match power {
        EtaPower::Three => (ca * 4.0 / PI.sqrt(), pa, PI.sqrt()),
        EtaPower::One => (ca * 2.0, pa - 1.0, (PI / 3.0).sqrt()),
    };
    let tail = |x: f64| {
        let pp = p.max(0.0);
        (c.ln() + p * x.ln() - mu * x).exp() / (mu - pp / x)
    };
    let mut cutoff = 4.0;
    while tail(cutoff) > tol * 1e-6 {
        cutoff += 0.5;
    }
    let bound = tail(cutoff);
    let omega = match pair {
        InversePair::SinOverSqrt { a } => 2.0 * a * cutoff,
        _ => 0.0,
    };
    let breaks = crate::quad::breakpoints(0.0, cutoff, omega);
    let est = crate::quad::adaptive_sum(&f, &breaks, tol - bound, MAX_EVALS)?;
    Ok(QuadResult {
        value: est.value,
        err_est: est.err + bound,
        evals: est.evals,
        cutoff: cutoff * cutoff,
        tail_method: TailMethod::ExpBound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn both(pair: InversePair, power: EtaPower) -> (f64, f64) {
        let lhs = integrate_image(pair, power, 1e-12).unwrap().value;
        let rhs = integrate_inverse(pair, power, 1e-12).unwrap().value;
        (lhs, rhs)
    }

    #[test]
    fn pairs_agree_for_eta_cubed() {
        for pair in [
            InversePair::Exp { a: 1.0 },
            InversePair::ExpOverSqrt { a: 0.5 },
            InversePair::SinOverSqrt { a: 1.0 },
        ] {
            let (l, r) = both(pair, EtaPower::Three);
            assert!((l - r).abs() < 1e-10, "{pair:?}: {l} vs {r}");
        }
    }

    #[test]
    fn pairs_agree_for_eta() {
        for pair in [
            InversePair::Exp { a: 2.0 },
            InversePair::ExpOverSqrt { a: 1.0 },
        ] {
            let (l, r) = both(pair, EtaPower::One);
            assert!((l - r).abs() < 1e-10, "{pair:?}: {l} vs {r}");
        }
    }

    #[test]
    fn sin_pair_value() {
        let r =
            integrate_inverse(InversePair::SinOverSqrt { a: 1.0 }, EtaPower::Three, 1e-12).unwrap();
        assert!((r.value - (1.0 - 0.5f64.sqrt())).abs() < 1e-11, "{r:?}");
    }

    #[test]
    fn inverse_formula() {
        let p = InversePair::ExpOverSqrt { a: 2.0 };
        let t = 0.7;
        assert!((p.inverse(t) - (-1.4f64).exp() / (PI * t).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn bad_parameters() {
        assert!(
            integrate_inverse(InversePair::SinOverSqrt { a: 0.0 }, EtaPower::Three, 1e-10).is_err()
        );
        assert!(integrate_image(InversePair::Exp { a: -1.0 }, EtaPower::Three, 1e-10).is_err());
    }
}

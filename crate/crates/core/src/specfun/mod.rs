//! Special functions needed by the closed forms.
//!
//! Every routine is double precision with a fixed evaluation recipe, so
//! results are reproducible bit for bit. Accuracy targets:
//!
//! | function            | target                         |
//! |---------------------|--------------------------------|
//! | [`log_gamma`]       | relative 1e-13                 |
//! | [`digamma`]         | absolute 1e-12                 |
//! | [`hurwitz_zeta`]    | relative 1e-12 away from s = 1 |
//! | [`dirichlet_beta`]  | relative 1e-12                 |
//! | [`erf`] family      | absolute 1e-13                 |

mod elementary;
mod erf;
mod gamma;
mod zeta;

pub use elementary::{sinh_minus_sin_ratio, sinh_over_cosh, sinh_plus_sin_ratio};
pub use erf::{erf, erfc, erfc_scaled};
pub(crate) use erf::{erf_unchecked, erfc_scaled_unchecked};
pub use gamma::{digamma, gamma, log_gamma};
pub use zeta::{
    dirichlet_beta, hurwitz_zeta, hurwitz_zeta_combo, hurwitz_zeta_combo_derivative_at_zero,
};

use crate::{Error, Result};

/// Euler–Mascheroni constant γ.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// A finite real argument. NaN and infinities are rejected on construction.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct RealArg(f64);

impl RealArg {
    pub fn new(name: &'static str, value: f64) -> Result<Self> {
        if value.is_finite() {
            Ok(RealArg(value))
        } else {
            Err(Error::domain(name, value, "finite reals"))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

pub(crate) fn finite(name: &'static str, value: f64) -> Result<f64> {
    RealArg::new(name, value).map(RealArg::get)
}

pub(crate) fn positive(name: &'static str, value: f64) -> Result<f64> {
    let v = finite(name, value)?;
    if v > 0.0 {
        Ok(v)
    } else {
        Err(Error::domain(name, value, "(0, ∞)"))
    }
}

pub(crate) fn non_negative(name: &'static str, value: f64) -> Result<f64> {
    let v = finite(name, value)?;
    if v >= 0.0 {
        Ok(v)
    } else {
        Err(Error::domain(name, value, "[0, ∞)"))
    }
}

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_traits::Float;

use crate::eta::{eta_power, EtaPower};
use crate::specfun::{erf_unchecked, erfc_scaled_unchecked, finite};
use crate::{Error, Result};

/// Largest angular frequency accepted for `cos(yx)` / `sin(yx)` weights.
pub const MAX_FREQUENCY: f64 = 40.0;

/// Absolute accuracy requested from the eta series at each node.
const ETA_NODE_TOL: f64 = 1e-18;

/// One factor of the weight `f(x)` multiplying `ηⁿ(ix)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Weight {
    /// `x^{−s}`
    Power(f64),
    /// `e^{−yx}`
    Exp(f64),
    /// `cos(yx)`
    Cos(f64),
    /// `sin(yx)`
    Sin(f64),
    /// `e^{−a/x}`
    ExpRecip(f64),
    /// `cos(a/x)`
    CosRecip(f64),
    /// `erf(√(bx))`
    Erf(f64),
    /// `e^{a/x} erfc(√(a/x))`
    ScaledErfcRecip(f64),
    /// `(x + shift)^{−power}`
    ShiftedRecip { shift: f64, power: f64 },
    /// `√((√(x²+1) − 1)/(x²+1))`
    SqrtShift,
    /// `Im (x − ia)^{−1/2} = √((√(x²+a²) − x) / (2(x²+a²)))`, the Laplace
    /// transform of `sin(at)/√(πt)`.
    LaplaceSinSqrt(f64),
}

/// Which power of eta multiplies the weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EtaFactor {
    None,
    Eta,
    EtaCubed,
}

impl EtaFactor {
    pub fn power(self) -> Option<EtaPower> {
        match self {
            EtaFactor::None => None,
            EtaFactor::Eta => Some(EtaPower::One),
            EtaFactor::EtaCubed => Some(EtaPower::Three),
        }
    }

    pub fn exponent(self) -> u32 {
        self.power().map_or(0, EtaPower::exponent)
    }

    // ηⁿ(ix) ≤ e^{−κx}: q^{n/24} ∏(1−qᵏ)ⁿ ≤ q^{n/24}
    fn decay(self) -> f64 {
        f64::from(self.exponent()) * PI / 12.0
    }
}

impl From<EtaPower> for EtaFactor {
    fn from(p: EtaPower) -> Self {
        match p {
            EtaPower::One => EtaFactor::Eta,
            EtaPower::Three => EtaFactor::EtaCubed,
        }
    }
}

/// The integrand `scale · Π weights(x) · ηⁿ(ix)` on `(0, ∞)`.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelSpec {
    weights: Vec<Weight>,
    eta: EtaFactor,
    scale: f64,
}

/// `|g(x)| ≤ c · x^p · e^{−μx}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Majorant {
    pub c: f64,
    pub p: f64,
    pub mu: f64,
}

impl Majorant {
    /// Bound on `∫_X^∞ c x^p e^{−μx} dx`, valid once `μX > 2 max(p, 0)`.
    pub fn tail(&self, x: f64) -> f64 {
        let pp = self.p.max(0.0);
        if self.mu * x <= 2.0 * pp {
            return f64::INFINITY;
        }
        let log = self.c.ln() + self.p * x.ln() - self.mu * x;
        log.exp() / (self.mu - pp / x)
    }
}

impl KernelSpec {
    pub fn new(eta: EtaFactor) -> Self {
        KernelSpec {
            weights: Vec::new(),
            eta,
            scale: 1.0,
        }
    }

    #[must_use]
    pub fn with(mut self, w: Weight) -> Self {
        self.weights.push(w);
        self
    }

    #[must_use]
    pub fn scaled(mut self, c: f64) -> Self {
        self.scale *= c;
        self
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn eta(&self) -> EtaFactor {
        self.eta
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Checks every parameter and that the integral converges at both ends.
    pub fn validate(&self) -> Result<()> {
        finite("scale", self.scale)?;
        for w in &self.weights {
            validate_weight(w)?;
        }
        let tail = self.tail_majorant();
        if tail.mu <= 0.0 {
            return Err(Error::domain(
                "decay rate",
                tail.mu,
                "(0, ∞): kernel must decay",
            ));
        }
        if self.eta == EtaFactor::None {
            let (_, p0) = self.head_weight_majorant();
            if p0 >= 1.0 {
                return Err(Error::domain("singularity order at 0", p0, "(−∞, 1)"));
            }
        }
        Ok(())
    }

    /// The weight `f(x)` alone (including the scale).
    pub fn weight_at(&self, x: f64) -> f64 {
        self.weights
            .iter()
            .fold(self.scale, |acc, w| acc * eval_weight(w, x))
    }

    /// `f(x) · ηⁿ(ix)`.
    pub fn eval(&self, x: f64) -> f64 {
        let eta = match self.eta.power() {
            None => 1.0,
            Some(p) => match eta_power(x, p, ETA_NODE_TOL) {
                Ok(v) => v.value,
                Err(_) => return f64::NAN,
            },
        };
        if eta == 0.0 {
            return 0.0;
        }
        self.weight_at(x) * eta
    }

    /// Largest oscillation frequency among the weights.
    pub(crate) fn max_frequency(&self) -> f64 {
        self.weights
            .iter()
            .map(|w| match *w {
                Weight::Cos(y) | Weight::Sin(y) => y.abs(),
                _ => 0.0,
            })
            .fold(0.0, f64::max)
    }

    /// Majorant on `x ≥ 1`.
    pub(crate) fn tail_majorant(&self) -> Majorant {
        let mut m = Majorant {
            c: self.scale.abs(),
            p: 0.0,
            mu: self.eta.decay(),
        };
        for w in &self.weights {
            match *w {
                Weight::Power(s) => m.p -= s,
                Weight::Exp(y) => m.mu += y,
                Weight::ShiftedRecip { power, .. } => m.p -= power,
                Weight::SqrtShift => m.p -= 0.5,
                Weight::LaplaceSinSqrt(a) => {
                    m.c *= 0.5 * a;
                    m.p -= 1.5;
                }
                Weight::Cos(_)
                | Weight::Sin(_)
                | Weight::ExpRecip(_)
                | Weight::CosRecip(_)
                | Weight::Erf(_)
                | Weight::ScaledErfcRecip(_) => {}
            }
        }
        m
    }

    // |f(x)| ≤ c0 · x^{−p0} near 0
    fn head_weight_majorant(&self) -> (f64, f64) {
        let mut c0 = self.scale.abs();
        let mut p0 = 0.0;
        for w in &self.weights {
            match *w {
                Weight::Power(s) => p0 += s,
                Weight::ShiftedRecip { shift, power } => {
                    if shift > 0.0 {
                        c0 *= shift.powf(-power);
                    } else {
                        p0 += power;
                    }
                }
                Weight::LaplaceSinSqrt(a) => c0 /= (2.0 * a).sqrt(),
                _ => {}
            }
        }
        (c0, p0)
    }

    /// Bound on `∫_0^{x0} |g|` for small `x0`, using
    /// `ηⁿ(ix) ≤ x^{−n/2} e^{−nπ/(12x)}`.
    pub(crate) fn head_bound(&self, x0: f64) -> f64 {
        let (c0, p0) = self.head_weight_majorant();
        let n = f64::from(self.eta.exponent());
        if n == 0.0 {
            return c0 * x0.powf(1.0 - p0) / (1.0 - p0);
        }
        // the majorant is increasing on (0, x0] for these tiny x0
        let log = x0.ln() + c0.ln() - (p0 + 0.5 * n) * x0.ln() - n * PI / (12.0 * x0);
        log.exp()
    }
}

fn validate_weight(w: &Weight) -> Result<()> {
    match *w {
        Weight::Power(s) => {
            finite("s", s)?;
        }
        Weight::Exp(y) => nonneg("y", y)?,
        Weight::Cos(y) | Weight::Sin(y) => {
            nonneg("y", y)?;
            if y > MAX_FREQUENCY {
                return Err(Error::domain("y", y, "[0, 40]"));
            }
        }
        Weight::ExpRecip(a) | Weight::CosRecip(a) | Weight::ScaledErfcRecip(a) => nonneg("a", a)?,
        Weight::Erf(b) => nonneg("b", b)?,
        Weight::ShiftedRecip { shift, power } => {
            nonneg("a", shift)?;
            nonneg("p", power)?;
        }
        Weight::SqrtShift => {}
        Weight::LaplaceSinSqrt(a) => {
            if finite("a", a)? <= 0.0 {
                return Err(Error::domain("a", a, "(0, ∞)"));
            }
        }
    }
    Ok(())
}

fn nonneg(name: &'static str, v: f64) -> Result<()> {
    if finite(name, v)? >= 0.0 {
        Ok(())
    } else {
        Err(Error::domain(name, v, "[0, ∞)"))
    }
}

fn eval_weight(w: &Weight, x: f64) -> f64 {
    match *w {
        Weight::Power(s) => x.powf(-s),
        Weight::Exp(y) => (-y * x).exp(),
        Weight::Cos(y) => (y * x).cos(),
        Weight::Sin(y) => (y * x).sin(),
        Weight::ExpRecip(a) => (-a / x).exp(),
        Weight::CosRecip(a) => (a / x).cos(),
        Weight::Erf(b) => erf_unchecked((b * x).sqrt()),
        Weight::ScaledErfcRecip(a) => erfc_scaled_unchecked((a / x).sqrt()),
        Weight::ShiftedRecip { shift, power } => (x + shift).powf(-power),
        Weight::SqrtShift => {
            let r2 = x * x + 1.0;
            // √(x²+1) − 1 = x² / (√(x²+1) + 1)
            let num = x * x / (r2.sqrt() + 1.0);
            (num / r2).sqrt()
        }
        Weight::LaplaceSinSqrt(a) => {
            let r2 = x * x + a * a;
            let r = r2.sqrt();
            let num = if x > 0.0 { a * a / (r + x) } else { r - x };
            (num / (2.0 * r2)).sqrt()
        }
    }
}

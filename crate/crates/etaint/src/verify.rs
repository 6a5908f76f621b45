//! The identity registry and the engine that checks each identity by
//! comparing a quadrature of its left-hand side with its closed form.

use std::collections::BTreeMap;
use std::f64::consts::{PI, SQRT_2};
use std::time::Instant;

use etaint_core::transform::{integrate_image, integrate_inverse, InversePair};
use etaint_core::{
    closed_form, integrate, integrate_glaisher, ClosedFormId, Error as CoreError, EtaFactor,
    EtaPower, Glaisher, KernelSpec, QuadResult, RhsMethod, Weight,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::report::{Record, Report, Suite, Totals};
use crate::Error;

/// Default tolerance for identities without parameters.
pub const CONSTANT_TOL: f64 = 1e-10;
/// Default tolerance for parametric identities.
pub const PARAMETRIC_TOL: f64 = 1e-9;
/// The left-hand side is integrated this much tighter than the check.
pub const QUAD_HEADROOM: f64 = 10.0;

/// How the left-hand side of an identity is computed.
#[derive(Debug, Clone, PartialEq)]
pub enum Lhs {
    Kernel(KernelSpec),
    Glaisher(Glaisher),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExpectedStatus {
    Pass,
    Flagged,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Flagged,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Flagged => "flagged",
        }
    }
}

#[derive(Debug, Clone)]
pub struct IdentitySpec {
    pub id: ClosedFormId,
    /// Builds the left-hand side for one parameter point.
    pub lhs: fn(&[f64]) -> Lhs,
    pub param_grid: Vec<Vec<f64>>,
    pub tol: f64,
    pub expected_status: ExpectedStatus,
    pub notes: &'static str,
    pub anchor: &'static str,
}

impl IdentitySpec {
    /// Checks a parameter point against the closed form's domain and the
    /// kernel's own constraints, without integrating anything.
    pub fn check_point(&self, params: &[f64]) -> Result<(), Error> {
        let spec = self.id.params();
        if params.len() != spec.len() {
            return Err(Error::Usage(format!(
                "{} takes {} parameter(s) ({}), got {}",
                self.id,
                spec.len(),
                param_names(self.id),
                params.len()
            )));
        }
        for (ps, &v) in spec.iter().zip(params) {
            if !ps.domain.contains(v) {
                return Err(Error::Usage(format!(
                    "{}: parameter {}={} outside {}",
                    self.id,
                    ps.name,
                    v,
                    ps.domain.describe()
                )));
            }
        }
        if let Lhs::Kernel(k) = (self.lhs)(params) {
            k.validate()
                .map_err(|e| Error::Usage(format!("{}: {e}", self.id)))?;
        }
        Ok(())
    }
}

fn param_names(id: ClosedFormId) -> String {
    let names: Vec<_> = id.params().iter().map(|p| p.name).collect();
    if names.is_empty() {
        "none".into()
    } else {
        names.join(", ")
    }
}

fn eta() -> KernelSpec {
    KernelSpec::new(EtaFactor::Eta)
}

fn eta3() -> KernelSpec {
    KernelSpec::new(EtaFactor::EtaCubed)
}

fn first(p: &[f64]) -> f64 {
    p.first().copied().unwrap_or(0.0)
}

fn grid(values: &[f64]) -> Vec<Vec<f64>> {
    values.iter().map(|&v| vec![v]).collect()
}

fn spec(
    id: ClosedFormId,
    lhs: fn(&[f64]) -> Lhs,
    points: &[f64],
    anchor: &'static str,
) -> IdentitySpec {
    let param_grid = if id.params().is_empty() {
        vec![Vec::new()]
    } else {
        grid(points)
    };
    IdentitySpec {
        id,
        lhs,
        tol: if id.params().is_empty() {
            CONSTANT_TOL
        } else {
            PARAMETRIC_TOL
        },
        param_grid,
        expected_status: ExpectedStatus::Pass,
        notes: "",
        anchor,
    }
}

impl IdentitySpec {
    fn flagged(mut self, notes: &'static str) -> Self {
        self.expected_status = ExpectedStatus::Flagged;
        self.notes = notes;
        self
    }

    fn note(mut self, notes: &'static str) -> Self {
        self.notes = notes;
        self
    }
}

/// Every identity with its default parameter grid.
pub fn default_registry() -> Vec<IdentitySpec> {
    use ClosedFormId::*;
    let y_osc = [0.5, 1.0, 5.0, 20.0];
    let y_lap = [0.1, 1.0, PI, 10.0];
    let a3 = [0.25, 1.0, 4.0];
    vec![
        spec(
            Eq5,
            |p| Lhs::Kernel(eta().with(Weight::Exp(first(p)))),
            &[0.1, 1.0, 3.0 * PI, 10.0],
            "EQ5: ∫₀^∞ e^{−xt} η(ix) dx = √(π/t) sinh(2√(πt/3)) / cosh√(3πt)",
        ),
        spec(
            Eq7,
            |p| Lhs::Kernel(eta().with(Weight::Power(first(p)))),
            &[0.25, 0.5, 0.75, 1.0, 1.5, 2.0],
            "EQ7: ∫₀^∞ x^{−s} η(ix) dx = 8√3π/(16^s (3π)^s) · Γ(2s−1)/Γ(s) · \
             [ζ(2s−1,1/12) + ζ(2s−1,11/12) − ζ(2s−1,5/12) − ζ(2s−1,7/12)]",
        )
        .note("s = 1/2 takes the Γ-pole/Z-zero limit Z′(0) = ln(2+√3); s = 1 takes the digamma limit of Z(1)"),
        spec(
            Eq8,
            |p| Lhs::Kernel(eta().with(Weight::Cos(first(p)))),
            &y_osc,
            "EQ8: ∫₀^∞ cos(xy) η(ix) dx = √(π/2y) (sinh u + sin u)/(cosh u + cos u), u = √(8πy/3)",
        )
        .flagged(
            "closed form as stated does not match the integral (confirmed independently at 30 digits); \
             the integral equals Re L(iy) with L the Laplace transform of η(ix)",
        ),
        spec(
            Eq9,
            |_| Lhs::Kernel(eta()),
            &[],
            "EQ9: ∫₀^∞ η(ix) dx = 2π/√3",
        ),
        spec(
            Eq10,
            |p| Lhs::Kernel(eta().with(Weight::Sin(first(p)))),
            &y_osc,
            "EQ10: ∫₀^∞ sin(xy) η(ix) dx = √(π/2y) (sinh u − sin u)/(cosh u + cos u), u = √(8πy/3)",
        )
        .flagged(
            "closed form as stated does not match the integral (confirmed independently at 30 digits); \
             the integral equals −Im L(iy) with L the Laplace transform of η(ix)",
        ),
        spec(
            Eq11,
            |_| Lhs::Glaisher(Glaisher::Eq11),
            &[],
            "EQ11: ∫₀^∞ (sinh x − sin x)/(x²(cosh x + cos x)) dx = π/4",
        )
        .note("no eta factor; the tail beyond the cutoff X is added as 1/X"),
        spec(
            Eq13,
            |p| {
                Lhs::Kernel(
                    eta3()
                        .with(Weight::Exp(2.0 * PI * first(p)))
                        .scaled(2.0 * PI),
                )
            },
            &[0.25, 1.0, 4.0],
            "EQ13: ∫₀¹ q^{z−1} η³ dq = 2π/cosh(π√(2z))",
        )
        .note("checked in x-space as 2π ∫₀^∞ e^{−2πzx} η³(ix) dx"),
        spec(
            Eq14,
            |p| Lhs::Kernel(eta3().with(Weight::Exp(first(p)))),
            &y_lap,
            "EQ14: ∫₀^∞ e^{−xy} η³(ix) dx = sech√(πy)",
        ),
        spec(
            Eq16,
            |_| Lhs::Kernel(eta3().with(Weight::SqrtShift)),
            &[],
            "EQ16: ∫₀^∞ √((√(x²+1)−1)/(x²+1)) e^{−πx/4} ∏(1−e^{−2πnx})³ dx = √2 − 1",
        )
        .note("the product index as stated starts at n = 0, which vanishes identically; the integrand is taken as η³(ix)"),
        spec(
            Eq17,
            |_| Lhs::Glaisher(Glaisher::Eq17),
            &[],
            "EQ17: ∫₀^∞ sinh(x/2) sin(x/2)/(x(cosh x + cos x)) dx = π/8",
        )
        .note("no eta factor; the integrand behaves like x/8 at 0, so it is extended by 0 there"),
        spec(
            A1,
            |p| Lhs::Kernel(eta3().with(Weight::Exp(first(p)))),
            &y_lap,
            "A1: ∫₀^∞ e^{−xy} η³(ix) dx = sech√(πy)",
        ),
        spec(
            A2,
            |p| {
                Lhs::Kernel(eta3().with(Weight::ShiftedRecip {
                    shift: first(p),
                    power: 1.0,
                }))
            },
            &[0.5, 1.0, 4.0],
            "A2: ∫₀^∞ η³(ix)/(x+a) dx = (2/π) ∫₀^∞ x e^{−ax²/π}/cosh x dx",
        )
        .note("right-hand side is an integral, computed by quadrature (weaker evidence)"),
        spec(
            A3,
            |p| Lhs::Kernel(eta3().with(Weight::Power(first(p)))),
            &[0.5, 1.0, 1.5, 3.0],
            "A3: ∫₀^∞ x^{−ν} η³(ix) dx = 4/π^ν · Γ(2ν)/Γ(ν) · β(2ν)",
        ),
        spec(
            A4,
            |p| {
                Lhs::Kernel(eta3().with(Weight::ShiftedRecip {
                    shift: first(p),
                    power: 0.5,
                }))
            },
            &[0.5, 1.0, 4.0],
            "A4: ∫₀^∞ η³(ix)/√(x+a) dx = (2/π) ∫₀^∞ e^{−ax²/π}/cosh x dx",
        )
        .note("right-hand side is an integral, computed by quadrature (weaker evidence)"),
        spec(
            A5,
            |p| {
                Lhs::Kernel(
                    eta3()
                        .with(Weight::Power(0.5))
                        .with(Weight::ExpRecip(first(p))),
                )
            },
            &a3,
            "A5: ∫₀^∞ x^{−1/2} e^{−a/x} η³(ix) dx = sech√(πa)",
        ),
        spec(
            A6,
            |p| {
                Lhs::Kernel(
                    eta3()
                        .with(Weight::Exp(first(p)))
                        .with(Weight::Power(1.0)),
                )
            },
            &[0.0, 0.5, 1.0, 4.0],
            "A6: ∫₀^∞ e^{−xy} η³(ix) dx/x = (2/π) ∫_{√(πy)}^∞ x sech x dx",
        )
        .note("right-hand side is an integral, computed by quadrature (weaker evidence)"),
        spec(
            A7,
            |_| Lhs::Kernel(eta3().with(Weight::SqrtShift)),
            &[],
            "A7: ∫₀^∞ √((√(x²+1)−1)/(x²+1)) η³(ix) dx = √2 − 1",
        ),
        spec(
            A8,
            |p| {
                Lhs::Kernel(
                    eta3()
                        .with(Weight::Power(0.5))
                        .with(Weight::CosRecip(first(p))),
                )
            },
            &a3,
            "A8: ∫₀^∞ x^{−1/2} cos(a/x) η³(ix) dx = 2 cos√(πa/2) cosh√(πa/2) / (cos√(2πa) + cosh√(2πa))",
        ),
        spec(
            A9,
            |p| {
                Lhs::Kernel(
                    eta3()
                        .with(Weight::Power(0.5))
                        .with(Weight::Erf(first(p))),
                )
            },
            &[0.25, 1.0, 4.0],
            "A9: ∫₀^∞ x^{−1/2} erf(√(bx)) η³(ix) dx = (4/π) arctan(tanh(½√(πb)))",
        ),
        spec(
            A10,
            |p| {
                Lhs::Kernel(
                    eta3()
                        .with(Weight::Power(0.5))
                        .with(Weight::ScaledErfcRecip(first(p))),
                )
            },
            &a3,
            "A10: ∫₀^∞ x^{−1/2} e^{a/x} erfc(√(a/x)) η³(ix) dx = \
             (1/(π√a)) [ψ(½√(a/π) + ¾) − ψ(½√(a/π) + ¼)]",
        )
        .flagged(
            "closed form as stated fails both asymptotic checks (a → 0: integral → 1, formula ~ 1/√a; \
             a → ∞: integral ~ (πa)^{−1/2}, formula ~ 1/(a√π)); reported, not repaired",
        ),
        spec(
            A11,
            |p| Lhs::Kernel(eta3().with(Weight::Cos(first(p)))),
            &y_osc,
            "A11: ∫₀^∞ cos(xy) η³(ix) dx = cosh v cos v / (sinh²v + cos²v), v = √(πy/2)",
        ),
        spec(
            A12,
            |p| Lhs::Kernel(eta3().with(Weight::Sin(first(p)))),
            &y_osc,
            "A12: ∫₀^∞ sin(xy) η³(ix) dx = sinh v sin v / (sinh²v + cos²v), v = √(πy/2)",
        ),
        spec(
            A13,
            |_| Lhs::Kernel(eta()),
            &[],
            "A13: ∫₀^∞ η(ix) dx = 2π/√3",
        ),
        spec(
            A14,
            |_| Lhs::Kernel(eta3()),
            &[],
            "A14: ∫₀^∞ η³(ix) dx = 1",
        ),
        spec(
            A15,
            |p| Lhs::Kernel(eta3().with(Weight::Power(-first(p)))),
            &[0.0, 1.0, 2.0, 3.0],
            "A15: ∫₀^∞ xⁿ η³(ix) dx = 4 n!/π^{n+1} · β(2n+1)",
        )
        .flagged(
            "closed form as stated is low by the factor 4ⁿ for n ≥ 1 (confirmed independently at 30 digits); \
             n = 0 agrees",
        ),
    ]
}

/// Looks up an identity by label in the default registry.
pub fn find(id: ClosedFormId) -> IdentitySpec {
    default_registry()
        .into_iter()
        .find(|s| s.id == id)
        .expect("registry covers every id")
}

/// Quadrature of a left-hand side.
pub fn compute_lhs(lhs: &Lhs, tol: f64) -> Result<QuadResult, CoreError> {
    match lhs {
        Lhs::Kernel(k) => integrate(k, tol.max(etaint_core::quad::MIN_TOL)),
        Lhs::Glaisher(g) => integrate_glaisher(*g, tol.max(etaint_core::quad::MIN_TOL_GLAISHER)),
    }
}

/// Pass iff `|residual| ≤ max(tol, 10·err_est)`.
pub fn classify(expected: ExpectedStatus, abs_residual: f64, err_est: f64, tol: f64) -> Status {
    if expected == ExpectedStatus::Flagged {
        Status::Flagged
    } else if abs_residual <= tol.max(10.0 * err_est) {
        Status::Pass
    } else {
        Status::Fail
    }
}

/// Verifies one identity at one parameter point.
pub fn verify_identity(spec: &IdentitySpec, params: &[f64], tol_override: Option<f64>) -> Record {
    let tol = tol_override.unwrap_or(spec.tol);
    let start = Instant::now();
    let names = spec.id.params();
    let params_map: BTreeMap<String, f64> = names
        .iter()
        .zip(params)
        .map(|(p, &v)| (p.name.to_string(), v))
        .collect();
    let mut diagnostic = None;

    let lhs = match compute_lhs(&(spec.lhs)(params), tol / QUAD_HEADROOM) {
        Ok(r) => Some((r.value, r.err_est, r.evals)),
        Err(CoreError::NonConvergence {
            value,
            err_est,
            evals,
        }) => {
            diagnostic = Some(format!(
                "quadrature budget exhausted after {evals} evaluations (err_est {err_est:.3e})"
            ));
            Some((value, err_est, evals))
        }
        Err(CoreError::BelowRoundingFloor {
            value,
            err_est,
            tol,
            evals,
        }) => {
            diagnostic = Some(format!(
                "tolerance {tol:.3e} is below the rounding floor of the quadrature (err_est {err_est:.3e})"
            ));
            Some((value, err_est, evals))
        }
        Err(e) => {
            diagnostic = Some(format!("left-hand side: {e}"));
            None
        }
    };
    let rhs = match closed_form(spec.id, params, tol / QUAD_HEADROOM) {
        Ok(r) => Some(r),
        Err(e) => {
            diagnostic.get_or_insert_with(|| format!("right-hand side: {e}"));
            None
        }
    };

    let (lhs_value, lhs_err, mut evals) = lhs.unwrap_or((0.0, 0.0, 0));
    let (rhs_value, rhs_method) = rhs
        .map(|r| {
            evals += r.evals;
            (r.value, r.method)
        })
        .unwrap_or((0.0, RhsMethod::ClosedForm));
    let abs_residual = (lhs_value - rhs_value).abs();
    let rel_residual = if rhs_value != 0.0 {
        abs_residual / rhs_value.abs()
    } else {
        abs_residual
    };
    let mut status = classify(spec.expected_status, abs_residual, lhs_err, tol);
    if (lhs.is_none() || rhs.is_none()) && status == Status::Pass {
        status = Status::Fail;
    }
    if diagnostic.is_some() && status == Status::Pass {
        status = Status::Fail;
    }
    Record {
        id: spec.id.label().to_string(),
        params: params_map,
        lhs: lhs_value,
        lhs_err,
        rhs: rhs_value,
        abs_residual,
        rel_residual,
        status,
        evals,
        ms: start.elapsed().as_secs_f64() * 1e3,
        rhs_method: match rhs_method {
            RhsMethod::ClosedForm => "closed-form",
            RhsMethod::Quadrature => "rhs-by-quadrature",
        }
        .to_string(),
        diagnostic,
    }
}

/// Runs every `(identity, grid point)` pair. Records come back in registry
/// order whatever the number of worker threads.
pub fn run_suite(
    registry: &[IdentitySpec],
    tol_override: Option<f64>,
    jobs: Option<usize>,
) -> Result<Report, Error> {
    let started_at = chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Millis, true);
    let start = Instant::now();
    let work: Vec<(&IdentitySpec, &[f64])> = registry
        .iter()
        .flat_map(|s| s.param_grid.iter().map(move |p| (s, p.as_slice())))
        .collect();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = jobs {
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::Usage(format!("--jobs: {e}")))?;
    let records: Vec<Record> = pool.install(|| {
        work.par_iter()
            .map(|(s, p)| verify_identity(s, p, tol_override))
            .collect()
    });
    let totals = Totals::from_records(&records, start.elapsed().as_secs_f64() * 1e3);
    Ok(Report {
        suite: Suite {
            tol: tol_override,
            started_at,
            totals,
        },
        records,
    })
}

/// A built-in inverse-Laplace pair and the identity it re-derives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairSpec {
    pub id: ClosedFormId,
    pub pair: InversePair,
    pub power: EtaPower,
    /// Factor turning the pair's integral into the identity's value.
    pub scale: f64,
}

/// The three pairs behind A2, A4 and A7, each at `a = 1`.
///
/// For A7 the sin pair gives `∫ Im(x−i)^{−1/2} η³(ix) dx`; mapping
/// `x → 1/x` with `η³(i/x) = x^{3/2} η³(ix)` turns that kernel into the A7
/// kernel divided by `√2`.
pub fn builtin_pairs() -> [PairSpec; 3] {
    [
        PairSpec {
            id: ClosedFormId::A2,
            pair: InversePair::Exp { a: 1.0 },
            power: EtaPower::Three,
            scale: 1.0,
        },
        PairSpec {
            id: ClosedFormId::A4,
            pair: InversePair::ExpOverSqrt { a: 1.0 },
            power: EtaPower::Three,
            scale: 1.0,
        },
        PairSpec {
            id: ClosedFormId::A7,
            pair: InversePair::SinOverSqrt { a: 1.0 },
            power: EtaPower::Three,
            scale: SQRT_2,
        },
    ]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairRecord {
    pub id: String,
    pub pair: String,
    pub a: f64,
    /// `∫ f ηⁿ dx`
    pub image: f64,
    /// `∫ F K_n dt`
    pub inverse: f64,
    /// `scale · inverse`, the pair's value for the identity
    pub reproduced: f64,
    /// The identity's right-hand side
    pub reference: f64,
    pub abs_residual: f64,
    pub err_est: f64,
    pub status: Status,
}

/// Checks both sides of the inverse-Laplace pairing and compares the
/// result with the identity's right-hand side.
pub fn transform_pair_check(spec: &PairSpec, tol: f64) -> Result<PairRecord, Error> {
    let quad_tol = tol / QUAD_HEADROOM;
    let image = integrate_image(spec.pair, spec.power, quad_tol)?;
    let inverse = integrate_inverse(spec.pair, spec.power, quad_tol)?;
    let params: Vec<f64> = if spec.id.params().is_empty() {
        Vec::new()
    } else {
        vec![spec.pair.param()]
    };
    let reference = closed_form(spec.id, &params, quad_tol)?;
    let reproduced = spec.scale * inverse.value;
    let abs_residual = (reproduced - reference.value)
        .abs()
        .max((image.value - inverse.value).abs() * spec.scale);
    let err_est = spec.scale * (image.err_est + inverse.err_est) + reference.err_est;
    Ok(PairRecord {
        id: spec.id.label().to_string(),
        pair: spec.pair.name().to_string(),
        a: spec.pair.param(),
        image: image.value,
        inverse: inverse.value,
        reproduced,
        reference: reference.value,
        abs_residual,
        err_est,
        status: classify(ExpectedStatus::Pass, abs_residual, err_est, tol),
    })
}

use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument is NaN, infinite, or outside the function's domain.
    #[error("{name} = {value} is outside the domain {domain}")]
    Domain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },
    #[error("pole of the Hurwitz zeta function at s = 1")]
    Pole,
    #[error("term budget of {budget} exhausted before reaching tolerance {tol:e}")]
    ToleranceUnreachable { tol: f64, budget: usize },
    /// The adaptive integrator ran out of evaluations. The partial result is
    /// kept so callers can still report it.
    #[error("quadrature did not converge after {evals} evaluations (value {value}, error estimate {err_est:e})")]
    NonConvergence {
        value: f64,
        err_est: f64,
        evals: usize,
    },
    /// The rounding floor of the rule alone exceeds the requested absolute
    /// tolerance (the integral is too large for it in double precision).
    #[error("tolerance {tol:e} is below the rounding floor of the quadrature (error estimate {err_est:e}, value {value:e})")]
    BelowRoundingFloor {
        value: f64,
        err_est: f64,
        tol: f64,
        evals: usize,
    },
}

impl Error {
    pub(crate) fn domain(name: &'static str, value: f64, domain: &'static str) -> Self {
        Error::Domain {
            name,
            value,
            domain,
        }
    }
}

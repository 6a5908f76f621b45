//! Numerics for integrals of the Dedekind eta function on the positive
//! imaginary axis.
//!
//! The crate is `no_std` and needs only `alloc`. It provides
//!
//! - [`specfun`]: log-gamma, digamma, Hurwitz zeta with analytic
//!   continuation, Dirichlet beta and the error-function family;
//! - [`eta`]: `η(ix)` and `η³(ix)` from their q-series with an explicit
//!   truncation bound, plus the product form as an oracle;
//! - [`quad`]: a 15/7-point nested adaptive integrator specialised to
//!   integrands `f(x)·ηⁿ(ix)` over `[0, ∞)`;
//! - [`closed_forms`]: the right-hand sides of every identity, built from
//!   [`specfun`] alone;
//! - [`transform`]: the inverse-Laplace pairing that turns `∫ f·ηⁿ` into
//!   an integral of `F(t)` against the Laplace transform of `ηⁿ`.
//!
//! Everything is pure and reentrant.
#![no_std]
// whenever std is in the build graph (tests, dev-dependencies) its inherent
// float methods shadow num_traits::Float and the imports look unused
#![allow(unused_imports)]
#![cfg_attr(test, allow(clippy::excessive_precision))]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod closed_forms;
mod error;
pub mod eta;
pub mod quad;
pub mod specfun;
pub mod transform;

pub use closed_forms::{closed_form, ClosedFormId, ParamDomain, ParamSpec, RhsMethod, RhsValue};
pub use error::{Error, Result};
pub use eta::{eta, eta_cubed, eta_product, EtaPath, EtaPower, EtaValue};
pub use quad::{
    integrate, integrate_glaisher, integrate_rhs_aux, AuxIntegral, EtaFactor, Glaisher, KernelSpec,
    QuadResult, TailMethod, Weight,
};
pub use specfun::RealArg;

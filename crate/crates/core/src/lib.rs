//! Numerics for the inverse tangent integral `Ti₂` and the machinery around it.
//!
//! The crate is organised bottom-up:
//!
//! * [`numerics`]: adaptive Gauss–Kronrod quadrature with declared endpoint
//!   limits, bracketed root finding for increasing functions and tail-bounded
//!   series summation.
//! * [`polylog`]: principal-branch complex dilogarithm and Clausen's `Cl₂`.
//! * [`special`]: Hurwitz zeta, `Ei(−x)`, `ln Γ`, the cotangent partial
//!   fraction sum, Kummer's sine-log series and a Catalan reference value.
//! * [`ti2core`]: every evaluator of `Ti₂` itself.
//! * [`endpoint`]: the auxiliary integral `I(a, b)`, the endpoint function
//!   `φ_a(b)`, admissibility and the endpoint solve `b(a)`.
//! * [`decomp`]: the cotangent pole decomposition of `Ti₂(A/α)` and the
//!   Hurwitz/exponential-integral representation of Catalan's constant.
//! * [`report`] and [`verify`]: residual reports and the named identity runner.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod decomp;
pub mod endpoint;
mod error;
pub mod numerics;
pub mod polylog;
pub mod report;
pub mod special;
pub mod ti2core;
pub mod verify;

pub use error::{Error, Result};
pub use numerics::{QuadratureResult, RootResult, SeriesResult};
pub use polylog::ComplexValue;
pub use report::IdentityReport;
pub use ti2core::Ti2Method;

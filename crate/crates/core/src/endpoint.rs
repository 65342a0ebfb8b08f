//! The tunable-endpoint representation of `Ti₂(a)`.
//!
//! For `a > 0` and `0 < b < π` the auxiliary integral
//! `I(a, b) = ∫₀^b arctan((a + cos β)/sin β) dβ` has the closed form
//! `F(a, b) = πb/2 − b²/2 + φ_a(b)` with `φ_a(b) = −Li₂(−a) + Re Li₂(−a e^{ib})`.
//! When `0 < ψ(a) < φ_a(π)`, where `ψ(a) = Im Li₂(1 + ia)`, the equation
//! `φ_a(b) = ψ(a)` has a unique root `b(a)` and
//! `Ti₂(a) = arctan(a) ln a + I(a, b) − πb/2 + b²/2 − (π/4) ln(1 + a²)`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, LN_2, PI};

use crate::error::{domain, Error, Result};
use crate::numerics::{
    find_root_increasing, find_root_increasing_newton, integrate_adaptive, EndpointLimits,
    QuadratureResult, RootResult,
};
use crate::polylog::{li2, li2_real, li2_upper_boundary, ComplexValue};
use crate::report::IdentityReport;
use crate::ti2core::{ti2, Ti2Method};

/// Margin for the strict inequalities `0 < ψ(a) < φ_a(π)`.
pub const ADMISSIBILITY_MARGIN: f64 = 1e-12;

/// Default tolerance on `|φ_a(b) − ψ(a)|`.
pub const DEFAULT_SOLVE_TOL: f64 = 1e-12;

/// Default quadrature tolerance for `I(a, b)`.
pub const DEFAULT_QUADRATURE_TOL: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdmissibilityResult {
    pub a: f64,
    pub psi: f64,
    pub phi_pi: f64,
    pub admissible: bool,
    /// One of the inequalities holds only within [`ADMISSIBILITY_MARGIN`].
    pub boundary: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EndpointSolution {
    pub a: f64,
    pub b: f64,
    pub residual: f64,
    pub iterations: usize,
}

fn check_a(a: f64, what: &str) -> Result<()> {
    if a > 0.0 && a.is_finite() {
        Ok(())
    } else {
        domain(format!("{what} needs a > 0, got {a}"))
    }
}

fn check_open_b(b: f64, what: &str) -> Result<()> {
    if b > 0.0 && b < PI {
        Ok(())
    } else {
        domain(format!("{what} needs 0 < b < pi, got {b}"))
    }
}

/// Limit of the integrand `arctan((a + cos β)/sin β)` as `β → π⁻`.
pub fn integrand_limit_at_pi(a: f64) -> f64 {
    if a < 1.0 {
        -FRAC_PI_2
    } else if a == 1.0 {
        0.0
    } else {
        FRAC_PI_2
    }
}

/// `I(a, b)` by adaptive quadrature.
pub fn aux_integral_i(a: f64, b: f64, tol: f64) -> Result<QuadratureResult> {
    check_a(a, "aux_integral_i")?;
    check_open_b(b, "aux_integral_i")?;
    let f = move |beta: f64| (a + beta.cos()).atan2(beta.sin());
    integrate_adaptive(f, 0.0, b, EndpointLimits::new(FRAC_PI_2, f(b)), tol)
}

/// `F(a, b) = πb/2 − b²/2 − Li₂(−a) + Re Li₂(−a e^{ib})`.
pub fn aux_closed_f(a: f64, b: f64) -> Result<f64> {
    check_a(a, "aux_closed_f")?;
    check_open_b(b, "aux_closed_f")?;
    Ok(PI * b / 2.0 - b * b / 2.0 + phi(a, b)?)
}

/// `∂I/∂a = ln((1 + a)² / (1 + 2a cos b + a²)) / (2a)`.
pub fn aux_integral_da(a: f64, b: f64) -> Result<f64> {
    check_a(a, "aux_integral_da")?;
    check_open_b(b, "aux_integral_da")?;
    Ok(((1.0 + a).powi(2) / (1.0 + 2.0 * a * b.cos() + a * a)).ln() / (2.0 * a))
}

/// `ψ(a) = Im Li₂(1 + ia)`.
pub fn psi(a: f64) -> Result<f64> {
    check_a(a, "psi")?;
    Ok(li2(ComplexValue::new(1.0, a))?.im)
}

/// `φ_a(π) = Re Li₂(a) − Li₂(−a)`, using the boundary value of `Li₂` when `a > 1`.
pub fn phi_at_pi(a: f64) -> Result<f64> {
    check_a(a, "phi_at_pi")?;
    let re = if a <= 1.0 {
        li2_real(a)?
    } else {
        li2_upper_boundary(a)?.re
    };
    Ok(re - li2_real(-a)?)
}

/// `φ_a(b) = −Li₂(−a) + Re Li₂(−a e^{ib})` on `[0, π]`.
pub fn phi(a: f64, b: f64) -> Result<f64> {
    check_a(a, "phi")?;
    if !(0.0..=PI).contains(&b) {
        return domain(format!("phi needs 0 <= b <= pi, got {b}"));
    }
    if b == 0.0 {
        return Ok(0.0);
    }
    if b == PI {
        return phi_at_pi(a);
    }
    let z = ComplexValue::from_polar(a, b) * -1.0;
    Ok(li2(z)?.re - li2_real(-a)?)
}

/// `φ′_a(b) = Arg(1 + a e^{ib})`.
pub fn phi_derivative(a: f64, b: f64) -> Result<f64> {
    check_a(a, "phi_derivative")?;
    check_open_b(b, "phi_derivative")?;
    Ok((a * b.sin()).atan2(1.0 + a * b.cos()))
}

pub fn admissibility(a: f64) -> Result<AdmissibilityResult> {
    let psi = psi(a)?;
    let phi_pi = phi_at_pi(a)?;
    let lower = psi > ADMISSIBILITY_MARGIN;
    let upper = phi_pi - psi > ADMISSIBILITY_MARGIN;
    let boundary = (!lower && psi.abs() <= ADMISSIBILITY_MARGIN)
        || (!upper && (phi_pi - psi).abs() <= ADMISSIBILITY_MARGIN);
    Ok(AdmissibilityResult {
        a,
        psi,
        phi_pi,
        admissible: lower && upper,
        boundary,
    })
}

/// Admissibility at each grid point, in input order.
pub fn scan_admissibility(grid: &[f64]) -> Result<Vec<AdmissibilityResult>> {
    grid.iter().map(|&a| admissibility(a)).collect()
}

fn require_admissible(a: f64) -> Result<AdmissibilityResult> {
    let adm = admissibility(a)?;
    if adm.admissible {
        Ok(adm)
    } else {
        Err(Error::Inadmissible {
            a,
            psi: adm.psi,
            phi_pi: adm.phi_pi,
        })
    }
}

fn solution(a: f64, root: RootResult) -> EndpointSolution {
    EndpointSolution {
        a,
        b: root.x,
        residual: root.residual,
        iterations: root.iterations,
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 {
        Ok(())
    } else {
        domain(format!("tolerance must be positive, got {tol}"))
    }
}

/// The unique `b ∈ (0, π)` with `φ_a(b) = ψ(a)`, by safeguarded Newton.
pub fn solve_endpoint_b(a: f64, tol: f64) -> Result<EndpointSolution> {
    check_tol(tol)?;
    let adm = require_admissible(a)?;
    let g = |b: f64| phi(a, b).unwrap_or(f64::NAN);
    let dg = |b: f64| (a * b.sin()).atan2(1.0 + a * b.cos());
    let root = find_root_increasing_newton(g, dg, 0.0, PI, adm.psi, tol)?;
    Ok(solution(a, root))
}

/// [`solve_endpoint_b`] with bisection only.
pub fn solve_endpoint_b_bisection(a: f64, tol: f64) -> Result<EndpointSolution> {
    check_tol(tol)?;
    let adm = require_admissible(a)?;
    let root = find_root_increasing(|b| phi(a, b).unwrap_or(f64::NAN), 0.0, PI, adm.psi, tol)?;
    Ok(solution(a, root))
}

/// Compares `Ti₂(a)` with the endpoint representation, evaluating `I(a, b(a))`
/// by quadrature.
pub fn theorem1_identity(a: f64, tol: f64) -> Result<IdentityReport> {
    let sol = solve_endpoint_b(a, DEFAULT_SOLVE_TOL)?;
    let b = sol.b;
    let integral = aux_integral_i(a, b, DEFAULT_QUADRATURE_TOL)?;
    let lhs = ti2(a)?;
    let rhs = a.atan() * a.ln() + integral.value - PI * b / 2.0 + b * b / 2.0
        - FRAC_PI_4 * (a * a).ln_1p();
    Ok(IdentityReport::new("theorem1", lhs, rhs, tol)
        .param("a", a)
        .param("b", b)
        .methods(Ti2Method::for_argument(a).tag(), "endpoint-quadrature")
        .terms(integral.evaluations))
}

/// `G = b(1)²/4 − (π/4) ln 2`, with `b(1)` solved against `ψ(1)` from `Li₂(1 + i)`.
pub fn catalan_via_endpoint(tol: f64) -> Result<f64> {
    let sol = solve_endpoint_b(1.0, tol)?;
    Ok(sol.b * sol.b / 4.0 - FRAC_PI_4 * LN_2)
}

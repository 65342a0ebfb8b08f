//! Evaluators of the inverse tangent integral `Ti₂(y) = ∫₀^y arctan(x)/x dx`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::fmt;

use crate::error::{domain, Result};
use crate::numerics::{integrate_adaptive, CompensatedSum, EndpointLimits};
use crate::polylog::{clausen2, li2, ComplexValue};

const SERIES_RADIUS: f64 = 0.99;
const QUADRATURE_TOL: f64 = 1e-13;
const CLAUSEN_MARGIN: f64 = 1e-6;

/// Which route produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ti2Method {
    Series,
    ImaginaryDilog,
    Quadrature,
    PropositionForm,
    ClausenForm,
}

impl Ti2Method {
    pub fn tag(self) -> &'static str {
        match self {
            Ti2Method::Series => "series",
            Ti2Method::ImaginaryDilog => "imaginary-dilog",
            Ti2Method::Quadrature => "quadrature",
            Ti2Method::PropositionForm => "proposition-form",
            Ti2Method::ClausenForm => "clausen-form",
        }
    }

    /// The route [`ti2`] takes for argument `y`.
    pub fn for_argument(y: f64) -> Self {
        if y.abs() <= SERIES_RADIUS {
            Ti2Method::Series
        } else {
            Ti2Method::ImaginaryDilog
        }
    }
}

impl fmt::Display for Ti2Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

fn power_series(y: f64) -> f64 {
    let y2 = y * y;
    let mut sum = CompensatedSum::new();
    let mut power = y;
    let mut n = 0usize;
    loop {
        let d = (2 * n + 1) as f64;
        let term = power / (d * d);
        if n.is_multiple_of(2) {
            sum.add(term);
        } else {
            sum.add(-term);
        }
        if term < 1e-18 * y {
            break;
        }
        power *= y2;
        n += 1;
    }
    sum.value()
}

/// `Ti₂(y)`: the power series for `|y| ≤ 0.99`, `Im Li₂(iy)` beyond.
pub fn ti2(y: f64) -> Result<f64> {
    if !y.is_finite() {
        return domain(format!("ti2 needs a finite argument, got {y}"));
    }
    if y == 0.0 {
        return Ok(0.0);
    }
    if y < 0.0 {
        return Ok(-ti2(-y)?);
    }
    if y <= SERIES_RADIUS {
        Ok(power_series(y))
    } else {
        Ok(li2(ComplexValue::new(0.0, y))?.im)
    }
}

/// `Ti₂(y)` by adaptive quadrature of its defining integral.
pub fn ti2_via_quadrature(y: f64) -> Result<f64> {
    if !(y >= 0.0) || !y.is_finite() {
        return domain(format!("ti2_via_quadrature needs y >= 0, got {y}"));
    }
    if y == 0.0 {
        return Ok(0.0);
    }
    let limits = EndpointLimits::new(1.0, y.atan() / y);
    let q = integrate_adaptive(|x| x.atan() / x, 0.0, y, limits, QUADRATURE_TOL)?;
    Ok(q.value)
}

/// `arctan(a) ln a + Im Li₂(1 + ia) − (π/4) ln(1 + a²)`.
pub fn ti2_proposition_form(a: f64) -> Result<f64> {
    if !(a > 0.0) || !a.is_finite() {
        return domain(format!("ti2_proposition_form needs a > 0, got {a}"));
    }
    let psi = li2(ComplexValue::new(1.0, a))?.im;
    Ok(a.atan() * a.ln() + psi - FRAC_PI_4 * (a * a).ln_1p())
}

/// `θ ln tan θ + ½Cl₂(2θ) + ½Cl₂(π − 2θ)`, which equals `Ti₂(tan θ)`.
pub fn ti2_clausen_form(theta: f64) -> Result<f64> {
    if !(CLAUSEN_MARGIN..=FRAC_PI_2 - CLAUSEN_MARGIN).contains(&theta) {
        return domain(format!(
            "ti2_clausen_form needs theta in [{CLAUSEN_MARGIN}, pi/2 - {CLAUSEN_MARGIN}], got {theta}"
        ));
    }
    let log_tan = if theta == FRAC_PI_4 {
        0.0
    } else {
        theta.tan().ln()
    };
    Ok(theta * log_tan + 0.5 * clausen2(2.0 * theta)? + 0.5 * clausen2(PI - 2.0 * theta)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    const G: f64 = 0.915_965_594_177_219;

    #[test]
    fn special_values() {
        assert_eq!(ti2(0.0).unwrap(), 0.0);
        assert!((ti2(1.0).unwrap() - G).abs() < 1e-15);
        assert!((ti2(0.5).unwrap() - 0.487_222_358_294_522_4).abs() < 1e-15);
        assert_eq!(ti2(-1.0).unwrap(), -ti2(1.0).unwrap());
        assert!(ti2(f64::NAN).is_err());
    }

    #[test]
    fn series_edge_matches_dilog() {
        let s = power_series(SERIES_RADIUS);
        let d = li2(ComplexValue::new(0.0, SERIES_RADIUS)).unwrap().im;
        assert!((s - d).abs() < 1e-14);
    }

    #[test]
    fn method_tags() {
        assert_eq!(Ti2Method::for_argument(0.5), Ti2Method::Series);
        assert_eq!(Ti2Method::for_argument(-3.0), Ti2Method::ImaginaryDilog);
        assert_eq!(Ti2Method::ClausenForm.to_string(), "clausen-form");
    }

    #[test]
    fn quadrature_route() {
        assert_eq!(ti2_via_quadrature(0.0).unwrap(), 0.0);
        assert!((ti2_via_quadrature(1.0).unwrap() - G).abs() < 1e-10);
        let dilog = li2(ComplexValue::new(0.0, 3.0)).unwrap().im;
        assert!((ti2_via_quadrature(3.0).unwrap() - dilog).abs() < 1e-10);
        assert!(ti2_via_quadrature(-1.0).is_err());
    }

    #[test]
    fn proposition_form() {
        assert!((ti2_proposition_form(1.0).unwrap() - G).abs() < 1e-14);
        assert!(ti2_proposition_form(1e-12).unwrap().abs() < 1e-11);
        let q = ti2_via_quadrature(2.0).unwrap();
        assert!((ti2_proposition_form(2.0).unwrap() - q).abs() < 1e-10);
        assert!(ti2_proposition_form(0.0).is_err());
    }

    #[test]
    fn clausen_form() {
        assert!((ti2_clausen_form(FRAC_PI_4).unwrap() - G).abs() < 1e-14);
        for theta in [PI / 6.0, PI / 8.0, PI / 12.0, PI / 3.0] {
            let direct = ti2(theta.tan()).unwrap();
            assert!(
                (ti2_clausen_form(theta).unwrap() - direct).abs() < 1e-10,
                "theta = {theta}"
            );
        }
        assert!(ti2_clausen_form(0.0).is_err());
        assert!(ti2_clausen_form(FRAC_PI_2).is_err());
    }
}

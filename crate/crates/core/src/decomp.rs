//! Pole decomposition of `arctan(x/α)` and its consequences.
//!
//! From the partial fractions of `cot(α + ix)`,
//! `arctan(x/α) = arctan(cot α · tanh x) + Σ_{k≥1} Ξ_k(x)` with
//! `Ξ_k(x) = arctan(2αx / (x² + (kπ)² − α²))`. Dividing by `x` and integrating
//! over `[0, A]` gives
//! `Ti₂(A/α) = H(A, α) + Σ_k [Ti₂(A/(kπ − α)) − Ti₂(A/(kπ + α))]`, where
//! `H(A, α) = ∫₀^A arctan(cot α · tanh x)/x dx`. Taking `A = α = π/n` yields a
//! family of series for Catalan's constant, and the Fourier expansion of the
//! principal term leads to a Hurwitz zeta representation of `G`.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{domain, Error, Result};
use crate::numerics::{integrate_adaptive, CompensatedSum, EndpointLimits, SeriesResult};
use crate::report::IdentityReport;
use crate::special::{
    catalan_reference, cot_partial_fraction_sum, ei_negative, hurwitz_zeta, kummer_sine_log_series,
    log_gamma, EULER_GAMMA,
};
use crate::ti2core::{ti2, Ti2Method};

/// Distance from a multiple of π below which `α` counts as a pole.
pub const POLE_MARGIN: f64 = 1e-10;

/// Tolerance for the pointwise decomposition on top of its tail bound.
pub const POINTWISE_TOL: f64 = 1e-12;

const H_QUADRATURE_TOL: f64 = 1e-13;
const EI_TAIL_TARGET: f64 = 1e-15;

/// Validated parameters of the pole decomposition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecompParams {
    pub alpha: f64,
    pub a: f64,
    pub k: usize,
    pub j: usize,
    pub n: usize,
}

impl DecompParams {
    pub fn new(alpha: f64, a: f64, k: usize, j: usize, n: usize) -> Result<Self> {
        check_alpha(alpha)?;
        check_upper(a)?;
        if k == 0 || j == 0 || n == 0 {
            return domain("truncation indices K, J and N must be at least 1");
        }
        Ok(Self { alpha, a, k, j, n })
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !alpha.is_finite() {
        return domain(format!("alpha must be finite, got {alpha}"));
    }
    if (alpha - (alpha / PI).round() * PI).abs() < POLE_MARGIN {
        return Err(Error::Pole(alpha));
    }
    if !(alpha > 0.0 && alpha < PI) {
        return domain(format!("alpha must lie in (0, pi), got {alpha}"));
    }
    Ok(())
}

fn check_upper(a: f64) -> Result<()> {
    if a > 0.0 && a.is_finite() {
        Ok(())
    } else {
        domain(format!("A must be positive, got {a}"))
    }
}

fn check_count(name: &str, value: usize) -> Result<()> {
    if value >= 1 {
        Ok(())
    } else {
        domain(format!("{name} must be at least 1"))
    }
}

fn cot(alpha: f64) -> f64 {
    if alpha == FRAC_PI_2 {
        0.0
    } else {
        1.0 / alpha.tan()
    }
}

/// `Ξ_k(x) = arctan(2αx / (x² + (kπ)² − α²))`.
pub fn xi_k(k: usize, alpha: f64, x: f64) -> Result<f64> {
    check_count("k", k)?;
    check_alpha(alpha)?;
    if !(x >= 0.0) || !x.is_finite() {
        return domain(format!("xi_k needs x >= 0, got {x}"));
    }
    let kpi = k as f64 * PI;
    Ok((2.0 * alpha * x / (x * x + kpi * kpi - alpha * alpha)).atan())
}

/// Checks `arctan(x/α) = arctan(cot α · tanh x) + Σ_{k≤K} Ξ_k(x)` against the
/// tail bound `2αx/(π²K)`.
pub fn pointwise_identity(alpha: f64, x: f64, k: usize) -> Result<IdentityReport> {
    check_count("K", k)?;
    check_alpha(alpha)?;
    if !(x >= 0.0) || !x.is_finite() {
        return domain(format!("pointwise_identity needs x >= 0, got {x}"));
    }
    let lhs = (x / alpha).atan();
    let mut sum = CompensatedSum::new();
    for j in (1..=k).rev() {
        sum.add(xi_k(j, alpha, x)?);
    }
    sum.add((cot(alpha) * x.tanh()).atan());
    let tail = 2.0 * alpha * x / (PI * PI * k as f64);
    Ok(
        IdentityReport::new("pointwise", lhs, sum.value(), POINTWISE_TOL)
            .param("alpha", alpha)
            .param("x", x)
            .param("K", k as f64)
            .tail(tail)
            .methods("arctan", "pole-decomposition")
            .terms(k),
    )
}

/// `H(A, α) = ∫₀^A arctan(cot α · tanh x)/x dx` by quadrature.
pub fn h_quadrature(a: f64, alpha: f64) -> Result<f64> {
    check_upper(a)?;
    check_alpha(alpha)?;
    let c = cot(alpha);
    if c == 0.0 {
        return Ok(0.0);
    }
    let f = move |x: f64| (c * x.tanh()).atan() / x;
    let q = integrate_adaptive(f, 0.0, a, EndpointLimits::new(c, f(a)), H_QUADRATURE_TOL)?;
    Ok(q.value)
}

/// Smallest `J` with `e^{−2JA} < 1e−14`.
pub fn default_h_terms(a: f64) -> usize {
    ((7.0 * 10f64.ln() / a).ceil() as usize).max(1)
}

/// Bound on `Σ_{j>J} |Ei(−2jA)|/j`.
pub fn ei_tail_bound(a: f64, j: usize) -> f64 {
    let next = (j + 1) as f64;
    (-2.0 * next * a).exp() / (2.0 * next * next * a) / (1.0 - (-2.0 * a).exp())
}

// −Σ_{j≤J} sin(2jα)/j · Ei(−2jA), smallest terms first.
fn ei_fourier_sum(a: f64, alpha: f64, terms: usize) -> Result<f64> {
    let mut sum = CompensatedSum::new();
    for j in (1..=terms).rev() {
        let jf = j as f64;
        sum.add(-(2.0 * jf * alpha).sin() / jf * ei_negative(2.0 * jf * a)?);
    }
    Ok(sum.value())
}

/// `H(A, α)` from the Fourier expansion of `arctan(cot α · tanh x)`.
///
/// Integrating termwise gives `−Σ_j sin(2jα)/j · T(2jA)`. Splitting
/// `T(ξ) = Ei(−ξ) − γ − ln ξ`, the logarithmic parts sum in closed form to
/// `(γ + ln 2A)(π/2 − α)` plus Kummer's series at `α/π`, so only the
/// exponentially small `Ei` part is truncated at `J`.
pub fn h_series(a: f64, alpha: f64, terms: usize) -> Result<SeriesResult> {
    check_upper(a)?;
    check_alpha(alpha)?;
    check_count("J", terms)?;
    let closed =
        (EULER_GAMMA + (2.0 * a).ln()) * (FRAC_PI_2 - alpha) + kummer_sine_log_series(alpha / PI)?;
    Ok(SeriesResult {
        value: ei_fourier_sum(a, alpha, terms)? + closed,
        terms_used: terms,
        tail_bound: ei_tail_bound(a, terms),
        truncated: false,
    })
}

/// Checks `Ti₂(A/α) = H(A, α) + Σ_{k≤K} [Ti₂(A/(kπ−α)) − Ti₂(A/(kπ+α))]`
/// with tail bound `2αA/(π²K)`.
pub fn corollary2_series(a: f64, alpha: f64, k: usize, tol: f64) -> Result<IdentityReport> {
    check_upper(a)?;
    check_alpha(alpha)?;
    check_count("K", k)?;
    let lhs = ti2(a / alpha)?;
    let h = h_series(a, alpha, default_h_terms(a))?;
    let mut sum = CompensatedSum::new();
    for j in (1..=k).rev() {
        let kpi = j as f64 * PI;
        sum.add(ti2(a / (kpi - alpha))? - ti2(a / (kpi + alpha))?);
    }
    sum.add(h.value);
    let tail = 2.0 * alpha * a / (PI * PI * k as f64) + h.tail_bound;
    Ok(IdentityReport::new("corollary2", lhs, sum.value(), tol)
        .param("A", a)
        .param("alpha", alpha)
        .param("K", k as f64)
        .tail(tail)
        .methods(Ti2Method::for_argument(a / alpha).tag(), "pole-series")
        .terms(k))
}

/// `Σ_{k≤K} [Ti₂(1/(2k−1)) − Ti₂(1/(2k+1))]`, which telescopes to `G − Ti₂(1/(2K+1))`.
pub fn remark1_partial(k: usize) -> Result<f64> {
    check_count("K", k)?;
    let mut sum = CompensatedSum::new();
    for j in (1..=k).rev() {
        let jf = j as f64;
        sum.add(ti2(1.0 / (2.0 * jf - 1.0))? - ti2(1.0 / (2.0 * jf + 1.0))?);
    }
    Ok(sum.value())
}

/// `G` against `remark1_partial(K) + Ti₂(1/(2K+1))`.
pub fn remark1_identity(k: usize, tol: f64) -> Result<IdentityReport> {
    let partial = remark1_partial(k)?;
    let rhs = partial + ti2(1.0 / (2.0 * k as f64 + 1.0))?;
    Ok(
        IdentityReport::new("remark1", catalan_reference(1e-15)?, rhs, tol)
            .param("K", k as f64)
            .methods("catalan-reference", "telescoped-series")
            .terms(k),
    )
}

/// `G ≈ H(π/n, π/n) + Σ_{k≤K} [Ti₂(1/(nk−1)) − Ti₂(1/(nk+1))]` with tail `2/(n²K)`.
pub fn catalan_family(n: usize, k: usize, tol: f64) -> Result<IdentityReport> {
    if n < 2 {
        return domain(format!("catalan_family needs n >= 2, got {n}"));
    }
    check_count("K", k)?;
    let alpha = PI / n as f64;
    let (h, h_tail) = if n == 2 {
        (0.0, 0.0)
    } else {
        let s = h_series(alpha, alpha, default_h_terms(alpha))?;
        (s.value, s.tail_bound)
    };
    let nf = n as f64;
    let mut sum = CompensatedSum::new();
    for j in (1..=k).rev() {
        let m = nf * j as f64;
        sum.add(ti2(1.0 / (m - 1.0))? - ti2(1.0 / (m + 1.0))?);
    }
    sum.add(h);
    let tail = 2.0 / (nf * nf * k as f64) + h_tail;
    Ok(
        IdentityReport::new("corollary3", catalan_reference(1e-15)?, sum.value(), tol)
            .param("n", nf)
            .param("K", k as f64)
            .tail(tail)
            .methods("catalan-reference", "pole-series")
            .terms(k),
    )
}

/// `S_r = Σ_{k≥1} [(kπ − 1)^{−r} − (kπ + 1)^{−r}]` for odd `r`.
///
/// `S₁ = 1 − cot 1` through the cotangent partial fractions; for `r ≥ 3`,
/// `S_r = π^{−r} [ζ(r, 1 − 1/π) − ζ(r, 1 + 1/π)]`.
pub fn s_r(r: u32) -> Result<f64> {
    if r.is_multiple_of(2) {
        return domain(format!("S_r needs odd r, got {r}"));
    }
    if r == 1 {
        return Ok(2.0 * cot_partial_fraction_sum(1.0)?);
    }
    let s = f64::from(r);
    let inv = 1.0 / PI;
    Ok(PI.powi(-(r as i32)) * (hurwitz_zeta(s, 1.0 - inv)? - hurwitz_zeta(s, 1.0 + inv)?))
}

/// Smallest `J` whose `Ei` tail bound at `A = 1` is below `1e−15`.
pub fn k1_terms() -> usize {
    (1..)
        .find(|&j| ei_tail_bound(1.0, j) < EI_TAIL_TARGET)
        .expect("the bound decays")
}

/// `K(1) = H(1, 1) = −Σ sin(2j)/j · Ei(−2j) + π ln Γ(1/π) + (1 − π/2) ln π − (π/2) ln(π / sin 1)`.
pub fn k1_closed_series(terms: usize) -> Result<SeriesResult> {
    check_count("J", terms)?;
    let closed = PI * log_gamma(1.0 / PI)? + (1.0 - FRAC_PI_2) * PI.ln()
        - FRAC_PI_2 * (PI / 1f64.sin()).ln();
    Ok(SeriesResult {
        value: ei_fourier_sum(1.0, 1.0, terms)? + closed,
        terms_used: terms,
        tail_bound: ei_tail_bound(1.0, terms),
        truncated: false,
    })
}

pub fn k1_closed() -> f64 {
    k1_closed_series(k1_terms())
        .expect("fixed arguments are in range")
        .value
}

/// Terms `(−1)ⁿ S_{2n+1}/(2n+1)²` for `n = 1..=N`, which sum with `K(1) + S₁` to `G`.
pub fn lemma1_terms(n_max: usize) -> Result<Vec<f64>> {
    (1..=n_max)
        .map(|n| {
            let r = 2 * n + 1;
            let rf = r as f64;
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            Ok(sign * s_r(r as u32)? / (rf * rf))
        })
        .collect()
}

/// `G = K(1) + S₁ + Σ_{n≥1} (−1)ⁿ S_{2n+1}/(2n+1)²`, truncated at `N` and `J`.
pub fn lemma1_catalan(n_max: usize, j: usize, tol: f64) -> Result<IdentityReport> {
    check_count("N", n_max)?;
    let k1 = k1_closed_series(j)?;
    let mut sum = CompensatedSum::new();
    for t in lemma1_terms(n_max)?.into_iter().rev() {
        sum.add(t);
    }
    sum.add(s_r(1)?);
    sum.add(k1.value);
    let next = (2 * n_max + 3) as f64;
    let tail = s_r(2 * n_max as u32 + 3)? / (next * next) + k1.tail_bound;
    Ok(
        IdentityReport::new("lemma1", catalan_reference(1e-15)?, sum.value(), tol)
            .param("N", n_max as f64)
            .param("J", j as f64)
            .tail(tail)
            .methods("catalan-reference", "hurwitz-ei-series")
            .terms(n_max),
    )
}

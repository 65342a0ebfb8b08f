//! Real special functions: Hurwitz zeta, the exponential integral on the
//! negative axis, `ln Γ`, the cotangent partial-fraction sum, Kummer's
//! sine-log series and a reference value of Catalan's constant.

use std::f64::consts::PI;

use crate::error::{domain, Error, Result};
use crate::numerics::CompensatedSum;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Smallest tolerance accepted by [`catalan_reference`].
pub const CATALAN_TOL_FLOOR: f64 = 1e-15;

const EI_SERIES_CUTOFF: f64 = 6.0;

/// `B₂ⱼ / (2j)!` for `j = 1..=6`.
const EM_CORRECTIONS: [f64; 6] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30_240.0,
    -1.0 / 1_209_600.0,
    1.0 / 47_900_160.0,
    -691.0 / 1_307_674_368_000.0,
];

/// Stirling coefficients `B₂ₖ / (2k(2k − 1))` for `k = 1..=8`.
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

/// Validated arguments of the Hurwitz zeta function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HurwitzArgs {
    s: f64,
    c: f64,
}

impl HurwitzArgs {
    pub fn new(s: f64, c: f64) -> Result<Self> {
        if !(s > 1.0) || !s.is_finite() {
            return domain(format!("hurwitz_zeta needs s > 1, got {s}"));
        }
        if !(c > 0.0) || !c.is_finite() {
            return domain(format!("hurwitz_zeta needs c > 0, got {c}"));
        }
        Ok(Self { s, c })
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// `ζ(s, c)` together with the magnitude of the first omitted
    /// Euler–Maclaurin correction.
    pub fn evaluate(&self) -> (f64, f64) {
        let Self { s, c } = *self;
        let m = 16 * (c.ceil() as usize) + 32;
        let mut head = CompensatedSum::new();
        for k in (0..m).rev() {
            head.add((k as f64 + c).powf(-s));
        }
        let x = c + m as f64;
        let xs = x.powf(-s);
        let mut tail = x * xs / (s - 1.0) + 0.5 * xs;
        // Rising factorial s(s+1)…(s+2j−2) times x^{−s−2j+1}.
        let mut factor = s * xs / x;
        for (j, coef) in EM_CORRECTIONS.iter().enumerate() {
            tail += coef * factor;
            let a = s + (2 * j + 1) as f64;
            factor *= a * (a + 1.0) / (x * x);
        }
        // Next correction uses B₁₄/14! = 7/6 / 14!.
        let bound = (7.0 / 6.0 / 87_178_291_200.0 * factor).abs();
        head.add(tail);
        (head.value(), bound)
    }
}

/// `ζ(s, c) = Σ_{k≥0} (k + c)^{−s}` for `s > 1`, `c > 0`.
pub fn hurwitz_zeta(s: f64, c: f64) -> Result<f64> {
    Ok(HurwitzArgs::new(s, c)?.evaluate().0)
}

fn ei_negative_series(x: f64) -> f64 {
    EULER_GAMMA + x.ln() + t_series(x)
}

// Σ_{n≥1} (−x)ⁿ / (n · n!)
fn t_series(x: f64) -> f64 {
    let mut sum = CompensatedSum::new();
    let mut power = 1.0;
    for n in 1..200 {
        let n = f64::from(n);
        power *= -x / n;
        let term = power / n;
        sum.add(term);
        if term.abs() < 1e-18 * sum.value().abs().max(1e-300) {
            break;
        }
    }
    sum.value()
}

// E₁(x) by the modified Lentz continued fraction; returns Ei(−x) = −E₁(x).
fn ei_negative_continued_fraction(x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut b = x + 1.0;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..1000 {
        let an = -f64::from(i) * f64::from(i);
        b += 2.0;
        d = an * d + b;
        if d.abs() < TINY {
            d = TINY;
        }
        c = b + an / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = c * d;
        h *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    -h * (-x).exp()
}

/// `Ei(−x)` for `x > 0`; always negative with `|Ei(−x)| ≤ e^{−x}/x`.
pub fn ei_negative(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return domain(format!("ei_negative needs x > 0, got {x}"));
    }
    if x <= EI_SERIES_CUTOFF {
        Ok(ei_negative_series(x))
    } else {
        Ok(ei_negative_continued_fraction(x))
    }
}

/// `T(ξ) = ∫₀¹ (e^{−ξx} − 1)/x dx = Ei(−ξ) − γ − ln ξ` for `ξ > 0`.
///
/// Small arguments use the series directly, which avoids the cancellation in
/// `Ei(−ξ) − γ − ln ξ`.
pub fn expint_t(xi: f64) -> Result<f64> {
    if !(xi > 0.0) || !xi.is_finite() {
        return domain(format!("expint_t needs xi > 0, got {xi}"));
    }
    if xi <= EI_SERIES_CUTOFF {
        Ok(t_series(xi))
    } else {
        Ok(ei_negative_continued_fraction(xi) - EULER_GAMMA - xi.ln())
    }
}

/// `Σ_{k≥1} 1/((kπ)² − b²) = 1/(2b²) − cot(b)/(2b)`.
pub fn cot_partial_fraction_sum(b: f64) -> Result<f64> {
    if !b.is_finite() {
        return domain(format!("cot_partial_fraction_sum needs finite b, got {b}"));
    }
    let m = (b / PI).round();
    if (b - m * PI).abs() < 1e-10 {
        return Err(Error::Pole(b));
    }
    Ok(0.5 / (b * b) - b.cos() / (2.0 * b * b.sin()))
}

/// `ln Γ(x)` for `x > 0` via upward recursion to `x ≥ 10` and Stirling's series.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return domain(format!("log_gamma needs x > 0, got {x}"));
    }
    if x == 1.0 || x == 2.0 {
        return Ok(0.0);
    }
    let mut shifted = x;
    let mut product = 1.0;
    while shifted < 10.0 {
        product *= shifted;
        shifted += 1.0;
    }
    let inv = 1.0 / shifted;
    let inv2 = inv * inv;
    let mut series = 0.0;
    for coef in STIRLING.iter().rev() {
        series = series * inv2 + coef;
    }
    series *= inv;
    let stirling = (shifted - 0.5) * shifted.ln() - shifted + 0.5 * (2.0 * PI).ln() + series;
    Ok(stirling - product.ln())
}

/// Partial sum `Σ_{n<terms} (−1)ⁿ/(2n+1)²` of the Dirichlet beta series for `G`.
pub fn catalan_partial_sum(terms: usize) -> f64 {
    (0..terms)
        .map(|n| {
            let d = (2 * n + 1) as f64;
            if n % 2 == 0 {
                1.0 / (d * d)
            } else {
                -1.0 / (d * d)
            }
        })
        .collect::<CompensatedSum>()
        .value()
}

/// Catalan's constant `G = Σ (−1)ⁿ/(2n+1)²` with Cohen–Villegas–Zagier
/// acceleration.
///
/// The terms form a moment sequence, so `n` accelerated terms are within
/// `2/(3+√8)ⁿ` of the sum.
pub fn catalan_reference(tol: f64) -> Result<f64> {
    if !(tol >= CATALAN_TOL_FLOOR) {
        return domain(format!(
            "catalan_reference tolerance must be >= {CATALAN_TOL_FLOOR}, got {tol}"
        ));
    }
    let rate = 3.0 + 8f64.sqrt();
    let n = ((2.0 / tol).ln() / rate.ln()).ceil() as usize + 1;
    let nf = n as f64;
    let mut d = rate.powi(n as i32);
    d = 0.5 * (d + 1.0 / d);
    let mut b = -1.0;
    let mut c = -d;
    let mut s = 0.0;
    for k in 0..n {
        let kf = k as f64;
        c = b - c;
        let denom = 2.0 * kf + 1.0;
        s += c / (denom * denom);
        b = (kf + nf) * (kf - nf) * b / ((kf + 0.5) * (kf + 1.0));
    }
    Ok(s / d)
}

/// Kummer's series `Σ_{j≥1} sin(2πjx) ln(j)/j` for `0 < x < 1`, from the
/// Fourier expansion of `ln Γ`.
pub fn kummer_sine_log_series(x: f64) -> Result<f64> {
    if !(x > 0.0 && x < 1.0) {
        return domain(format!("kummer_sine_log_series needs 0 < x < 1, got {x}"));
    }
    let lg = log_gamma(x)?;
    Ok(PI
        * (lg - (0.5 - x) * (EULER_GAMMA + 2f64.ln()) - (1.0 - x) * PI.ln()
            + 0.5 * (PI * x).sin().ln()))
}

/// `Σ_{j≥1} sin(2j) ln(j)/j = π ln Γ(1/π) + (1 − π/2)(γ + ln 2π) − (π/2) ln(π / sin 1)`.
pub fn kummer_sine_log_sum() -> f64 {
    let lg = log_gamma(1.0 / PI).expect("1/π is positive");
    PI * lg + (1.0 - PI / 2.0) * (EULER_GAMMA + (2.0 * PI).ln()) - PI / 2.0 * (PI / 1f64.sin()).ln()
}

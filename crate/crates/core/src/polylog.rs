//! Principal-branch dilogarithm `Li₂` and Clausen's function `Cl₂`.
//!
//! `Li₂` is holomorphic on `ℂ ∖ [1, ∞)`. Points on the open cut `(1, ∞)` are
//! rejected by [`li2`]; the boundary value approached from the upper half-plane
//! is available from [`li2_upper_boundary`].
//!
//! Evaluation uses the direct power series for `|z| ≤ 1/2`. Everywhere else the
//! argument is moved into `{|w| ≤ 1, Re w ≤ 1/2}` by reflection (`z → 1 − z`) or
//! inversion (`z → 1/z`) and summed with the Bernoulli series in
//! `u = −Log(1 − w)`, which converges for `|u| < 2π` and needs only a handful
//! of terms there because `|u| ≤ π/3`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{domain, Error, Result};

/// Complex number used for every dilogarithm argument and value.
pub type ComplexValue = Complex64;

const ZETA2: f64 = PI * PI / 6.0;

/// `B₂ₖ / (2k + 1)!` for `k = 1..=30`.
const BERNOULLI_ODD_FACTORIAL: [f64; 30] = [
    2.777_777_777_777_777_8e-2,
    -2.777_777_777_777_777_8e-4,
    4.724_111_866_969_009_8e-6,
    -9.185_773_074_661_963_6e-8,
    1.897_886_998_897_099_9e-9,
    -4.064_761_645_144_225_5e-11,
    8.921_691_020_456_452_6e-13,
    -1.993_929_586_072_107_6e-14,
    4.518_980_029_619_918_2e-16,
    -1.035_651_761_218_124_7e-17,
    2.395_218_621_026_186_7e-19,
    -5.581_785_874_325_009_3e-21,
    1.309_150_755_418_321_3e-22,
    -3.087_419_802_426_740_3e-24,
    7.315_975_652_702_203_4e-26,
    -1.740_845_657_234_000_7e-27,
    4.157_635_644_613_899_7e-29,
    -9.962_148_488_284_622_1e-31,
    2.394_034_424_896_165_3e-32,
    -5.768_347_355_367_390_1e-34,
    1.393_179_479_647_008e-35,
    -3.372_121_965_485_089_5e-37,
    8.178_208_777_562_102_6e-39,
    -1.987_010_831_152_385_9e-40,
    4.835_778_518_040_550_9e-42,
    -1.178_693_724_871_838_4e-43,
    2.877_096_408_117_257_1e-45,
    -7.032_059_098_156_028e-47,
    1.720_860_314_503_314_6e-48,
    -4.216_072_390_560_445_5e-50,
];

/// `Σ_{n≥0} Bₙ u^{n+1} / (n+1)!`, i.e. `Li₂(1 − e^{−u})`, for `|u| < 2π`.
fn bernoulli_series(u: Complex64) -> Complex64 {
    let u2 = u * u;
    let mut acc = Complex64::new(0.0, 0.0);
    for c in BERNOULLI_ODD_FACTORIAL.iter().rev() {
        acc = acc * u2 + *c;
    }
    u - u2 * 0.25 + acc * u2 * u
}

fn direct_series(z: Complex64) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut power = z;
    for n in 1..=80u32 {
        let n = f64::from(n);
        let term = power / (n * n);
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() {
            break;
        }
        power *= z;
    }
    sum
}

fn on_open_cut(z: Complex64) -> bool {
    z.im == 0.0 && z.re > 1.0
}

/// Functional-equation route, valid everywhere off the cut except `z = 1`.
fn li2_transformed(z: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    let rz = z.re;
    let nz = z.norm_sqr();
    let w = one - z;
    if rz > 0.5 && w.norm_sqr() <= 1.0 {
        // Reflection: Li₂(z) = π²/6 − Log z · Log(1 − z) − Li₂(1 − z).
        let lz = z.ln();
        -bernoulli_series(-lz) + ZETA2 - lz * w.ln()
    } else if nz <= 1.0 {
        bernoulli_series(-w.ln())
    } else {
        // Inversion: Li₂(z) = −π²/6 − ½ Log²(−z) − Li₂(1/z).
        let inv = one / z;
        let l = (-z).ln();
        -bernoulli_series(-(one - inv).ln()) - ZETA2 - 0.5 * l * l
    }
}

fn li2_kernel(z: Complex64) -> Complex64 {
    if z.re == 0.0 && z.im == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    if z.re == 1.0 && z.im == 0.0 {
        return Complex64::new(ZETA2, 0.0);
    }
    if z.norm_sqr() <= 0.25 {
        direct_series(z)
    } else {
        li2_transformed(z)
    }
}

fn check_finite(z: Complex64) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        domain(format!("dilogarithm argument {z} is not finite"))
    }
}

/// Principal-branch dilogarithm.
pub fn li2(z: ComplexValue) -> Result<ComplexValue> {
    check_finite(z)?;
    if on_open_cut(z) {
        return Err(Error::BranchCut { re: z.re, im: z.im });
    }
    Ok(li2_kernel(z))
}

/// `Li₂(x)` for real `x ≤ 1`, where the value is real.
pub fn li2_real(x: f64) -> Result<f64> {
    if !x.is_finite() || x > 1.0 {
        return domain(format!("li2_real needs a finite x <= 1, got {x}"));
    }
    Ok(li2_kernel(Complex64::new(x, 0.0)).re)
}

/// `lim_{ε→0⁺} Li₂(x + iε)` for `x > 1`.
///
/// The real part is continuous across the cut; the imaginary part is `π ln x`.
pub fn li2_upper_boundary(x: f64) -> Result<ComplexValue> {
    if !x.is_finite() || x <= 1.0 {
        return domain(format!("li2_upper_boundary needs x > 1, got {x}"));
    }
    let l = x.ln();
    let re = 2.0 * ZETA2 - 0.5 * l * l - li2_kernel(Complex64::new(1.0 / x, 0.0)).re;
    Ok(Complex64::new(re, PI * l))
}

/// `d/dz Li₂(z) = −Log(1 − z)/z`, with the removable value 1 at the origin.
pub fn li2_derivative(z: ComplexValue) -> Result<ComplexValue> {
    check_finite(z)?;
    if z.im == 0.0 && z.re >= 1.0 {
        return Err(Error::BranchCut { re: z.re, im: z.im });
    }
    if z.norm() < 1e-4 {
        // −Log(1 − z)/z = 1 + z/2 + z²/3 + z³/4 + …
        let one = Complex64::new(1.0, 0.0);
        return Ok(one + z * (0.5 + z * (one / 3.0 + z * (0.25 + z * 0.2))));
    }
    Ok(-(Complex64::new(1.0, 0.0) - z).ln() / z)
}

/// Clausen's function `Cl₂(φ) = Σ sin(nφ)/n² = Im Li₂(e^{iφ})` on `[0, 2π]`.
///
/// No periodic reduction is applied; arguments outside `[0, 2π]` are errors.
pub fn clausen2(phi: f64) -> Result<f64> {
    if !(0.0..=2.0 * PI).contains(&phi) {
        return domain(format!("clausen2 needs 0 <= phi <= 2π, got {phi}"));
    }
    if phi == 0.0 || phi == PI || phi == 2.0 * PI {
        return Ok(0.0);
    }
    if phi > PI {
        return Ok(-clausen_half_period(2.0 * PI - phi));
    }
    Ok(clausen_half_period(phi))
}

// Im Li₂(e^{iφ}) by reflection: −φ ln(2 sin(φ/2)) − Im Li₂(1 − e^{iφ}), where the
// second term is the Bernoulli series at u = −iφ. Valid for 0 < φ ≤ π.
fn clausen_half_period(phi: f64) -> f64 {
    let p2 = phi * phi;
    let mut acc = 0.0;
    for (k, c) in BERNOULLI_ODD_FACTORIAL.iter().enumerate().rev() {
        let sign = if k % 2 == 0 { -1.0 } else { 1.0 };
        acc = acc * p2 + sign * c;
    }
    phi + acc * p2 * phi - phi * (2.0 * (0.5 * phi).sin()).ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    const CATALAN: f64 = 0.915_965_594_177_219_015;

    #[test]
    fn special_points() {
        assert_eq!(li2(c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
        assert!((li2(c(1.0, 0.0)).unwrap().re - ZETA2).abs() < 1e-15);
        let m1 = li2(c(-1.0, 0.0)).unwrap();
        assert!((m1.re + PI * PI / 12.0).abs() < 1e-15);
        assert!(m1.im.abs() < 1e-15);
        let i = li2(c(0.0, 1.0)).unwrap();
        assert!((i.im - CATALAN).abs() < 1e-15);
        assert!((i.re + PI * PI / 48.0).abs() < 1e-15);
    }

    #[test]
    fn open_cut_rejected() {
        assert!(matches!(li2(c(2.0, 0.0)), Err(Error::BranchCut { .. })));
        assert!(li2(c(2.0, 1e-300)).is_ok());
        assert!(li2(c(f64::NAN, 0.0)).is_err());
        assert!(li2_derivative(c(1.0, 0.0)).is_err());
    }

    #[test]
    fn upper_boundary_values() {
        let two = li2_upper_boundary(2.0).unwrap();
        assert!((two.re - PI * PI / 4.0).abs() < 1e-14);
        assert!((two.im - PI * 2f64.ln()).abs() < 1e-14);
        let near = li2_upper_boundary(1.0 + 1e-12).unwrap();
        assert!((near.re - ZETA2).abs() < 1e-9);
        assert!(li2_upper_boundary(1.0).is_err());
        // Agrees with points just above the cut.
        for x in [1.5, 2.0, 3.7, 10.0, 250.0] {
            let above = li2(c(x, 1e-13)).unwrap();
            let edge = li2_upper_boundary(x).unwrap();
            assert!((above - edge).norm() < 1e-10, "x = {x}");
        }
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(li2_derivative(c(0.0, 0.0)).unwrap(), c(1.0, 0.0));
        let d = li2_derivative(c(-1.0, 0.0)).unwrap();
        assert!((d.re - 2f64.ln()).abs() < 1e-15);
        let z = c(0.3, 0.2);
        let h = 1e-5;
        let fd = (li2(z + h).unwrap() - li2(z - h).unwrap()) / (2.0 * h);
        assert!((fd - li2_derivative(z).unwrap()).norm() < 1e-7);
        // Series branch near the origin matches the closed form.
        let tiny = c(3e-5, -2e-5);
        let closed = -(c(1.0, 0.0) - tiny).ln() / tiny;
        assert!((li2_derivative(tiny).unwrap() - closed).norm() < 1e-11);
    }

    #[test]
    fn functional_equations_match_series_on_annulus() {
        for i in 0..48 {
            let t = f64::from(i) * PI / 24.0;
            for r in [0.41, 0.45, 0.49] {
                let z = Complex64::from_polar(r, t);
                let d = (li2_transformed(z) - direct_series(z)).norm();
                assert!(d < 1e-15, "z = {z}, diff = {d}");
            }
        }
    }

    #[test]
    fn clausen_examples() {
        assert_eq!(clausen2(0.0).unwrap(), 0.0);
        assert_eq!(clausen2(PI).unwrap(), 0.0);
        assert!((clausen2(PI / 2.0).unwrap() - CATALAN).abs() < 1e-15);
        assert!((clausen2(PI / 3.0).unwrap() - 1.014_941_606_409_653_6).abs() < 1e-15);
        assert!(clausen2(-0.1).is_err());
        assert!(clausen2(2.0 * PI + 1e-9).is_err());
    }

    #[test]
    fn clausen_matches_imaginary_dilog() {
        for i in 1..100 {
            let phi = f64::from(i) * 2.0 * PI / 100.0;
            let via_li2 = li2(Complex64::from_polar(1.0, phi)).unwrap().im;
            assert!(
                (clausen2(phi).unwrap() - via_li2).abs() < 1e-11,
                "phi = {phi}"
            );
        }
    }

    #[test]
    fn clausen_near_endpoints() {
        // Cl₂(φ) = φ − φ ln φ + φ³/72 + O(φ⁵).
        for phi in [1e-8f64, 1e-6, 1e-4] {
            let expected = phi - phi * phi.ln() + phi.powi(3) / 72.0;
            assert!((clausen2(phi).unwrap() - expected).abs() < 1e-15);
            assert!((clausen2(2.0 * PI - phi).unwrap() + expected).abs() < 1e-10);
        }
    }
}

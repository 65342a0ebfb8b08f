//! Quadrature, root finding and series summation kernels shared by the rest
//! of the crate.
//!
//! All three are deterministic: the same inputs always produce bit-identical
//! outputs, which the report layer relies on.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{domain, Error, Result};

/// Maximum number of bisections performed by [`integrate_adaptive`].
pub const DEFAULT_MAX_SUBDIVISIONS: usize = 10_000;

/// Abscissae closer than this to an endpoint are replaced by the declared limit.
pub const ENDPOINT_SNAP: f64 = 1e-300;

/// Bracket width below which the root finders stop refining.
pub const BRACKET_FLOOR: f64 = 1e-14;

const MAX_ROOT_ITERATIONS: usize = 200;

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub evaluations: usize,
}

/// Outcome of a truncated series summation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesResult {
    pub value: f64,
    pub terms_used: usize,
    /// Bound on the omitted remainder at `terms_used`.
    pub tail_bound: f64,
    /// Set when `max_terms` was reached before the tail bound met the tolerance.
    pub truncated: bool,
}

/// Outcome of a bracketed root solve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootResult {
    pub x: f64,
    /// `|g(x) − target|`.
    pub residual: f64,
    pub iterations: usize,
}

/// Finite values an integrand takes in the limit at each end of the interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EndpointLimits {
    pub lo: f64,
    pub hi: f64,
}

impl EndpointLimits {
    pub fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }
}

/// Neumaier compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub(crate) fn new() -> Self {
        Self::default()
    }

    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

// 15-point Kronrod abscissae on [0, 1]; the odd-indexed ones are the 7-point Gauss nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_94,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy)]
struct Segment {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    // Largest error first; ties broken by position so the order is total.
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.lo.total_cmp(&self.lo))
    }
}

struct Integrator<'a, F> {
    f: &'a F,
    lo: f64,
    hi: f64,
    limits: EndpointLimits,
    evaluations: usize,
}

impl<F: Fn(f64) -> f64> Integrator<'_, F> {
    fn eval(&mut self, x: f64) -> Result<f64> {
        self.evaluations += 1;
        let y = if (x - self.lo).abs() <= ENDPOINT_SNAP {
            self.limits.lo
        } else if (self.hi - x).abs() <= ENDPOINT_SNAP {
            self.limits.hi
        } else {
            (self.f)(x)
        };
        if y.is_nan() {
            return domain(format!("integrand returned NaN at x = {x}"));
        }
        Ok(y)
    }

    fn gauss_kronrod(&mut self, lo: f64, hi: f64) -> Result<Segment> {
        let center = 0.5 * (lo + hi);
        let half = 0.5 * (hi - lo);
        let fc = self.eval(center)?;
        let mut res_k = fc * WGK[7];
        let mut res_g = fc * WG[3];
        let mut res_abs = res_k.abs();
        let mut fv1 = [0.0; 7];
        let mut fv2 = [0.0; 7];
        for j in 0..7 {
            let dx = half * XGK[j];
            let f1 = self.eval(center - dx)?;
            let f2 = self.eval(center + dx)?;
            fv1[j] = f1;
            fv2[j] = f2;
            res_k += WGK[j] * (f1 + f2);
            res_abs += WGK[j] * (f1.abs() + f2.abs());
            if j % 2 == 1 {
                res_g += WG[j / 2] * (f1 + f2);
            }
        }
        let mean = 0.5 * res_k;
        let mut res_asc = WGK[7] * (fc - mean).abs();
        for j in 0..7 {
            res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
        }
        let value = res_k * half;
        res_abs *= half.abs();
        res_asc *= half.abs();
        let mut error = ((res_k - res_g) * half).abs();
        if res_asc != 0.0 && error != 0.0 {
            error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
        }
        if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
            error = error.max(50.0 * f64::EPSILON * res_abs);
        }
        Ok(Segment {
            lo,
            hi,
            value,
            error,
        })
    }
}

/// Adaptive 15-point Gauss–Kronrod integration of `f` over `[lo, hi]`.
///
/// `f` is never called within [`ENDPOINT_SNAP`] of either endpoint; the
/// declared `limits` are used there instead, so integrands with removable
/// singularities such as `arctan(x)/x` can be passed as they are.
pub fn integrate_adaptive<F>(
    f: F,
    lo: f64,
    hi: f64,
    limits: EndpointLimits,
    tol: f64,
) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64,
{
    integrate_adaptive_with_budget(f, lo, hi, limits, tol, DEFAULT_MAX_SUBDIVISIONS)
}

/// [`integrate_adaptive`] with an explicit subdivision budget.
pub fn integrate_adaptive_with_budget<F>(
    f: F,
    lo: f64,
    hi: f64,
    limits: EndpointLimits,
    tol: f64,
    max_subdivisions: usize,
) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64,
{
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return domain(format!(
            "integration interval [{lo}, {hi}] must be finite with lo < hi"
        ));
    }
    if !(tol > 0.0) {
        return domain(format!("quadrature tolerance must be positive, got {tol}"));
    }
    if !limits.lo.is_finite() || !limits.hi.is_finite() {
        return domain("endpoint limits must be finite");
    }
    let mut integrator = Integrator {
        f: &f,
        lo,
        hi,
        limits,
        evaluations: 0,
    };

    let first = integrator.gauss_kronrod(lo, hi)?;
    let mut value = first.value;
    let mut error = first.error;
    let mut heap = BinaryHeap::from([first]);
    let mut subdivisions = 0;

    while error > tol {
        if subdivisions >= max_subdivisions {
            return Err(Error::BudgetExhausted {
                what: "quadrature subdivision",
                best: value,
                error,
            });
        }
        let worst = heap.pop().expect("segment heap is never empty");
        let mid = 0.5 * (worst.lo + worst.hi);
        if !(worst.lo < mid && mid < worst.hi) {
            return Err(Error::BudgetExhausted {
                what: "quadrature resolution",
                best: value,
                error,
            });
        }
        let left = integrator.gauss_kronrod(worst.lo, mid)?;
        let right = integrator.gauss_kronrod(mid, worst.hi)?;
        subdivisions += 1;
        error += left.error + right.error - worst.error;
        value += left.value + right.value - worst.value;
        heap.push(left);
        heap.push(right);
        if error <= tol {
            // Re-sum from scratch so drift in the running totals cannot fake convergence.
            let mut segs: Vec<&Segment> = heap.iter().collect();
            segs.sort_by(|a, b| a.lo.total_cmp(&b.lo));
            value = segs
                .iter()
                .map(|s| s.value)
                .collect::<CompensatedSum>()
                .value();
            error = segs.iter().map(|s| s.error).sum();
        }
    }

    Ok(QuadratureResult {
        value,
        abs_error_estimate: error,
        evaluations: integrator.evaluations,
    })
}

fn check_root_inputs(lo: f64, hi: f64, tol: f64) -> Result<()> {
    if !(lo < hi) {
        return domain(format!("root bracket [{lo}, {hi}] must satisfy lo < hi"));
    }
    if !(tol > 0.0) {
        return domain(format!("root tolerance must be positive, got {tol}"));
    }
    Ok(())
}

/// Solves `g(x) = target` for a strictly increasing `g` on `[lo, hi]` by bisection.
///
/// Requires `g(lo) < target < g(hi)`. Stops once `|g(x) − target| ≤ tol` or the
/// bracket is narrower than [`BRACKET_FLOOR`].
pub fn find_root_increasing<G>(g: G, lo: f64, hi: f64, target: f64, tol: f64) -> Result<RootResult>
where
    G: Fn(f64) -> f64,
{
    solve_increasing(g, None::<fn(f64) -> f64>, lo, hi, target, tol)
}

/// Like [`find_root_increasing`], but takes Newton steps with the supplied
/// derivative whenever they stay inside the current bracket.
pub fn find_root_increasing_newton<G, D>(
    g: G,
    dg: D,
    lo: f64,
    hi: f64,
    target: f64,
    tol: f64,
) -> Result<RootResult>
where
    G: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    solve_increasing(g, Some(dg), lo, hi, target, tol)
}

fn solve_increasing<G, D>(
    g: G,
    dg: Option<D>,
    lo: f64,
    hi: f64,
    target: f64,
    tol: f64,
) -> Result<RootResult>
where
    G: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    check_root_inputs(lo, hi, tol)?;
    let g_lo = g(lo);
    let g_hi = g(hi);
    if !(g_lo < target && target < g_hi) {
        return Err(Error::Bracket { target, g_lo, g_hi });
    }

    let (mut a, mut b) = (lo, hi);
    let mut x = 0.5 * (a + b);
    let mut best = RootResult {
        x,
        residual: f64::INFINITY,
        iterations: 0,
    };

    for iteration in 1..=MAX_ROOT_ITERATIONS {
        let r = g(x) - target;
        if r.is_nan() {
            return domain(format!("root function returned NaN at x = {x}"));
        }
        if r.abs() < best.residual {
            best = RootResult {
                x,
                residual: r.abs(),
                iterations: iteration,
            };
        }
        if r.abs() <= tol {
            return Ok(best);
        }
        if r < 0.0 {
            a = x;
        } else {
            b = x;
        }
        if b - a < BRACKET_FLOOR {
            best.iterations = iteration;
            return Ok(best);
        }
        let bisect = 0.5 * (a + b);
        x = match &dg {
            Some(d) => {
                let slope = d(x);
                let step = x - r / slope;
                if slope > 0.0 && step > a && step < b {
                    step
                } else {
                    bisect
                }
            }
            None => bisect,
        };
        if !(a < x && x < b) {
            best.iterations = iteration;
            return Ok(best);
        }
    }

    Err(Error::BudgetExhausted {
        what: "root iteration",
        best: best.x,
        error: best.residual,
    })
}

/// Sums `term(1) + term(2) + …` until `tail_bound(K) ≤ tol` or `max_terms` is hit.
///
/// `tail_bound(K)` must bound `|Σ_{k>K} term(k)|` and be non-increasing in `K`.
pub fn sum_series<T, B>(term: T, tail_bound: B, tol: f64, max_terms: usize) -> SeriesResult
where
    T: Fn(usize) -> f64,
    B: Fn(usize) -> f64,
{
    let mut acc = CompensatedSum::new();
    let max_terms = max_terms.max(1);
    for k in 1..=max_terms {
        acc.add(term(k));
        let bound = tail_bound(k);
        if bound <= tol {
            return SeriesResult {
                value: acc.value(),
                terms_used: k,
                tail_bound: bound.max(0.0),
                truncated: false,
            };
        }
    }
    SeriesResult {
        value: acc.value(),
        terms_used: max_terms,
        tail_bound: tail_bound(max_terms).max(0.0),
        truncated: true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    const NO_LIMITS: EndpointLimits = EndpointLimits { lo: 0.0, hi: 0.0 };

    #[test]
    fn constant_and_linear() {
        let one =
            integrate_adaptive(|_| 1.0, 0.0, 1.0, EndpointLimits::new(1.0, 1.0), 1e-12).unwrap();
        assert!((one.value - 1.0).abs() < 1e-15);
        assert!(one.evaluations >= 1);
        let lin =
            integrate_adaptive(|x| x, 0.0, 1.0, EndpointLimits::new(0.0, 1.0), 1e-12).unwrap();
        assert!((lin.value - 0.5).abs() < 1e-15);
    }

    #[test]
    fn arctan_kernel_at_unit_parameter() {
        let f = |b: f64| ((1.0 + b.cos()) / b.sin()).atan();
        let r = integrate_adaptive(f, 0.0, 2.0, EndpointLimits::new(PI / 2.0, 0.0), 1e-11).unwrap();
        assert!((r.value - (PI - 1.0)).abs() < 1e-11, "{}", r.value);
        assert!(r.abs_error_estimate <= 1e-11);
    }

    #[test]
    fn endpoint_limit_replaces_evaluation() {
        // f is NaN at 0; the snap must keep it from being evaluated there.
        let f = |x: f64| if x == 0.0 { f64::NAN } else { x.atan() / x };
        let r = integrate_adaptive(f, 0.0, 1.0, EndpointLimits::new(1.0, PI / 4.0), 1e-13).unwrap();
        assert!((r.value - 0.915_965_594_177_219).abs() < 1e-13);
    }

    #[test]
    fn nan_integrand_is_domain_error() {
        let err = integrate_adaptive(|_| f64::NAN, 0.0, 1.0, NO_LIMITS, 1e-8).unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
    }

    #[test]
    fn budget_exhaustion_carries_estimate() {
        let f = |x: f64| (1.0 / x).sin();
        let err = integrate_adaptive_with_budget(f, 1e-6, 1.0, NO_LIMITS, 1e-14, 5).unwrap_err();
        match err {
            Error::BudgetExhausted { best, error, .. } => {
                assert!(best.is_finite());
                assert!(error > 1e-14);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn bad_interval_rejected() {
        assert!(integrate_adaptive(|x| x, 1.0, 0.0, NO_LIMITS, 1e-8).is_err());
        assert!(integrate_adaptive(|x| x, 0.0, 1.0, NO_LIMITS, 0.0).is_err());
    }

    #[test]
    fn root_of_identity() {
        let r = find_root_increasing(|x| x, 0.0, 1.0, 0.5, 1e-14).unwrap();
        assert_eq!(r.x, 0.5);
        assert_eq!(r.residual, 0.0);
    }

    #[test]
    fn root_of_quarter_square() {
        // psi(1) = G + (pi/4) ln 2 with G from the Dirichlet beta series.
        let g = crate::special::catalan_reference(1e-15).unwrap();
        let target = g + PI / 4.0 * 2f64.ln();
        let r = find_root_increasing(|b| b * b / 4.0, 0.0, PI, target, 1e-13).unwrap();
        assert!((r.x - 2.0 * target.sqrt()).abs() < 1e-12);
        assert!((r.x - 2.416_908_866_095_8).abs() < 1e-12);
        let n = find_root_increasing_newton(|b| b * b / 4.0, |b| b / 2.0, 0.0, PI, target, 1e-13)
            .unwrap();
        assert!((n.x - r.x).abs() < 1e-12);
        assert!(n.iterations <= r.iterations);
    }

    #[test]
    fn unbracketed_target_rejected() {
        let err = find_root_increasing(|x| x * x * x, -2.0, 2.0, 8.0, 1e-12).unwrap_err();
        assert!(matches!(err, Error::Bracket { .. }));
    }

    #[test]
    fn zero_series_stops_immediately() {
        let s = sum_series(|_| 0.0, |_| 0.0, 1e-12, 100);
        assert_eq!(s.value, 0.0);
        assert_eq!(s.terms_used, 1);
        assert!(!s.truncated);
    }

    #[test]
    fn basel_series_within_bound() {
        let s = sum_series(
            |k| 1.0 / (k * k) as f64,
            |k| 1.0 / k as f64,
            1e-4,
            1_000_000,
        );
        let truth = PI * PI / 6.0;
        assert!((s.value - truth).abs() <= s.tail_bound);
        assert!(s.tail_bound <= 1e-4);
    }

    #[test]
    fn cotangent_fraction_series() {
        let term = |k: usize| {
            let kp = k as f64 * PI;
            2.0 / (kp * kp - 1.0)
        };
        let tail = |k: usize| 2.0 / (PI * PI * (k as f64 - 1.0));
        let s = sum_series(term, tail, 1e-8, 100_000_000);
        assert!(!s.truncated);
        assert!((s.value - 0.357_907_384_065_669).abs() <= s.tail_bound + 1e-14);
    }

    #[test]
    fn truncated_series_flagged() {
        let s = sum_series(|k| 1.0 / k as f64, |_| f64::INFINITY, 1e-3, 10);
        assert!(s.truncated);
        assert_eq!(s.terms_used, 10);
    }

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let acc: CompensatedSum = [1.0, 1e-17, -1.0].into_iter().collect();
        assert_eq!(acc.value(), 1e-17);
    }
}

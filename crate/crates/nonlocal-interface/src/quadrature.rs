//! Gauss–Legendre quadrature used throughout the crate.
//!
//! Every integral in the assembly and analysis paths reduces, after splitting
//! at element boundaries and interaction-ball endpoints, to polynomials of
//! degree at most five per subinterval, so the three-point Gauss rule is not
//! an approximation there — it is exact up to roundoff. The composite helpers
//! serve the free-standing operator evaluations on smooth test functions.

/// Abscissa of the outer 3-point Gauss–Legendre nodes on [-1, 1]: sqrt(3/5).
const GAUSS3_NODE: f64 = 0.774_596_669_241_483_4;
/// Weight of the two outer nodes: 5/9.
const GAUSS3_OUTER_WEIGHT: f64 = 5.0 / 9.0;
/// Weight of the central node: 8/9.
const GAUSS3_CENTER_WEIGHT: f64 = 8.0 / 9.0;

/// The 3-point Gauss–Legendre rule mapped to `[lo, hi]`, as (point, weight)
/// pairs. Exact for polynomials up to degree five.
#[inline]
pub fn gauss3(lo: f64, hi: f64) -> [(f64, f64); 3] {
    let center = 0.5 * (lo + hi);
    let radius = 0.5 * (hi - lo);
    [
        (center - radius * GAUSS3_NODE, radius * GAUSS3_OUTER_WEIGHT),
        (center, radius * GAUSS3_CENTER_WEIGHT),
        (center + radius * GAUSS3_NODE, radius * GAUSS3_OUTER_WEIGHT),
    ]
}

/// Integral of `f` over `[lo, hi]` with a single 3-point Gauss rule.
#[inline]
pub fn integrate_gauss3<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64) -> f64 {
    gauss3(lo, hi).iter().map(|&(x, w)| w * f(x)).sum()
}

/// Integral of `f` over `[lo, hi]` with `subintervals` equal pieces, each
/// integrated by the 3-point Gauss rule.
pub fn integrate_composite<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, subintervals: usize) -> f64 {
    let n = subintervals.max(1);
    let step = (hi - lo) / n as f64;
    let mut total = 0.0;
    for k in 0..n {
        let s_lo = lo + step * k as f64;
        let s_hi = if k + 1 == n { hi } else { lo + step * (k + 1) as f64 };
        for (x, w) in gauss3(s_lo, s_hi) {
            total += w * f(x);
        }
    }
    total
}

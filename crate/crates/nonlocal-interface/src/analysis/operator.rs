//! Pointwise application of the nonlocal operator and its local limit.
//!
//! Away from the interface the operator reduces to a single-material form
//!
//! ```text
//! L u(x) = 2 C int_{|y - x| <= delta} (u(y) - u(x)) dy
//! ```
//!
//! with the matched amplitude `C = (3/2) kappa / delta^3` in one dimension and
//! `C = 4 kappa / (pi delta^4)` in the plane. On quadratic (and, by symmetry,
//! cubic) test functions `L u` equals `kappa * Laplacian(u)` exactly for every
//! horizon; on quartics it deviates by a multiple of `kappa delta^2`, so the
//! local limit converges at second order in the horizon.
//!
//! The quadrature here is exact for polynomial test functions: composite
//! 3-point Gauss radially (degree five per piece) and, in two dimensions, a
//! periodic trapezoidal rule in the angle (exact for trigonometric
//! polynomials up to the node count).

use super::study::{StudyReport, StudyRow, StudySnapshot};
use super::observed_order;
use crate::quadrature::integrate_composite;
use crate::{Error, Result};

/// Subdivision count for radial composite Gauss rules.
const RADIAL_PANELS: usize = 16;
/// Node count of the periodic angular rule; exact for trigonometric
/// polynomials of degree below this.
const ANGULAR_NODES: usize = 64;

/// Apply the one-dimensional nonlocal operator with constant amplitude to a
/// function at `x`. The interaction ball must stay inside `domain`.
pub fn nonlocal_operator_apply_1d(
    u: impl Fn(f64) -> f64,
    x: f64,
    amplitude: f64,
    delta: f64,
    domain: (f64, f64),
) -> Result<f64> {
    if !delta.is_finite() || delta <= 0.0 {
        return Err(Error::InvalidParameter {
            name: "delta",
            value: delta,
            requirement: "horizon must be positive and finite",
        });
    }
    if x - delta < domain.0 || x + delta > domain.1 {
        return Err(Error::QuadratureDomainClipped { x, delta });
    }
    let ux = u(x);
    let integral = integrate_composite(|y| u(y) - ux, x - delta, x + delta, RADIAL_PANELS);
    Ok(2.0 * amplitude * integral)
}

/// Apply the planar nonlocal operator with constant amplitude to a function
/// at `center`, integrating in polar coordinates over the interaction disk.
pub fn nonlocal_operator_apply_2d(
    u: impl Fn(f64, f64) -> f64,
    center: (f64, f64),
    amplitude: f64,
    delta: f64,
) -> f64 {
    let (cx, cy) = center;
    let u0 = u(cx, cy);
    let two_pi = 2.0 * std::f64::consts::PI;
    let angular_step = two_pi / ANGULAR_NODES as f64;
    let radial = integrate_composite(
        |rho| {
            let mut ring = 0.0;
            for k in 0..ANGULAR_NODES {
                let theta = k as f64 * angular_step;
                ring += u(cx + rho * theta.cos(), cy + rho * theta.sin()) - u0;
            }
            ring * angular_step * rho
        },
        0.0,
        delta,
        RADIAL_PANELS,
    );
    2.0 * amplitude * radial
}

/// The matched one-dimensional amplitude `(3/2) kappa / delta^3`.
pub fn amplitude_1d(kappa: f64, delta: f64) -> f64 {
    1.5 * kappa / delta.powi(3)
}

/// The matched planar amplitude `4 kappa / (pi delta^4)`.
pub fn amplitude_2d(kappa: f64, delta: f64) -> f64 {
    4.0 * kappa / (std::f64::consts::PI * delta.powi(4))
}

/// Numerically evaluate the planar kernel moment
/// `pi * c_tilde * delta^beta * int_0^delta rho^3 drho`; with the matched
/// cross constants it recovers the paired diffusion coefficient.
pub fn radial_moment_kappa(c_tilde: f64, beta: i32, delta: f64) -> f64 {
    let moment = integrate_composite(|rho| rho.powi(3), 0.0, delta, RADIAL_PANELS);
    std::f64::consts::PI * c_tilde * delta.powi(beta) * moment
}

fn order_rows(pairs: Vec<(f64, f64)>) -> Vec<StudyRow> {
    let mut rows: Vec<StudyRow> = pairs
        .into_iter()
        .map(|(delta, dev)| StudyRow {
            param1: delta,
            param2: None,
            quantity: dev,
            order: None,
        })
        .collect();
    for i in 1..rows.len() {
        rows[i].order = Some(observed_order(rows[i - 1].quantity, rows[i].quantity));
    }
    rows
}

fn operator_snapshot(kappa: f64) -> StudySnapshot {
    StudySnapshot {
        kernel: None,
        kappa1: kappa,
        kappa2: kappa,
        delta1: None,
        delta2: None,
        h: None,
        h_fine: None,
        f_left: None,
        f_right: None,
        domain: None,
    }
}

/// Deviation `|L u - kappa u''|` at `x` for the quartic `u(y) = y^4` over a
/// list of horizons: exactly `(6/5) kappa delta^2`, hence order two.
pub fn operator_limit_study_1d(kappa: f64, x: f64, deltas: &[f64]) -> StudyReport {
    let u = |y: f64| y.powi(4);
    let ddu = 12.0 * x * x;
    let pairs = deltas
        .iter()
        .map(|&delta| {
            let domain = (x - 2.0 * delta, x + 2.0 * delta);
            let lu = nonlocal_operator_apply_1d(u, x, amplitude_1d(kappa, delta), delta, domain)
                .expect("study domain contains every interaction ball");
            (delta, (lu - kappa * ddu).abs())
        })
        .collect();
    StudyReport {
        kind: "operator-1d".to_string(),
        quantity: "operator_deviation".to_string(),
        param_names: vec!["delta".to_string()],
        config: operator_snapshot(kappa),
        rows: order_rows(pairs),
    }
}

/// Deviation `|L u - kappa Laplacian(u)|` at `center` for the quartic
/// `u(x, y) = x^4` over a list of horizons: exactly `kappa delta^2`.
pub fn operator_limit_study_2d(kappa: f64, center: (f64, f64), deltas: &[f64]) -> StudyReport {
    let u = |x: f64, _y: f64| x.powi(4);
    let laplacian = 12.0 * center.0 * center.0;
    let pairs = deltas
        .iter()
        .map(|&delta| {
            let lu = nonlocal_operator_apply_2d(u, center, amplitude_2d(kappa, delta), delta);
            (delta, (lu - kappa * laplacian).abs())
        })
        .collect();
    StudyReport {
        kind: "operator-2d".to_string(),
        quantity: "operator_deviation".to_string(),
        param_names: vec!["delta".to_string()],
        config: operator_snapshot(kappa),
        rows: order_rows(pairs),
    }
}

//! Error measures, convergence studies, and operator-level diagnostics.
//!
//! * [`study`] — tabulated convergence studies: L² error against the local
//!   solution as the horizons shrink, mesh refinement against a fine
//!   reference, and the interface jump as a function of `h` or of the
//!   horizons, each with observed orders and CSV/JSON writers.
//! * [`operator`] — pointwise application of the nonlocal operator to smooth
//!   test functions in one and two dimensions, verifying the local limit
//!   `L u -> kappa * Laplacian(u)` at second order in the horizon.
//! * [`residual`] — the nonlocal integration-by-parts identity at the
//!   discrete level and pointwise strong-form residuals of discrete
//!   solutions.
//!
//! The root of the module holds the shared measures: exact elementwise L²
//! norms and the observed convergence order.

pub mod operator;
pub mod residual;
pub mod study;

pub use operator::{
    nonlocal_operator_apply_1d, nonlocal_operator_apply_2d, operator_limit_study_1d,
    operator_limit_study_2d, radial_moment_kappa,
};
pub use residual::{green_identity_parts, strong_residual, GreenIdentityParts};
pub use study::{
    delta_study, h_study, halving_horizons, halving_spacings, jump_study_vs_delta,
    jump_study_vs_h, StudyReport, StudyRow, StudySnapshot,
};

use crate::geometry::Side;
use crate::problem::NonlocalSolution;
use crate::quadrature::gauss3;
use crate::{Error, Result};

/// Observed convergence order of two consecutive errors under parameter
/// halving: `log2(previous / current)`.
pub fn observed_order(previous: f64, current: f64) -> f64 {
    (previous / current).log2()
}

/// Magnitude of the solution jump across the interface, `|u(0^+) - u(0^-)|`.
pub fn jump_magnitude(solution: &NonlocalSolution) -> f64 {
    let (left, right) = solution.interface_values();
    (right - left).abs()
}

/// `L^2` distance over the subdomains (constraint regions excluded) between a
/// discrete solution and a side-resolved reference function.
///
/// Integration uses a 3-point Gauss rule per element, exact as long as the
/// reference is a polynomial of degree at most four on each element — in
/// particular for the piecewise-quadratic local solution.
pub fn l2_error(solution: &NonlocalSolution, reference: impl Fn(f64, Side) -> f64) -> f64 {
    let mesh = solution.mesh();
    let mut acc = 0.0;
    for el in mesh.elements() {
        if el.region.is_constraint() {
            continue;
        }
        let side = el.side();
        for (x, w) in gauss3(el.lo, el.hi) {
            let d = solution.eval_in_element(el.index, x) - reference(x, side);
            acc += w * d * d;
        }
    }
    acc.sqrt()
}

/// `L^2` distance over the subdomains between two discrete solutions of the
/// same problem on different meshes.
///
/// The integral is evaluated on the finer of the two meshes; when the coarse
/// spacing is an integer multiple of the fine one (nested meshes) the result
/// is exact. The solutions must share the same domain layout.
pub fn l2_distance(a: &NonlocalSolution, b: &NonlocalSolution) -> Result<f64> {
    if a.mesh().layout() != b.mesh().layout() {
        return Err(Error::IncompatibleMeshes);
    }
    let (fine, coarse) = if a.mesh().h() <= b.mesh().h() { (a, b) } else { (b, a) };
    let coarse_mesh = coarse.mesh();
    let lo = coarse_mesh.layout().left_extent();
    let big_h = coarse_mesh.h();
    let last = coarse_mesh.element_count() - 1;

    let mut acc = 0.0;
    for el in fine.mesh().elements() {
        if el.region.is_constraint() {
            continue;
        }
        for (x, w) in gauss3(el.lo, el.hi) {
            let kc = (((x - lo) / big_h).floor() as usize).min(last);
            let d = fine.eval_in_element(el.index, x) - coarse.eval_in_element(kc, x);
            acc += w * d * d;
        }
    }
    Ok(acc.sqrt())
}

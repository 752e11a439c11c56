//! The classical (local) two-material interface problem.
//!
//! On each subdomain the local limit of the nonlocal model is plain diffusion,
//! `-kappa_i u'' = f_i`, coupled at the interface by continuity of the value
//! and of the flux `kappa u'`, with homogeneous Dirichlet data at `a` and `b`.
//! With piecewise-constant sources the solution is an explicit piecewise
//! quadratic, computed here in closed form. It doubles as the natural volume
//! constraint for the nonlocal problem (extended into the constraint regions
//! by its quadratic pieces) and as the reference that nonlocal solutions
//! approach when the horizons shrink.
//!
//! A classical P1 finite element solver for the same problem is included; in
//! one dimension it is nodally exact, so its error against the closed form is
//! pure interpolation error and provides a sharp sanity check of the error
//! norms used throughout.

use crate::assembly::{BandedSymmetricMatrix, ConstraintData, QuadraticPoly, SourceTerm};
use crate::geometry::{commensurate, Side};
use crate::kernels::Material;
use crate::quadrature::gauss3;
use crate::solver::{factor, solve};
use crate::{Error, Result};

/// Closed-form solution of the local interface problem: one quadratic per
/// side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalSolution {
    pub left: QuadraticPoly,
    pub right: QuadraticPoly,
    pub x_interface: f64,
}

impl LocalSolution {
    /// Evaluate; exactly at the interface the `side` argument decides which
    /// piece is used (they agree there, up to roundoff).
    pub fn eval(&self, x: f64, side: Side) -> f64 {
        let use_left = match x.partial_cmp(&self.x_interface) {
            Some(std::cmp::Ordering::Less) => true,
            Some(std::cmp::Ordering::Greater) => false,
            _ => side == Side::Left,
        };
        if use_left {
            self.left.eval(x)
        } else {
            self.right.eval(x)
        }
    }

    /// Side-resolved derivative.
    pub fn derivative(&self, x: f64, side: Side) -> f64 {
        let p = if x < self.x_interface || (x == self.x_interface && side == Side::Left) {
            &self.left
        } else {
            &self.right
        };
        p.c1 + 2.0 * p.c2 * x
    }

    /// The two quadratic pieces as volume-constraint data.
    pub fn constraints(&self) -> ConstraintData {
        ConstraintData::new(self.left, self.right)
    }
}

/// Solve the local interface problem in closed form on `(a, b)` with the
/// interface at `x_interface` and zero boundary values.
pub fn local_exact(
    material: &Material,
    source: &SourceTerm,
    a: f64,
    x_interface: f64,
    b: f64,
) -> LocalSolution {
    let (k1, k2) = (material.kappa1, material.kappa2);
    let (f1, f2) = (source.left, source.right);
    let s1 = f1 / (2.0 * k1);
    let s2 = f2 / (2.0 * k2);
    let xg = x_interface;
    // pieces u_i(x) = alpha_i + beta_i x - s_i x^2; value continuity, flux
    // continuity kappa_1 u_1' = kappa_2 u_2', and u_1(a) = u_2(b) = 0
    let d = f1 - f2;
    let beta1 = (-(d * xg / k2) * (xg - b) + s2 * (b * b - xg * xg) - s1 * (a * a - xg * xg))
        / ((xg - a) - (k1 / k2) * (xg - b));
    let beta2 = (k1 * beta1 - d * xg) / k2;
    let alpha1 = -beta1 * a + s1 * a * a;
    let alpha2 = -beta2 * b + s2 * b * b;
    LocalSolution {
        left: QuadraticPoly::new(alpha1, beta1, -s1),
        right: QuadraticPoly::new(alpha2, beta2, -s2),
        x_interface,
    }
}

/// P1 finite element solution of the local interface problem on a uniform
/// interface-fitted mesh over `(a, b)`.
#[derive(Debug, Clone)]
pub struct LocalFemSolution {
    a: f64,
    x_interface: f64,
    b: f64,
    h: f64,
    /// Nodal values including the zero boundary nodes.
    values: Vec<f64>,
}

/// Solve the local interface problem with P1 elements and spacing `h` (which
/// must divide both subdomain widths).
pub fn local_fem_solve(
    material: &Material,
    source: &SourceTerm,
    a: f64,
    x_interface: f64,
    b: f64,
    h: f64,
) -> Result<LocalFemSolution> {
    if !h.is_finite() || h <= 0.0 {
        return Err(Error::InvalidParameter {
            name: "h",
            value: h,
            requirement: "mesh spacing must be positive and finite",
        });
    }
    let n_left = commensurate("(x_interface - a)/h", x_interface - a, h)?;
    let n_right = commensurate("(b - x_interface)/h", b - x_interface, h)?;
    let n_el = n_left + n_right;
    let n_nodes = n_el + 1;

    // assemble the tridiagonal stiffness and the load over interior dofs
    let mut matrix = BandedSymmetricMatrix::new(n_nodes - 2, 1);
    let mut rhs = vec![0.0; n_nodes - 2];
    for e in 0..n_el {
        let side = if e < n_left { Side::Left } else { Side::Right };
        let kappa = material.kappa(side);
        let f = source.value(side);
        // interior dof index of mesh node n is n - 1
        let (nl, nr) = (e as isize - 1, e as isize);
        let k_h = kappa / h;
        if nl >= 0 {
            matrix.add(nl as usize, nl as usize, k_h);
            rhs[nl as usize] += 0.5 * f * h;
        }
        if (nr as usize) < n_nodes - 2 {
            matrix.add(nr as usize, nr as usize, k_h);
            rhs[nr as usize] += 0.5 * f * h;
        }
        if nl >= 0 && (nr as usize) < n_nodes - 2 {
            matrix.add(nl as usize, nr as usize, -k_h);
        }
    }
    let chol = factor(&matrix)?;
    let interior = solve(&chol, &rhs)?;

    let mut values = vec![0.0; n_nodes];
    values[1..n_nodes - 1].copy_from_slice(&interior);
    Ok(LocalFemSolution {
        a,
        x_interface,
        b,
        h,
        values,
    })
}

impl LocalFemSolution {
    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn nodal_values(&self) -> &[f64] {
        &self.values
    }

    /// Coordinate of node `i`.
    pub fn node(&self, i: usize) -> f64 {
        if i == self.values.len() - 1 {
            self.b
        } else {
            self.a + i as f64 * self.h
        }
    }

    /// Piecewise-linear evaluation inside `[a, b]`.
    pub fn eval(&self, x: f64) -> Result<f64> {
        if !(x >= self.a && x <= self.b) {
            return Err(Error::OutOfDomain {
                x,
                lo: self.a,
                hi: self.b,
            });
        }
        let last_element = self.values.len() - 2;
        let k = (((x - self.a) / self.h).floor() as usize).min(last_element);
        let t = (x - (self.a + k as f64 * self.h)) / self.h;
        Ok(self.values[k] * (1.0 - t) + self.values[k + 1] * t)
    }

    /// Exact `L^2(a, b)` distance to the closed-form solution (3-point Gauss
    /// per element integrates the squared linear-minus-quadratic deviation
    /// exactly).
    pub fn l2_error(&self, exact: &LocalSolution) -> f64 {
        let n_el = self.values.len() - 1;
        let mut acc = 0.0;
        for k in 0..n_el {
            let lo = self.node(k);
            let hi = self.node(k + 1);
            let side = if hi <= self.x_interface + 0.5 * self.h {
                Side::Left
            } else {
                Side::Right
            };
            for (x, w) in gauss3(lo, hi) {
                let uh = self.values[k] * (hi - x) / self.h + self.values[k + 1] * (x - lo) / self.h;
                let d = uh - exact.eval(x, side);
                acc += w * d * d;
            }
        }
        acc.sqrt()
    }

    /// Maximum nodal deviation from the closed-form solution.
    pub fn max_nodal_error(&self, exact: &LocalSolution) -> f64 {
        (0..self.values.len())
            .map(|i| {
                let x = self.node(i);
                let side = if x <= self.x_interface { Side::Left } else { Side::Right };
                (self.values[i] - exact.eval(x, side)).abs()
            })
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn benchmark_material() -> Material {
        Material::new(1.0, 3.0).unwrap()
    }

    #[test]
    fn benchmark_solution_in_closed_form() {
        let u = local_exact(&benchmark_material(), &SourceTerm::constant(1.0), -0.5, 0.0, 0.5);
        // left piece 1/16 - x/8 - x^2/2, right piece 1/16 - x/24 - x^2/6
        assert_abs_diff_eq!(u.left.c0, 1.0 / 16.0, epsilon = 1e-15);
        assert_abs_diff_eq!(u.left.c1, -0.125, epsilon = 1e-15);
        assert_abs_diff_eq!(u.left.c2, -0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(u.right.c0, 1.0 / 16.0, epsilon = 1e-15);
        assert_abs_diff_eq!(u.right.c1, -1.0 / 24.0, epsilon = 1e-15);
        assert_abs_diff_eq!(u.right.c2, -1.0 / 6.0, epsilon = 1e-15);
        assert_abs_diff_eq!(u.eval(0.0, Side::Left), 1.0 / 16.0, epsilon = 1e-15);
    }

    #[test]
    fn interface_conditions_hold_for_general_data() {
        for (material, source) in [
            (Material::new(1.0, 10.0).unwrap(), SourceTerm::constant(1.0)),
            (Material::new(1.0, 100.0).unwrap(), SourceTerm::constant(1.0)),
            (Material::new(2.0, 5.0).unwrap(), SourceTerm::new(1.0, -3.0)),
            (Material::new(0.3, 0.7).unwrap(), SourceTerm::new(-2.0, 4.5)),
        ] {
            let u = local_exact(&material, &source, -0.5, 0.0, 0.5);
            // boundary values
            assert_abs_diff_eq!(u.eval(-0.5, Side::Left), 0.0, epsilon = 1e-14);
            assert_abs_diff_eq!(u.eval(0.5, Side::Right), 0.0, epsilon = 1e-14);
            // continuity of value and flux at the interface
            assert_abs_diff_eq!(
                u.eval(0.0, Side::Left),
                u.eval(0.0, Side::Right),
                epsilon = 1e-14
            );
            assert_abs_diff_eq!(
                material.kappa1 * u.derivative(0.0, Side::Left),
                material.kappa2 * u.derivative(0.0, Side::Right),
                epsilon = 1e-12
            );
            // each piece solves its diffusion equation
            assert_relative_eq!(
                -material.kappa1 * u.left.second_derivative(),
                source.left,
                max_relative = 1e-13
            );
            assert_relative_eq!(
                -material.kappa2 * u.right.second_derivative(),
                source.right,
                max_relative = 1e-13
            );
        }
    }

    #[test]
    fn off_center_interface_is_supported() {
        let u = local_exact(
            &Material::new(1.5, 0.25).unwrap(),
            &SourceTerm::new(2.0, 1.0),
            -1.0,
            0.25,
            2.0,
        );
        assert_abs_diff_eq!(u.eval(-1.0, Side::Left), 0.0, epsilon = 1e-13);
        assert_abs_diff_eq!(u.eval(2.0, Side::Right), 0.0, epsilon = 1e-13);
        assert_abs_diff_eq!(
            u.eval(0.25, Side::Left),
            u.eval(0.25, Side::Right),
            epsilon = 1e-13
        );
        assert_abs_diff_eq!(
            1.5 * u.derivative(0.25, Side::Left),
            0.25 * u.derivative(0.25, Side::Right),
            epsilon = 1e-12
        );
    }

    #[test]
    fn fem_is_nodally_exact() {
        let material = benchmark_material();
        let source = SourceTerm::constant(1.0);
        let exact = local_exact(&material, &source, -0.5, 0.0, 0.5);
        let fem = local_fem_solve(&material, &source, -0.5, 0.0, 0.5, 2f64.powi(-5)).unwrap();
        assert!(fem.max_nodal_error(&exact) < 1e-13);
        // also for a contrast configuration
        let material = Material::new(1.0, 10.0).unwrap();
        let exact = local_exact(&material, &source, -0.5, 0.0, 0.5);
        let fem = local_fem_solve(&material, &source, -0.5, 0.0, 0.5, 2f64.powi(-6)).unwrap();
        assert!(fem.max_nodal_error(&exact) < 1e-13);
    }

    #[test]
    fn fem_l2_error_matches_interpolation_theory() {
        // nodally exact + piecewise quadratic target: the L2 error is exactly
        // h^2 / sqrt(216) for the benchmark data
        let material = benchmark_material();
        let source = SourceTerm::constant(1.0);
        let exact = local_exact(&material, &source, -0.5, 0.0, 0.5);
        for h in [2f64.powi(-5), 2f64.powi(-6)] {
            let fem = local_fem_solve(&material, &source, -0.5, 0.0, 0.5, h).unwrap();
            assert_relative_eq!(
                fem.l2_error(&exact),
                h * h / 216f64.sqrt(),
                max_relative = 1e-9
            );
        }
    }

    #[test]
    fn eval_interpolates_between_nodes() {
        let material = benchmark_material();
        let source = SourceTerm::constant(1.0);
        let fem = local_fem_solve(&material, &source, -0.5, 0.0, 0.5, 0.25).unwrap();
        let mid = fem.eval(-0.125).unwrap();
        assert_abs_diff_eq!(
            mid,
            0.5 * (fem.nodal_values()[1] + fem.nodal_values()[2]),
            epsilon = 1e-15
        );
        assert!(fem.eval(0.75).is_err());
    }

    #[test]
    fn fem_rejects_non_commensurate_spacing() {
        let material = benchmark_material();
        let source = SourceTerm::constant(1.0);
        assert!(matches!(
            local_fem_solve(&material, &source, -0.5, 0.0, 0.5, 0.3),
            Err(Error::NonCommensurate { .. })
        ));
    }
}
